#![allow(dead_code)]

use chaintree::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random connected simple graph: a random labelled tree plus `extra` random
/// chords (duplicates collapse).
pub fn random_connected_graph<R: Rng>(rng: &mut R, order: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..order {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        let a = rng.gen_range(0..order);
        let b = rng.gen_range(0..order);
        if a != b {
            edges.push((a, b));
        }
    }
    let mut perm: Vec<usize> = (0..order).collect();
    perm.shuffle(rng);
    Graph::from_edges(order, edges.into_iter().map(|(a, b)| (perm[a], perm[b]))).unwrap()
}

/// Relabels the vertices of `g` by `perm`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.order(), g.edges().map(|(a, b)| (perm[a], perm[b]))).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, order: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..order).collect();
    perm.shuffle(rng);
    perm
}

pub fn cycle(k: usize) -> Graph {
    Graph::from_edges(k, (0..k).map(|v| (v, (v + 1) % k))).unwrap()
}
