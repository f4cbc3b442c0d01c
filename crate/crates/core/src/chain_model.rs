//! Double nested graph specifications.
//!
//! A double nested (bipartite chain) graph `G(m_1, ..., m_h; n_1, ..., n_h)` has
//! color classes split into cells `U_1..U_h` and `V_1..V_h` with `|U_i| = m_i`,
//! `|V_j| = n_j`, and every vertex of `U_i` adjacent to exactly
//! `V_1 ∪ ... ∪ V_{h+1-i}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Default cap on the number of edges `expand` will materialize.
pub const DEFAULT_EDGE_CAP: usize = 10_000_000;

/// Which color class a cell belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    U,
    V,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::U => f.write_str("m"),
            Side::V => f.write_str("n"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("EmptySpec: a double nested graph needs at least one cell per side")]
    EmptySpec,
    #[error("NonPositiveCell: {side}[{index}] = {value}, cells must be non-empty")]
    NonPositiveCell { side: Side, index: usize, value: i64 },
    #[error("LengthMismatch: |m| = {m_len} but |n| = {n_len}")]
    LengthMismatch { m_len: usize, n_len: usize },
    #[error("malformed spec: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("ResourceLimit: expansion needs {required} edges, cap is {cap}")]
    ResourceLimit { required: u128, cap: usize },
}

/// Parameter vector `(m_1..m_h; n_1..n_h)` naming a double nested graph.
///
/// Construction goes through [`validate_spec`], so every cell is non-empty and
/// both sides have the same number of cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct ChainSpec {
    m: Vec<usize>,
    n: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSpec {
    m: Vec<i64>,
    n: Vec<i64>,
}

impl TryFrom<RawSpec> for ChainSpec {
    type Error = SpecError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        validate_spec(&raw.m, &raw.n)
    }
}

impl From<ChainSpec> for RawSpec {
    fn from(spec: ChainSpec) -> Self {
        RawSpec {
            m: spec.m.iter().map(|&x| x as i64).collect(),
            n: spec.n.iter().map(|&x| x as i64).collect(),
        }
    }
}

/// Checks a raw pair of cell-size sequences and builds a [`ChainSpec`].
pub fn validate_spec(m: &[i64], n: &[i64]) -> Result<ChainSpec, SpecError> {
    if m.len() != n.len() {
        return Err(SpecError::LengthMismatch { m_len: m.len(), n_len: n.len() });
    }
    if m.is_empty() {
        return Err(SpecError::EmptySpec);
    }
    for (side, cells) in [(Side::U, m), (Side::V, n)] {
        if let Some((index, &value)) = cells.iter().enumerate().find(|(_, &x)| x <= 0) {
            return Err(SpecError::NonPositiveCell { side, index, value });
        }
    }
    Ok(ChainSpec {
        m: m.iter().map(|&x| x as usize).collect(),
        n: n.iter().map(|&x| x as usize).collect(),
    })
}

impl ChainSpec {
    /// Builds a spec from unsigned cell sizes.
    pub fn new(m: Vec<usize>, n: Vec<usize>) -> Result<Self, SpecError> {
        if m.len() != n.len() {
            return Err(SpecError::LengthMismatch { m_len: m.len(), n_len: n.len() });
        }
        if m.is_empty() {
            return Err(SpecError::EmptySpec);
        }
        for (side, cells) in [(Side::U, &m), (Side::V, &n)] {
            if let Some(index) = cells.iter().position(|&x| x == 0) {
                return Err(SpecError::NonPositiveCell { side, index, value: 0 });
            }
        }
        Ok(ChainSpec { m, n })
    }

    /// Number of cells per side.
    pub fn h(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn n(&self) -> &[usize] {
        &self.n
    }

    pub fn u_count(&self) -> usize {
        self.m.iter().sum()
    }

    pub fn v_count(&self) -> usize {
        self.n.iter().sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.u_count() + self.v_count()
    }

    /// `Σ_i m_i · (n_1 + ... + n_{h+1-i})`, computed without overflow.
    pub fn edge_count(&self) -> u128 {
        let h = self.h();
        let mut reach = 0u128;
        let mut prefix = Vec::with_capacity(h);
        for &nj in &self.n {
            reach += nj as u128;
            prefix.push(reach);
        }
        self.m
            .iter()
            .enumerate()
            .map(|(i, &mi)| mi as u128 * prefix[h - 1 - i])
            .sum()
    }

    /// Orientation used by the recognizer: the larger first-cell degree on the
    /// U side, ties broken toward the lexicographically smaller `m`.
    pub fn canonical_orientation(&self) -> ChainSpec {
        let swapped = swap_colors(self);
        let own = (self.v_count(), std::cmp::Reverse(&self.m));
        let other = (swapped.v_count(), std::cmp::Reverse(&swapped.m));
        if other > own {
            swapped
        } else {
            self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| {
            // serde wraps our own validation errors as custom messages.
            SpecError::Malformed(e.to_string())
        })
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.m), join(&self.n))
    }
}

/// Parses the inline form `m=1,1;n=2,2` (whitespace tolerated).
impl FromStr for ChainSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut m = None;
        let mut n = None;
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, values) = part
                .split_once('=')
                .ok_or_else(|| SpecError::Malformed(format!("expected key=values, got {part:?}")))?;
            let values = values
                .split(',')
                .map(|v| v.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| SpecError::Malformed(format!("{part:?}: {e}")))?;
            match key.trim() {
                "m" => m = Some(values),
                "n" => n = Some(values),
                other => return Err(SpecError::Malformed(format!("unknown key {other:?}"))),
            }
        }
        match (m, n) {
            (Some(m), Some(n)) => validate_spec(&m, &n),
            _ => Err(SpecError::Malformed("inline spec needs both m=... and n=...".into())),
        }
    }
}

/// Exchanges the two color classes: `(m; n)` becomes `(n; m)`.
pub fn swap_colors(spec: &ChainSpec) -> ChainSpec {
    ChainSpec { m: spec.n.clone(), n: spec.m.clone() }
}

/// Common cell degrees and prefix sums of a spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    /// `dm[i]` is the degree of every vertex in `U_{i+1}`.
    pub dm: Vec<usize>,
    /// `dn[j]` is the degree of every vertex in `V_{j+1}`.
    pub dn: Vec<usize>,
    pub m_prefix: Vec<usize>,
    pub n_prefix: Vec<usize>,
    /// Size of the last V cell once the cofactor vertex is removed; `None`
    /// when `n_h = 1` and the whole cell disappears.
    pub nstar: Option<usize>,
}

pub fn degree_profile(spec: &ChainSpec) -> DegreeProfile {
    let prefix = |xs: &[usize]| {
        xs.iter()
            .scan(0usize, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect::<Vec<_>>()
    };
    let h = spec.h();
    let m_prefix = prefix(&spec.m);
    let n_prefix = prefix(&spec.n);
    let dm = (0..h).map(|i| n_prefix[h - 1 - i]).collect();
    let dn = (0..h).map(|j| m_prefix[h - 1 - j]).collect();
    let last = spec.n[h - 1];
    DegreeProfile { dm, dn, m_prefix, n_prefix, nstar: (last > 1).then(|| last - 1) }
}

/// Explicit two-colored graph. U vertices are `0..u_count`, V vertices are
/// `0..v_count` within their own class; edges are stored as `(u, v)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub u_count: usize,
    pub v_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn vertex_count(&self) -> usize {
        self.u_count + self.v_count
    }

    /// Edges in global numbering (U first, then V), in stored order.
    pub fn global_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(move |&(u, v)| (u, self.u_count + v))
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.vertex_count(), self.global_edges())
            .expect("bipartite edges are simple and in range")
    }

    /// Same graph with the color classes exchanged.
    pub fn swapped(&self) -> BipartiteGraph {
        BipartiteGraph {
            u_count: self.v_count,
            v_count: self.u_count,
            edges: self.edges.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }

    /// Writes the edge-list file format, one global `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edges.len() * 8);
        for (u, v) in self.global_edges() {
            out.push_str(&u.to_string());
            out.push(' ');
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

pub fn expand(spec: &ChainSpec) -> Result<BipartiteGraph, ExpandError> {
    expand_with_cap(spec, DEFAULT_EDGE_CAP)
}

/// Materializes the graph in canonical order: cells `U_1..U_h`, then `V_1..V_h`.
pub fn expand_with_cap(spec: &ChainSpec, cap: usize) -> Result<BipartiteGraph, ExpandError> {
    let required = spec.edge_count();
    if required > cap as u128 {
        return Err(ExpandError::ResourceLimit { required, cap });
    }
    let prof = degree_profile(spec);
    let mut edges = Vec::with_capacity(required as usize);
    let mut u = 0;
    for (i, &mi) in spec.m.iter().enumerate() {
        for _ in 0..mi {
            edges.extend((0..prof.dm[i]).map(|v| (u, v)));
            u += 1;
        }
    }
    Ok(BipartiteGraph { u_count: spec.u_count(), v_count: spec.v_count(), edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: &[usize], n: &[usize]) -> ChainSpec {
        ChainSpec::new(m.to_vec(), n.to_vec()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let s = validate_spec(&[1, 1], &[2, 2]).unwrap();
        assert_eq!(s.h(), 2);
        assert_eq!(validate_spec(&[1], &[1]).unwrap().h(), 1);
        assert_eq!(
            validate_spec(&[1, 0], &[2, 2]),
            Err(SpecError::NonPositiveCell { side: Side::U, index: 1, value: 0 })
        );
        assert_eq!(
            validate_spec(&[1], &[2, -3]),
            Err(SpecError::LengthMismatch { m_len: 1, n_len: 2 })
        );
        assert_eq!(validate_spec(&[], &[]), Err(SpecError::EmptySpec));
        assert!(matches!(
            validate_spec(&[2], &[-1]),
            Err(SpecError::NonPositiveCell { side: Side::V, index: 0, value: -1 })
        ));
    }

    #[test]
    fn degree_profile_examples() {
        let p = degree_profile(&spec(&[1, 1], &[2, 2]));
        assert_eq!((p.dm, p.dn, p.nstar), (vec![4, 2], vec![2, 1], Some(1)));
        let p = degree_profile(&spec(&[1, 1, 1], &[2, 1, 2]));
        assert_eq!((p.dm, p.dn, p.nstar), (vec![5, 3, 2], vec![3, 2, 1], Some(1)));
        let p = degree_profile(&spec(&[1, 2], &[2, 2]));
        assert_eq!((p.dm.clone(), p.dn.clone(), p.nstar), (vec![4, 2], vec![3, 1], Some(1)));
        assert_eq!(p.m_prefix, vec![1, 3]);
        assert_eq!(p.n_prefix, vec![2, 4]);
        assert_eq!(degree_profile(&spec(&[1, 1], &[2, 1])).nstar, None);
    }

    #[test]
    fn expand_examples() {
        let g = expand(&spec(&[1], &[1])).unwrap();
        assert_eq!(g.edges, vec![(0, 0)]);

        let g = expand(&spec(&[1, 1], &[2, 2])).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edges, vec![(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1)]);

        let g = expand(&spec(&[2], &[3])).unwrap();
        assert_eq!(g.edges.len(), 6);
    }

    #[test]
    fn expand_respects_cap() {
        let s = spec(&[100], &[100]);
        assert_eq!(
            expand_with_cap(&s, 9_999),
            Err(ExpandError::ResourceLimit { required: 10_000, cap: 9_999 })
        );
        assert_eq!(expand_with_cap(&s, 10_000).unwrap().edges.len(), 10_000);
    }

    #[test]
    fn swap_examples() {
        assert_eq!(swap_colors(&spec(&[1, 1], &[2, 2])), spec(&[2, 2], &[1, 1]));
        assert_eq!(swap_colors(&spec(&[1], &[1])), spec(&[1], &[1]));
    }

    #[test]
    fn canonical_orientation_rule() {
        assert_eq!(spec(&[3], &[2]).canonical_orientation(), spec(&[2], &[3]));
        assert_eq!(spec(&[2, 2], &[1, 1]).canonical_orientation(), spec(&[1, 1], &[2, 2]));
        assert_eq!(spec(&[2, 1], &[1, 2]).canonical_orientation(), spec(&[1, 2], &[2, 1]));
        assert_eq!(spec(&[1, 2], &[2, 1]).canonical_orientation(), spec(&[1, 2], &[2, 1]));
    }

    #[test]
    fn json_and_inline_forms() {
        let s = ChainSpec::from_json(r#"{"m":[1,1],"n":[2,2]}"#).unwrap();
        assert_eq!(s, spec(&[1, 1], &[2, 2]));
        assert_eq!(s.to_json(), r#"{"m":[1,1],"n":[2,2]}"#);
        assert!(matches!(
            ChainSpec::from_json(r#"{"m":[1,0],"n":[2,2]}"#),
            Err(SpecError::Malformed(msg)) if msg.contains("NonPositiveCell")
        ));
        assert_eq!("m=1,1;n=2,2".parse::<ChainSpec>().unwrap(), s);
        assert_eq!(" m = 1, 1 ; n = 2 ,2 ".parse::<ChainSpec>().unwrap(), s);
        assert!("m=1,1".parse::<ChainSpec>().is_err());
        assert!("m=1,x;n=1,1".parse::<ChainSpec>().is_err());
    }

    #[test]
    fn edge_list_text() {
        let g = expand(&spec(&[1, 1], &[2, 2])).unwrap();
        assert_eq!(g.to_edge_list(), "0 2\n0 3\n0 4\n0 5\n1 2\n1 3\n");
    }
}
