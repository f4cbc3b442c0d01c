//! Recognition of double nested graphs from an arbitrary edge list.
//!
//! A connected bipartite graph is double nested iff the neighborhoods of one
//! color class are totally ordered by inclusion. Grouping vertices by sorted
//! adjacency fingerprints gives an `O(|E| log |V|)` check.

use std::collections::VecDeque;

use thiserror::Error;

use crate::chain_model::{ChainSpec, Side};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("Empty: graph has no vertices")]
    Empty,
    #[error("OddCycle: edge {0}-{1} closes an odd cycle, graph is not bipartite")]
    OddCycle(usize, usize),
    #[error("Disconnected: graph has {components} components or isolated vertices")]
    Disconnected { components: usize },
    #[error("NotNested: neighborhoods of the {side:?} class are not totally ordered by inclusion")]
    NotNested { side: Side },
    #[error("CellMismatch: {u_cells} U cells but {v_cells} V cells")]
    CellMismatch { u_cells: usize, v_cells: usize },
}

impl RecognizeError {
    /// Short machine-readable reason.
    pub fn reason(&self) -> &'static str {
        match self {
            RecognizeError::Empty => "Empty",
            RecognizeError::OddCycle(..) => "OddCycle",
            RecognizeError::Disconnected { .. } => "Disconnected",
            RecognizeError::NotNested { .. } => "NotNested",
            RecognizeError::CellMismatch { .. } => "CellMismatch",
        }
    }
}

/// Two-coloring of a connected bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<Side>,
}

impl Bipartition {
    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn class(&self, which: Side) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v] == which).collect()
    }

    /// Every edge of `g` joins the two classes.
    pub fn is_consistent(&self, g: &Graph) -> bool {
        g.order() == self.side.len() && g.edges().all(|(a, b)| self.side[a] != self.side[b])
    }
}

/// BFS two-coloring. Vertex 0 (and the first vertex of every later component)
/// goes to `U`. Odd cycles are reported before disconnectedness.
pub fn bipartition(g: &Graph) -> Result<Bipartition, RecognizeError> {
    if g.order() == 0 {
        return Err(RecognizeError::Empty);
    }
    let mut color: Vec<Option<Side>> = vec![None; g.order()];
    let mut queue = VecDeque::new();
    let mut components = 0;
    let mut isolated = false;
    for start in 0..g.order() {
        if color[start].is_some() {
            continue;
        }
        components += 1;
        isolated |= g.degree(start) == 0;
        color[start] = Some(Side::U);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            let other = if cv == Side::U { Side::V } else { Side::U };
            for &w in g.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(other);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => return Err(RecognizeError::OddCycle(v.min(w), v.max(w))),
                    Some(_) => {}
                }
            }
        }
    }
    if components > 1 || isolated {
        return Err(RecognizeError::Disconnected { components });
    }
    Ok(Bipartition { side: color.into_iter().map(Option::unwrap).collect() })
}

/// Accepted recognition: the canonical spec plus, for every input vertex, its
/// position in `expand(spec)` (U cells first, then V cells).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub spec: ChainSpec,
    pub mapping: Vec<usize>,
}

pub fn recognize_chain(g: &Graph) -> Result<ChainSpec, RecognizeError> {
    recognize_with_mapping(g).map(|r| r.spec)
}

pub fn recognize_with_mapping(g: &Graph) -> Result<Recognition, RecognizeError> {
    let parts = bipartition(g)?;
    let us = parts.class(Side::U);
    let vs = parts.class(Side::V);

    let u_groups = group_by_neighborhood(g, us);
    let h = u_groups.len();
    for pair in u_groups.windows(2) {
        let (outer, inner) = (g.neighbors(pair[0][0]), g.neighbors(pair[1][0]));
        if inner.len() >= outer.len() || !inner.iter().all(|x| outer.binary_search(x).is_ok()) {
            return Err(RecognizeError::NotNested { side: Side::U });
        }
    }
    let v_cells = group_by_neighborhood(g, vs.clone()).len();
    if v_cells != h {
        return Err(RecognizeError::CellMismatch { u_cells: h, v_cells });
    }

    // V_j = N(U_{h+1-j}) \ N(U_{h+2-j}); the innermost neighborhood is V_1.
    let mut v_order: Vec<usize> = Vec::with_capacity(vs.len());
    let mut n = Vec::with_capacity(h);
    let mut inner: &[usize] = &[];
    for group in u_groups.iter().rev() {
        let outer = g.neighbors(group[0]);
        let before = v_order.len();
        v_order.extend(outer.iter().copied().filter(|x| inner.binary_search(x).is_err()));
        n.push(v_order.len() - before);
        inner = outer;
    }
    debug_assert_eq!(v_order.len(), vs.len());
    let m: Vec<usize> = u_groups.iter().map(Vec::len).collect();
    let u_order: Vec<usize> = u_groups.into_iter().flatten().collect();

    let spec = ChainSpec::new(m, n).expect("recognized cells are non-empty");
    let canonical = spec.canonical_orientation();
    let (first, second) = if canonical == spec { (u_order, v_order) } else { (v_order, u_order) };
    let mut mapping = vec![usize::MAX; g.order()];
    for (pos, &v) in first.iter().chain(second.iter()).enumerate() {
        mapping[v] = pos;
    }
    Ok(Recognition { spec: canonical, mapping })
}

/// Groups vertices with identical neighborhoods, ordered by degree descending
/// and then by neighborhood.
fn group_by_neighborhood(g: &Graph, mut vertices: Vec<usize>) -> Vec<Vec<usize>> {
    vertices.sort_by(|&a, &b| {
        g.degree(b)
            .cmp(&g.degree(a))
            .then_with(|| g.neighbors(a).cmp(g.neighbors(b)))
            .then(a.cmp(&b))
    });
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for v in vertices {
        match groups.last_mut() {
            Some(last) if g.neighbors(last[0]) == g.neighbors(v) => last.push(v),
            _ => groups.push(vec![v]),
        }
    }
    groups
}
