//! Exact spanning-tree counting for double nested (bipartite chain) graphs.
//!
//! * [`chain_model`]: specs `G(m_1..m_h; n_1..n_h)`, degree profiles, expansion.
//! * [`recognizer`]: edge list to canonical spec, or a rejection reason.
//! * [`tree_counter`]: the linear-time counter (cell factors, tridiagonal
//!   block, LU pivots).
//! * [`kirchhoff_oracle`]: Matrix-Tree-Theorem cofactors by Bareiss
//!   elimination, for cross-checking.

pub mod chain_model;
pub mod complexity;
pub mod graph;
pub mod kirchhoff_oracle;
pub mod recognizer;
#[cfg(any(test, feature = "verification"))]
pub mod reduction_trace;
pub mod sweep;
pub mod tree_counter;

pub use chain_model::{
    degree_profile, expand, expand_with_cap, swap_colors, validate_spec, BipartiteGraph, ChainSpec,
    DegreeProfile, ExpandError, Side, SpecError, DEFAULT_EDGE_CAP,
};
pub use graph::{parse_edge_list, Graph, GraphError, LabeledGraph, ParseError};
pub use kirchhoff_oracle::{cofactor, count_oracle, kirchhoff_matrix, OracleError, SquareIntMatrix};
pub use recognizer::{bipartition, recognize_chain, recognize_with_mapping, Bipartition, RecognizeError};
pub use tree_counter::{
    build_tridiagonal, cell_factors, count_spanning_trees, count_with_details, lu_pivots,
    tau_complete_bipartite, Count, CountError, FactorList, PivotSequence, Tridiagonal,
};
