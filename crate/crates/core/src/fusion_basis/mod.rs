//! Trivalent graphs, admissible colorings and the small-coloring basis.

mod coloring;
mod graph;
mod transfer;

pub use coloring::{
    admissible_triple, count_colorings, enumerate_colorings, enumerate_colorings_capped,
    is_admissible, small_bound, BasisIndex, Coloring, Parity, DEFAULT_ENUMERATION_CAP,
};
pub use graph::{
    build_alternative_graph, build_lollipop_tree, build_theta_graph, Edge, LollipopLayout,
    TrivalentGraph,
};
pub use transfer::{transfer_count_lollipop, transfer_count_theta};

/// Largest genus and prime accepted by exhaustive enumeration suites.
pub const MAX_EXHAUSTIVE_GENUS: usize = 8;
pub const MAX_EXHAUSTIVE_PRIME: u32 = 13;
