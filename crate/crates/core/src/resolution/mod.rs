//! Toric resolution of the family: the fixed subdivision of the positive
//! orthant, chart pullbacks, divisor bookkeeping and decorated dual graphs.

pub mod catalog;
pub mod fan;
pub mod graph;

pub use catalog::{builtin_catalog, derive_a1_entry, Catalog, CatalogEntry};
pub use fan::{chart_pullback, sigma_star, ChartPullback, Fan};
pub use graph::{
    build_dual_graph, divisor_ledger, graphs_isomorphic, self_intersections_and_laufer, DivisorNode, DualGraph,
    LauferReport, NodeKind,
};
