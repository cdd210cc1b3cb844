//! Maximum linear forests of trees, Hamiltonian completion, and decycling
//! numbers of line graphs, with brute-force oracles and bound checks.

pub mod bounds;
pub mod extremal;
pub mod forest;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod tree;
pub mod verify;

/// Integer scalar used by the concrete bound evaluations.
pub type Int = i64;
/// Exact rational used for k-ary bounds and bound reports.
pub type Rational = num_rational::Ratio<Int>;

pub use bounds::Scalar;
pub use forest::{hc_construct, hc_of_tree, l_of_tree, max_linear_forest, LinearForest};
pub use graph::{line_graph, parse_graph, Edge, Graph};
pub use oracle::Oracle;
pub use tree::{diameter, tree_stats, RootedTree};
pub use verify::{verify_theorems, BoundReport, VerifyConfig};
