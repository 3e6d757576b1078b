//! Optimal L(p,1)-labelings of trees.
//!
//! Three interchangeable deciders share one δ-table formulation: a quartic per-pair
//! matching DP, a per-row matching DP, and a flow DP over compressed label domains with
//! constant-size rules for heavy-path vertices. Brute-force oracles live alongside for
//! testing.

pub mod bench;
pub mod delta;
pub mod enumerate;
pub mod error;
pub mod flow;
pub mod gen;
pub mod labeling;
pub mod matching;
pub mod oracle;
pub mod preprocess;
pub mod solver;
pub mod tree;

pub use error::{Error, Result};
pub use labeling::{validate_labeling, Labeling};
pub use solver::{decide_lambda, solve_l21, solve_lp1, Algorithm, SolveConfig, SolveResult};
pub use tree::{parse_tree, RootedTree, Tree};
