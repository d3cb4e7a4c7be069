//! Graph representations for exact branch-and-reduce search.
//!
//! [`hybrid`] holds the core structure: adjacency-list rows located in
//! O(1) through an index table, with per-search-node degree vectors so
//! that backtracking is a frame restore instead of an undo log.
//! [`addition`] and [`contraction`] extend it with permanent edge addition
//! and color-class edge contraction. [`baseline`] is the classical
//! adjacency-list structure with an explicit undo log, and [`solvers`]
//! runs the same exact algorithms on either one.

pub mod addition;
pub mod baseline;
pub mod contraction;
pub mod counters;
pub mod error;
pub mod hybrid;
pub mod io;
pub mod oracle;
pub mod repr;
pub mod solvers;

pub use baseline::BaselineGraph;
pub use contraction::ContractionGraph;
pub use counters::{Counters, OpClass, OpCount};
pub use error::GraphError;
pub use hybrid::{HybridGraph, SearchFrame};
pub use io::InstanceSpec;
pub use repr::{AddEdges, FromEdges, Hybrid, SearchGraph};
