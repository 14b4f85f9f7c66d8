//! Exact combinatorics of type-A degenerate flag varieties: torus fixed
//! points, attracting cells, moment graphs, smooth loci and the counting
//! polynomials tying them to Genocchi and Schroeder numbers.
//!
//! Everything is integer-exact; enumerations run data-parallel by default
//! (`parallel` feature) with a sequential fallback.

pub mod cells;
pub mod collections;
pub mod desing;
pub mod error;
pub mod fixtures;
pub mod moment_graph;
mod par;
pub mod poly;
pub mod quiver;
pub mod schroeder;
pub mod subset;

pub use error::{Error, Result};
