//! Linking numbers and a₂ over the constituent links and knots of
//! piecewise-linear spatial embeddings of complete graphs, in exact arithmetic.

pub mod aggregate;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod invariants;
pub mod report;
pub mod selftest;

pub use error::{Error, Result};
