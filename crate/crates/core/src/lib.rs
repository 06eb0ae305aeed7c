//! Exhaustive verification of finite proximity spaces and the rings, fields,
//! groups, and modules built on them.
//!
//! Subsets of a ground set of at most 16 elements are bit masks; every check
//! enumerates its search space in a fixed order and reports the first
//! counterexample it meets, so results are reproducible regardless of thread
//! count.

pub mod algebra;
pub mod cli;
pub mod descriptive;
pub mod document;
pub mod error;
pub mod ground;
pub mod proximal;
pub mod proximity;

pub use error::{Error, Result};
pub use ground::{GroundSet, Mask, Subset};
