//! Finite combinatorics of scaled and marked simplicial sets.

pub mod anodyne;
pub mod coherent;
pub mod decorations;
pub mod error;
pub mod homology;
pub mod segal;
pub mod sset;
pub mod subdivision;
pub mod unionfind;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::Verdict;
