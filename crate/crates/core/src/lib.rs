//! Exact computations with finite quandles, the quandles of curves on the
//! torus, quandle cohomology, abelian extensions and quandle rings.

pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod fixtures;
pub mod group;
pub mod linalg;
pub mod metrics;
pub mod perm;
pub mod quandle;
pub mod ring;
pub mod suite;
pub mod torus;

#[cfg(test)]
mod props;

pub use error::{Error, Result};
