//! Genus computations for fiber products of branched coverings of compact
//! Riemann surfaces, driven entirely by permutation monodromy data.
//!
//! The crate decomposes fiber products of two coverings into components with
//! projection degrees and genera, computes normalizations (Galois closures)
//! by two independent routes, classifies maps as tame or wild, and evaluates
//! a family of exact genus inequalities on the results. All arithmetic is
//! exact: integers for Euler characteristics, big rationals for orbifold
//! characteristics and bound sides.

pub mod bounds;
pub mod covering;
pub mod error;
pub mod fiber;
pub mod fixtures;
pub mod group;
pub mod normalization;
pub mod perm;
pub mod random;

pub use covering::{BranchPoint, HandlePair, HurwitzSystem, Orbifold};
pub use error::{Error, Result};
pub use perm::{CycleType, Permutation};
