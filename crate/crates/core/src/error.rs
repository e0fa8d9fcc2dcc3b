//! Crate-wide error type.

use num::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {reason}")]
    InvalidPermutation { reason: String },

    #[error("invalid cycle notation: {reason}")]
    InvalidCycles { reason: String },

    #[error("product relation violated: the relation word moves point {moved_point}")]
    RelationViolated { moved_point: usize },

    #[error("monodromy not transitive: point {point} lies in an orbit of size {orbit_size} < degree {degree}")]
    NotTransitive {
        point: usize,
        orbit_size: usize,
        degree: usize,
    },

    #[error("duplicate branch label {label:?}")]
    DuplicateLabel { label: String },

    #[error("handle count {got} does not match base genus {expected}")]
    HandleCountMismatch { expected: usize, got: usize },

    #[error("base genus mismatch: {left} vs {right}")]
    BaseMismatch { left: usize, right: usize },

    #[error("shared branch labels appear in incompatible orders near {label:?}")]
    LabelConflict { label: String },

    #[error("pair is not aligned: {reason}")]
    NotAligned { reason: String },

    #[error("tuple length {k} out of range 2..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("budget exceeded: needed {needed} points, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("group order {order} exceeds cap {cap}")]
    OrderExceedsCap { order: BigUint, cap: u64 },

    #[error("internal parity failure: Euler characteristic {chi} is not of the form 2-2g")]
    InternalParity { chi: i64 },

    #[error("internal consistency failure: {reason}")]
    InternalConsistency { reason: String },

    #[error("random generation retries exhausted after {retries} attempts")]
    RetriesExhausted { retries: u32 },

    #[error("unknown fixture {name:?}")]
    UnknownFixture { name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
