use thiserror::Error;

use crate::density::DenseEdgeReport;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// The arrangement data itself is malformed.
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    /// A sign list does not match the number of hyperplanes.
    #[error("local system has {got} signs but the arrangement has {expected} hyperplanes")]
    SignCountMismatch { expected: usize, got: usize },

    /// The local system fails the CDO condition; the closed-form answer is
    /// not asserted in this regime.
    #[error("local system violates the CDO condition on {} dense edge(s) at infinity", violations.len())]
    CdoViolation { violations: Vec<DenseEdgeReport> },

    /// An operation that requires a central arrangement received an affine one.
    #[error("arrangement is not central: {0}")]
    NotCentral(String),

    /// The hypothesis `∏ t_i = -1` of the central-arrangement identification
    /// does not hold.
    #[error("total monodromy is +1; the central-arrangement identification requires ∏ t_i = -1")]
    TotalMonodromyNotMinusOne,

    /// Division of the Poincaré polynomial by (1 + t) left a remainder. This
    /// never happens for a valid central arrangement and indicates an
    /// internal inconsistency.
    #[error("Poincaré polynomial of a central arrangement not divisible by (1+t): {0}")]
    InexactPoincareDivision(String),

    /// A pair of maps handed to `cohomology_of_pair` does not compose to
    /// zero, or a generated complex failed the δδ = 0 check. Always a
    /// construction bug, never a user error.
    #[error("broken complex: {0}")]
    BrokenComplex(String),
}
