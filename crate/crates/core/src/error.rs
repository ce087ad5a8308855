use thiserror::Error;

/// Failure modes of the solver layers.
///
/// Outcomes that are expected in normal operation are values, not errors:
/// an inconclusive regularity certificate is `verified == false`, and a
/// disjoint intersection is `None`. The variants here mark violated
/// preconditions, numerical breakdown, or inputs a method cannot accept.
#[derive(Debug, Error)]
pub enum Error {
    /// Operand outside the operation's domain, e.g. division by an
    /// interval containing zero or reversed endpoints on construction.
    #[error("domain error: {0}")]
    Domain(String),

    /// An endpoint left the finite range.
    #[error("floating-point overflow in interval computation")]
    Overflow,

    /// Operand dimensions do not agree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A square-matrix operation received a rectangular matrix.
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    /// LU elimination hit a pivot below the singularity tolerance.
    #[error("matrix is numerically singular")]
    SingularMidpoint,

    /// The approximate-inverse contraction check failed, so no rigorous
    /// error ball can be attached to the approximate solution.
    #[error("verification failed: residual contraction norm {norm} is not < 1")]
    VerificationFailed { norm: f64 },

    /// A cheap lower bound on the inverse diagonal degenerated, which
    /// certified inputs rule out.
    #[error("lower bound for inverse diagonal entry {row} degenerated")]
    DegenerateBound { row: usize },

    /// A contracting operator produced an empty intersection, which its
    /// preconditions rule out; indicates an unsound starting box.
    #[error("empty intersection in operator row {row}")]
    EmptyIntersection { row: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
