//! Crate-wide error type.

use crate::engine::SolveReport;

/// Alias used by every fallible operation in the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("the zero polynomial has no resultant")]
    ZeroPolynomial,

    #[error("interpolation nodes {0} and {1} coincide within tolerance")]
    DuplicateNodes(usize, usize),

    #[error("spectra of blocks {0} and {1} collide within tolerance")]
    SpectraCollide(usize, usize),

    #[error("iteration did not converge within {0} sweeps")]
    NonConvergence(usize),

    #[error("matrix size {0} exceeds the size cap {1}")]
    SizeCap(usize, usize),

    #[error("spectrum is defective or clustered (minimal gap {0:.3e})")]
    DefectiveOrClustered(f64),

    #[error("eigenvector basis is ill-conditioned (pivot ratio {0:.3e})")]
    ConditioningFailure(f64),

    #[error("claimed inverse is not one (residual {0:.3e})")]
    NotInverse(f64),

    #[error("prescribed eigenvalues {0} and {1} coincide within tolerance")]
    RepeatedEigenvalue(usize, usize),

    #[error("X-spectrum is not simple; point cannot be canonicalized")]
    NotSimpleSpectrum,

    #[error("off-diagonal entries deviate from the forced rank-one form by {0:.3e}")]
    WilsonFormViolation(f64),

    #[error("membership lost after move {move_index} (residual {residual:.3e})")]
    MembershipLost { move_index: usize, residual: f64 },

    #[error(
        "membership lost at block {block}, point {point}, move {move_index} (residual {residual:.3e})"
    )]
    ConfigurationMembershipLost {
        block: usize,
        point: usize,
        move_index: usize,
        residual: f64,
    },

    #[error("genericity budget exhausted after {0} attempts")]
    GenericityExhausted(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("tuple contains coincident points (indices {0} and {1})")]
    DuplicatePoints(usize, usize),

    #[error("verification failed: maximal point distance {max_distance:.3e}")]
    VerificationFailed {
        max_distance: f64,
        report: Box<SolveReport>,
    },

    #[error(
        "blocks {0} and {1} both have size {2}: the product of two equal-size spaces \
         contains an invariant diagonal, so no shared automorphism sequence can move \
         their tuples independently"
    )]
    DuplicateSpaceSizes(usize, usize, usize),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line surface.
    ///
    /// 0 ok, 1 verification/membership failure, 2 usage, 3 malformed input,
    /// 4 budget exhausted, 5 theorem precondition violated.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VerificationFailed { .. }
            | Error::MembershipLost { .. }
            | Error::ConfigurationMembershipLost { .. }
            | Error::WilsonFormViolation(_)
            | Error::NotSimpleSpectrum => 1,
            Error::SizeMismatch(..) | Error::ShapeMismatch(_) => 2,
            Error::Format(_) | Error::Io(_) => 3,
            Error::GenericityExhausted(_) | Error::NonConvergence(_) => 4,
            Error::DuplicateSpaceSizes(..)
            | Error::DuplicatePoints(..)
            | Error::PreconditionViolated(_) => 5,
            _ => 2,
        }
    }
}
