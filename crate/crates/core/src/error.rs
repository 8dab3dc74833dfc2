use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("mode {mode} out of range 1..={modes}")]
    ModeOutOfRange { mode: usize, modes: usize },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: &'static str },
    #[error("singular matrix: {0}")]
    Singular(&'static str),
    #[error("determinant branch tracking failed to converge")]
    BranchTracking,
    /// A reference overlap used to divide out the triple product is too small
    /// to recover a trustworthy phase.
    #[error("reference overlap `{which}` too small ({magnitude:e})")]
    OverlapUnderflow { which: &'static str, magnitude: f64 },
    #[error("outcome density {density:e} below floor")]
    DensityBelowFloor { density: f64 },
    #[error("every branch fell below the density floor")]
    AllBranchesDropped,
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("numerical inconsistency: {0}")]
    Inconsistent(&'static str),
}

impl Error {
    /// True for failures caused by floating-point limits rather than bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Singular(_)
                | Error::BranchTracking
                | Error::OverlapUnderflow { .. }
                | Error::DensityBelowFloor { .. }
                | Error::AllBranchesDropped
                | Error::Inconsistent(_)
        )
    }
}
