use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate denominator (|den| = {0:e})")]
    DegenerateDenominator(f64),

    #[error("coincident points: {0}")]
    CoincidentPoints(String),

    #[error("root solver failed: residual {0:e} exceeds the acceptance threshold")]
    SolverFailure(f64),

    #[error("point lies outside the domain: {0}")]
    OutsideDomain(String),

    #[error("point is not on the distinguished boundary (defect {0:e})")]
    NotOnBoundary(f64),

    #[error("Blaschke interpolation failed, best residual {0:e}")]
    InterpolationFailure(f64),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("unknown stratum `{0}`")]
    UnknownStratum(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Coarse grouping used by the command line front end to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad or malformed request.
    Input,
    /// A well-formed request about a point outside the relevant set.
    Domain,
    /// A numerical solver did not reach its target.
    Solver,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NotOnBoundary(_)
            | Error::OutsideDomain(_)
            | Error::DegenerateDenominator(_)
            | Error::CoincidentPoints(_) => ErrorClass::Domain,
            Error::SolverFailure(_)
            | Error::InterpolationFailure(_)
            | Error::InternalInconsistency(_) => ErrorClass::Solver,
            Error::UnknownStratum(_) | Error::InvalidInput(_) => ErrorClass::Input,
        }
    }
}
