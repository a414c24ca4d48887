use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid imaginary unit: {0}")]
    InvalidUnit(String),
    #[error("coordinate {coordinate} leaves the common slice (offset {offset:e})")]
    NotInSliceCone { coordinate: usize, offset: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("slice pair too close to invert: |I - J| = {separation:e}")]
    DegenerateSlicePair { separation: f64 },

    #[error("path has no waypoints")]
    EmptyPath,
    #[error("path must start at a real point (imaginary part {imag:e} at coordinate {coordinate})")]
    NonRealStart { coordinate: usize, imag: f64 },
    #[error("fragment does not start at the path endpoint (gap {gap:e})")]
    EndpointMismatch { gap: f64 },
    #[error("point at distance {distance} is outside the path ball of radius {radius}")]
    OutOfBall { distance: f64, radius: f64 },

    #[error("point is not in the domain")]
    NotInDomain,
    #[error("no sampled unit lifts the path into the domain")]
    NotInPathSpace,
    #[error("need at least two units lifting the path into the value domain, found {found}")]
    StemPairUnavailable { found: usize },

    #[error("point is outside the declared domain of the function")]
    OutOfDomain,
    #[error("function is path dependent here; evaluate along a path")]
    PathRequired,
    #[error("lifted path leaves the declared domain near t = {t}")]
    PathLeavesDomain { t: f64 },
    #[error("path passes within {distance:e} of the branch point")]
    BranchPointHit { distance: f64 },
    #[error("continuation must start on the positive real axis, got {start}")]
    StartOnCut { start: f64 },
    #[error("monodromy functions take one variable, got {0}")]
    MonodromyDimension(usize),

    #[error("no route from a real anchor to the point stays in the domain")]
    RoutingFailed,
    #[error("route endpoint lifts to a different point (gap {gap:e})")]
    UnitMismatch { gap: f64 },
    #[error("a real point needs an explicit slice for this operation")]
    UnitRequired,
    #[error("finite-difference stencil leaves the declared domain")]
    StencilLeavesDomain,
    #[error("step {h} does not fit in the admissible ball of radius {radius}")]
    StencilLeavesBall { h: f64, radius: f64 },
    #[error("domain certification failed: {0}")]
    DomainViolation(String),

    #[error("invalid input: {0}")]
    InvalidSpec(String),
}

impl Error {
    /// Errors caused by a point or path lying outside some domain, as
    /// opposed to malformed input.
    pub fn is_domain_violation(&self) -> bool {
        matches!(
            self,
            Error::NotInDomain
                | Error::NotInPathSpace
                | Error::StemPairUnavailable { .. }
                | Error::OutOfDomain
                | Error::OutOfBall { .. }
                | Error::PathLeavesDomain { .. }
                | Error::BranchPointHit { .. }
                | Error::StartOnCut { .. }
                | Error::RoutingFailed
                | Error::UnitMismatch { .. }
                | Error::StencilLeavesDomain
                | Error::StencilLeavesBall { .. }
                | Error::DomainViolation(_)
        )
    }
}
