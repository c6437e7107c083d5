use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point {point} lies on a branch cut; a side must be given")]
    AmbiguousSide { point: Complex64 },
    #[error("gamma function has a pole at {0}")]
    Pole(Complex64),
    #[error("invalid branch configuration: {0}")]
    BranchConfig(String),
    #[error("invalid path: {0}")]
    Path(String),
    #[error("contour error: {0}")]
    Contour(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("integrand is not integrable: {0}")]
    Integrability(String),
    #[error("quadrature did not converge (estimate {estimate}, error bound {error_bound:e})")]
    Accuracy { estimate: Complex64, error_bound: f64 },
    #[error("no pole inside the contour: {0}")]
    NoPole(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
