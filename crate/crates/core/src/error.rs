use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation too small: requested {requested} eigenpairs, {available} available")]
    TruncationTooSmall { requested: usize, available: usize },

    #[error("boundary row is degenerate: |r[n]| = {value:e}")]
    DegenerateBoundaryRow { value: f64 },

    #[error("eigenvector cannot be normalized to a unit leading coefficient")]
    NormalizationImpossible,

    #[error("no determinant sign change in [{lo}, {hi}]")]
    NoRootsFound { lo: f64, hi: f64 },

    #[error("invalid state label: l = {l}, m = {m}")]
    InvalidLabel { l: usize, m: i64 },

    #[error("argument {value} outside the admissible domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },

    #[error("quadrature not converged: successive levels differ by {spread:e} (tolerance {tolerance:e})")]
    QuadratureNotConverged { spread: f64, tolerance: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
