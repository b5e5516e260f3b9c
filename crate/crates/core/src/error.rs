use thiserror::Error;

use crate::lift::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dual vector has no direction (real part vanishes)")]
    SingularDirection,
    #[error("division by a dual number with vanishing real part")]
    DualDivisionByZero,
    #[error("parameter {0} outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("derivative of order {order} requested from a degree-{degree} curve")]
    DegreeTooLow { order: usize, degree: usize },
    #[error("invalid control net: {0}")]
    InvalidNet(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("expression undefined: {0}")]
    Domain(String),
    #[error("cylindrical point at t = {t} (kappa = {kappa:e})")]
    CylindricalPoint { t: f64, kappa: f64 },
    #[error("striction undefined at t = {t}: surface is developable there")]
    StrictionUndefined { t: f64 },
    #[error("surface normal undefined at t = {t}, w = {w}")]
    NormalUndefined { t: f64, w: f64 },
    #[error("curve not closed")]
    NotClosed,
    #[error("quadrature did not converge: {0}")]
    QuadratureNoConvergence(String),
    #[error("every sample of the patch is degenerate")]
    AllSamplesDegenerate,
    #[error("mesh is empty")]
    EmptyMesh,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed {format} data at line {line}: {message}")]
    Format {
        format: &'static str,
        line: usize,
        message: String,
    },
}
