use thiserror::Error;

use crate::model::CaseId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate:e}, residual {residual:e})"
    )]
    QuadratureNonConvergence {
        estimate: f64,
        residual: f64,
        subdivisions: usize,
    },

    #[error("caustic at t = {time}: |sin({frequency} t)| = {value:e} is below the caustic threshold")]
    Caustic { time: f64, frequency: f64, value: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("case ({case}) is not supported here: {reason}")]
    UnsupportedCase { case: CaseId, reason: &'static str },

    #[error("reference diffusion D = {value:e} at t = {time} is not positive")]
    NonPositiveDiffusion { time: f64, value: f64 },

    #[error("decoherence threshold not reached within the horizon")]
    ThresholdNotReached,

    #[error(
        "target t_D = {target} is outside the calibration bracket: \
         lambda = {lo_lambda} gives {lo_time:?}, lambda = {hi_lambda} gives {hi_time:?}"
    )]
    CalibrationBracket {
        target: f64,
        lo_lambda: f64,
        lo_time: Option<f64>,
        hi_lambda: f64,
        hi_time: Option<f64>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
