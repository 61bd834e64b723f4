//! Independent reference evaluators for the decoherence library.
//!
//! Nothing in here is shared with the production code paths: the quadrature
//! is a composite Gauss-Legendre rule with nodes computed on the fly, the
//! boundary-value solver is a fixed-step RK4 shooting method, and the
//! analytic-continuation evaluator re-expresses the harmonic/inverted
//! diffusion integrands in complex arithmetic. These are slow on purpose.

pub mod continuation;
pub mod ode;
pub mod quadrature;

use thiserror::Error;

/// A reference value together with the oracle's own error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub method: Method,
    pub estimated_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    GaussLegendre,
    Shooting,
    ComplexContinuation,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("boundary problem is singular: |sin({frequency} * {horizon})| = {value:e}")]
    Caustic {
        frequency: f64,
        horizon: f64,
        value: f64,
    },
    #[error("shooting did not converge: endpoint residual {residual:e}")]
    ShootingFailed { residual: f64 },
    #[error("imaginary residue {imag:e} exceeds bound for real part {real:e}")]
    ImaginaryResidue { real: f64, imag: f64 },
    #[error("invalid oracle input: {0}")]
    Input(&'static str),
}

/// Oscillator kind, mirrored here so the oracles do not depend on the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Harmonic,
    Inverted,
}
