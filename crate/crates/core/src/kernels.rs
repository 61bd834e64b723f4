//! Ohmic bath kernels and the effective kernels seen by A once B is
//! integrated out.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CaseId, ModelParams};
use crate::numerics::{integrate, QuadratureSpec};

/// Frequency integrals run over `[0, KERNEL_UPPER_LIMIT · cutoff]`.
pub const KERNEL_UPPER_LIMIT: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    Noise,
    Dissipation,
    Gamma,
    EffNoise,
    EffDissipation,
}

impl KernelKind {
    pub fn is_effective(self) -> bool {
        matches!(self, KernelKind::EffNoise | KernelKind::EffDissipation)
    }
}

/// A kernel value at lag `τ = s₁ − s₂`. Effective kinds carry their case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSample {
    pub lag: f64,
    pub value: f64,
    pub kind: KernelKind,
    pub case: Option<CaseId>,
}

impl KernelSample {
    pub fn new(lag: f64, value: f64, kind: KernelKind, case: Option<CaseId>) -> Result<Self> {
        if kind.is_effective() && case.is_none() {
            return Err(Error::domain("effective kernel samples require a case"));
        }
        Ok(Self {
            lag,
            value,
            kind,
            case,
        })
    }
}

/// `I(w) = 2 M_B γ₀ w exp(−w²/Λ²)`.
pub fn spectral_density(w: f64, p: &ModelParams) -> Result<f64> {
    if !(w >= 0.0) {
        return Err(Error::domain(format!("spectral density needs w >= 0, got {w}")));
    }
    Ok(2.0 * p.mass_b * p.gamma0 * w * (-(w / p.cutoff).powi(2)).exp())
}

/// `I(w)/w`, finite at `w = 0`.
fn density_over_w(w: f64, p: &ModelParams) -> f64 {
    2.0 * p.mass_b * p.gamma0 * (-(w / p.cutoff).powi(2)).exp()
}

fn check_lag(s: f64) -> Result<()> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::domain(format!(
            "kernel lag must be finite and >= 0, got {s}"
        )));
    }
    Ok(())
}

/// `γ(s) = ∫ dw I(w)/w cos(ws)`.
pub fn gamma_kernel(s: f64, p: &ModelParams, spec: &QuadratureSpec) -> Result<f64> {
    check_lag(s)?;
    let upper = KERNEL_UPPER_LIMIT * p.cutoff;
    Ok(integrate(|w| density_over_w(w, p) * (w * s).cos(), 0.0, upper, spec)?.value)
}

/// `w coth(a w)`, with the series `(1 + (aw)²/3)/a` near zero.
fn w_coth(w: f64, a: f64) -> f64 {
    let x = a * w;
    if x < 1e-4 {
        (1.0 + x * x / 3.0) / a
    } else {
        w / x.tanh()
    }
}

/// `ν(s) = ∫ dw I(w) coth(ħw / 2kT) cos(ws)`.
pub fn noise_kernel(s: f64, p: &ModelParams, spec: &QuadratureSpec) -> Result<f64> {
    check_lag(s)?;
    if !(p.kt > 0.0) {
        return Err(Error::InvalidParameter {
            field: "kT",
            reason: "noise kernel needs a positive temperature".into(),
        });
    }
    let a = p.hbar / (2.0 * p.kt);
    let upper = KERNEL_UPPER_LIMIT * p.cutoff;
    Ok(integrate(
        |w| density_over_w(w, p) * w_coth(w, a) * (w * s).cos(),
        0.0,
        upper,
        spec,
    )?
    .value)
}

/// `η(s) = dγ/ds`, by differentiating under the integral.
pub fn dissipation_kernel(s: f64, p: &ModelParams, spec: &QuadratureSpec) -> Result<f64> {
    check_lag(s)?;
    let upper = KERNEL_UPPER_LIMIT * p.cutoff;
    Ok(integrate(|w| -density_over_w(w, p) * w * (w * s).sin(), 0.0, upper, spec)?.value)
}

/// `η̃(τ) = (λ²/2M_BΩ) sinh(Ωτ)` for inverted B, `sin` for harmonic B.
pub fn eff_dissipation_kernel(tau: f64, p: &ModelParams, c: CaseId) -> f64 {
    let lambda2 = p.lambda * p.lambda;
    lambda2 / (2.0 * p.mass_b * p.omega_b) * c.kind_b().sn(p.omega_b * tau)
}

/// `ν̃(τ) = (λ²σ/32ħ) cosh(Ωτ)` for inverted B, `cos` for harmonic B.
pub fn eff_noise_kernel(tau: f64, p: &ModelParams, c: CaseId) -> f64 {
    let lambda2 = p.lambda * p.lambda;
    lambda2 * p.sigma / (32.0 * p.hbar) * c.kind_b().cs(p.omega_b * tau)
}

/// Evaluates any kernel kind as a [`KernelSample`].
pub fn sample(
    kind: KernelKind,
    lag: f64,
    p: &ModelParams,
    case: Option<CaseId>,
    spec: &QuadratureSpec,
) -> Result<KernelSample> {
    let value = match kind {
        KernelKind::Noise => noise_kernel(lag.abs(), p, spec)?,
        KernelKind::Gamma => gamma_kernel(lag.abs(), p, spec)?,
        KernelKind::Dissipation => lag.signum() * dissipation_kernel(lag.abs(), p, spec)?,
        KernelKind::EffNoise | KernelKind::EffDissipation => {
            let c = case.ok_or_else(|| Error::domain("effective kernel samples require a case"))?;
            if kind == KernelKind::EffNoise {
                eff_noise_kernel(lag, p, c)
            } else {
                eff_dissipation_kernel(lag, p, c)
            }
        }
    };
    KernelSample::new(lag, value, kind, case)
}
