//! Normal diffusion coefficient `D(t)` multiplying `(x − x′)²` in A's
//! master equation, for the four cases.
//!
//! `D = λ² [a S₁ + b S₂]` where
//! `S₁ = ∫₀ᵗ ĝ ∂ₜĝ ds` is the bath term built from the unit response `ĝ`,
//! `S₂ = ∫₀ᵗ ν̃(t−s)/ν̃(0) · Δx(s) ds` is the back-reaction of B's packet,
//! `a = 2γ₀kT/(ħ M_B Ω²)` and `b = σ F/(32ħ)` with the scope factor
//! `F = Ω²/(ω²+Ω²)²` or `F = 1`.
//!
//! The closed form evaluates `ĝ` and `∂ₜĝ` through explicit brackets and
//! `S₂` through its antiderivative. The quadrature form builds both from
//! the convolution integrals of [`crate::trajectories`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CaseId, ModelParams};
use crate::numerics::{integrate, QuadratureSpec, TimeSeries};
use crate::trajectories::{check_caustic, UnitResponse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::ClosedForm, Method::Quadrature];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_form" | "closed" => Ok(Method::ClosedForm),
            "quadrature" => Ok(Method::Quadrature),
            other => Err(Error::InvalidParameter {
                field: "method",
                reason: format!("expected closed_form or quadrature, got `{other}`"),
            }),
        }
    }
}

/// Which terms carry the overall `Ω²/(ω²+Ω²)²` factor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrefactorScope {
    #[default]
    Both,
    FirstOnly,
}

impl FromStr for PrefactorScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both" => Ok(PrefactorScope::Both),
            "first_only" => Ok(PrefactorScope::FirstOnly),
            other => Err(Error::InvalidParameter {
                field: "prefactor_scope",
                reason: format!("expected both or first_only, got `{other}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffusionOptions {
    pub scope: PrefactorScope,
    pub quadrature: QuadratureSpec,
}

impl Default for DiffusionOptions {
    fn default() -> Self {
        Self {
            scope: PrefactorScope::Both,
            quadrature: QuadratureSpec {
                abs_tol: 1e-300,
                rel_tol: 1e-11,
                max_subdivisions: 200,
            },
        }
    }
}

/// A single evaluated coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffusionValue {
    pub t: f64,
    pub value: f64,
    pub case: CaseId,
    pub method: Method,
}

/// The two contributions to `D`, prefactors applied.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct DiffusionTerms {
    pub bath: f64,
    pub backreaction: f64,
}

impl DiffusionTerms {
    pub fn total(&self) -> f64 {
        self.bath + self.backreaction
    }
}

/// λ-independent shape integrals.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ShapeIntegrals {
    /// `∫₀ᵗ ĝ ∂ₜĝ ds`, zero when the bath is off.
    pub s1: f64,
    /// `∫₀ᵗ ν̃-shape(t−s) Δx(s) ds`.
    pub s2: f64,
}

/// The λ-independent coefficients `(a, b)` of `D = λ²(a S₁ + b S₂)`.
pub fn prefactors(p: &ModelParams, scope: PrefactorScope) -> (f64, f64) {
    let w2 = p.omega * p.omega;
    let big2 = p.omega_b * p.omega_b;
    let a = 2.0 * p.gamma_kt() / (p.hbar * p.mass_b * big2);
    let scope_factor = match scope {
        PrefactorScope::Both => big2 / ((w2 + big2) * (w2 + big2)),
        PrefactorScope::FirstOnly => 1.0,
    };
    let b = p.sigma * scope_factor / (32.0 * p.hbar);
    (a, b)
}

/// Below `max(ω, Ω) t < SHORT_TIME` the short-time series is used.
pub const SHORT_TIME: f64 = 1e-3;

/// Frequencies closer than this (relative) use the degenerate forms of
/// cases (c) and (d).
pub const RESONANCE_TOLERANCE: f64 = 1e-8;

fn is_resonant(omega: f64, omega_b: f64) -> bool {
    let (w2, b2) = (omega * omega, omega_b * omega_b);
    (w2 - b2).abs() < RESONANCE_TOLERANCE * (w2 + b2)
}

/// Explicit brackets for `ĝ = N B₁` and `∂ₜĝ = N B₂` at a fixed horizon.
///
/// With `r = sn(Ωs)/sn(Ωt)` and `q = sn(Ω(t−s))/sn(Ωt)`,
/// `B₁ = −cA(ωt) q − r + cA(ω(t−s))` and
/// `B₂ = −ω cA′(ωt) q + Ω r (cB(Ωt) − cA(ωt))/sn(Ωt) + ω cA′(ω(t−s))`,
/// where every term stays bounded by the size of `B₁` itself for inverted B.
struct Brackets {
    case: CaseId,
    t: f64,
    w: f64,
    big: f64,
    norm: f64,
    resonant: bool,
    ca_t: f64,
    dca_t: f64,
    sb_t: f64,
    mix_t: f64,
}

impl Brackets {
    fn new(t: f64, c: CaseId, w: f64, big: f64) -> Self {
        let (ka, kb) = (c.kind_a(), c.kind_b());
        let resonant = matches!(c, CaseId::C | CaseId::D) && is_resonant(w, big);
        let norm = match c {
            CaseId::A => big / (w * w + big * big),
            CaseId::B => -big / (w * w + big * big),
            CaseId::C => big / (w * w - big * big),
            CaseId::D => -big / (w * w - big * big),
        };
        let sb_t = kb.sn(big * t);
        let ca_t = ka.cs(w * t);
        Self {
            case: c,
            t,
            w,
            big,
            norm,
            resonant,
            ca_t,
            dca_t: ka.cs_prime(w * t),
            sb_t,
            mix_t: (kb.cs(big * t) - ca_t) / sb_t,
        }
    }

    /// `(ĝ(s), ∂ₜĝ(s))`.
    fn eval(&self, s: f64) -> (f64, f64) {
        let (t, w, big) = (self.t, self.w, self.big);
        let (ka, kb) = (self.case.kind_a(), self.case.kind_b());
        if self.resonant {
            let tau = big * (t - s);
            return (0.5 * s * kb.sn(tau), 0.5 * s * big * kb.cs(tau));
        }
        let r = kb.sn(big * s) / self.sb_t;
        let q = kb.sn(big * (t - s)) / self.sb_t;
        let b1 = -self.ca_t * q - r + ka.cs(w * (t - s));
        let b2 = -w * self.dca_t * q + big * r * self.mix_t + w * ka.cs_prime(w * (t - s));
        (self.norm * b1, self.norm * b2)
    }
}

/// `(sinh x)/x`-style helpers for the resonant antiderivatives.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// Closed antiderivative of `S₂`.
fn s2_closed(t: f64, c: CaseId, w: f64, big: f64) -> f64 {
    let d2 = w * w + big * big;
    match c {
        CaseId::A => (big * (big * t).sinh() * (w * t).cos() + w * (big * t).cosh() * (w * t).sin()) / d2,
        CaseId::B => (w * (w * t).sinh() * (big * t).cos() + big * (w * t).cosh() * (big * t).sin()) / d2,
        CaseId::C => 0.5 * t * (sinc((w - big) * t) + sinc((w + big) * t)),
        CaseId::D => 0.5 * t * (sinhc((w - big) * t) + sinhc((w + big) * t)),
    }
}

fn s2_quadrature(t: f64, c: CaseId, w: f64, big: f64, spec: &QuadratureSpec) -> Result<f64> {
    let (ka, kb) = (c.kind_a(), c.kind_b());
    Ok(integrate(|s| kb.cs(big * (t - s)) * ka.cs(w * (t - s)), 0.0, t, spec)?.value)
}

/// Series through relative order `t²`:
/// `S₁ ≈ Ω²t⁴/48 [1 − (17βΩ² + 25αω²) t²/60]`, `S₂ ≈ t + (βΩ² − αω²) t³/6`,
/// with `β = ±1` for inverted/harmonic B and `α = ±1` for harmonic/inverted A.
fn short_time(t: f64, c: CaseId, omega: f64, omega_b: f64, with_bath: bool) -> ShapeIntegrals {
    use crate::model::OscillatorKind::{Harmonic, Inverted};
    let beta = if c.kind_b() == Inverted { 1.0 } else { -1.0 };
    let alpha = if c.kind_a() == Harmonic { 1.0 } else { -1.0 };
    let (w2, b2, t2) = (omega * omega, omega_b * omega_b, t * t);
    let s1 = if with_bath {
        b2 * t2 * t2 / 48.0 * (1.0 - (17.0 * beta * b2 + 25.0 * alpha * w2) * t2 / 60.0)
    } else {
        0.0
    };
    ShapeIntegrals {
        s1,
        s2: t * (1.0 + (beta * b2 - alpha * w2) * t2 / 6.0),
    }
}

fn check_horizon(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("diffusion needs finite t >= 0, got {t}")));
    }
    Ok(())
}

/// Evaluates the λ-independent shape integrals. `s1` is only computed
/// when `with_bath` is set.
pub fn shape_integrals(
    t: f64,
    c: CaseId,
    omega: f64,
    omega_b: f64,
    method: Method,
    with_bath: bool,
    spec: &QuadratureSpec,
) -> Result<ShapeIntegrals> {
    check_horizon(t)?;
    let x = t * omega.max(omega_b);
    if x < SHORT_TIME {
        return Ok(short_time(t, c, omega, omega_b, with_bath));
    }
    if with_bath {
        check_caustic(c.kind_b(), omega_b, t)?;
    }
    match method {
        Method::ClosedForm => {
            let s1 = if with_bath {
                let br = Brackets::new(t, c, omega, omega_b);
                // The brackets cancel to O(x²) from O(1) terms at short times.
                let floor = 64.0 * f64::EPSILON / (x * x).min(1.0);
                let spec = QuadratureSpec {
                    rel_tol: spec.rel_tol.max(floor),
                    ..*spec
                };
                integrate(
                    |s| {
                        let (g, dg) = br.eval(s);
                        g * dg
                    },
                    0.0,
                    t,
                    &spec,
                )?
                .value
            } else {
                0.0
            };
            Ok(ShapeIntegrals {
                s1,
                s2: s2_closed(t, c, omega, omega_b),
            })
        }
        Method::Quadrature => {
            let s1 = if with_bath {
                let inner = QuadratureSpec {
                    rel_tol: (spec.rel_tol * 1e-2).max(1e-14),
                    ..*spec
                };
                let r = UnitResponse::new(t, c, omega, omega_b, &inner)?;
                integrate(
                    |s| match r.g_and_dt(s) {
                        Ok((g, dg)) => g * dg,
                        Err(_) => f64::NAN,
                    },
                    0.0,
                    t,
                    spec,
                )?
                .value
            } else {
                0.0
            };
            Ok(ShapeIntegrals {
                s1,
                s2: s2_quadrature(t, c, omega, omega_b, spec)?,
            })
        }
    }
}

/// Both terms of `D(t)` with explicit method and options.
pub fn diffusion_terms(
    t: f64,
    p: &ModelParams,
    c: CaseId,
    method: Method,
    opts: &DiffusionOptions,
) -> Result<DiffusionTerms> {
    let (a, b) = prefactors(p, opts.scope);
    let shapes = shape_integrals(t, c, p.omega, p.omega_b, method, a != 0.0, &opts.quadrature)?;
    let lambda2 = p.lambda * p.lambda;
    Ok(DiffusionTerms {
        bath: lambda2 * (a * shapes.s1),
        backreaction: lambda2 * (b * shapes.s2),
    })
}

pub fn diffusion(t: f64, p: &ModelParams, c: CaseId, method: Method, opts: &DiffusionOptions) -> Result<f64> {
    Ok(diffusion_terms(t, p, c, method, opts)?.total())
}

/// `D(t)` from the explicit bracket expressions.
pub fn diffusion_closed(t: f64, p: &ModelParams, c: CaseId) -> Result<f64> {
    diffusion(t, p, c, Method::ClosedForm, &DiffusionOptions::default())
}

/// `D(t)` from the trajectory convolution integrals.
pub fn diffusion_quadrature(t: f64, p: &ModelParams, c: CaseId) -> Result<f64> {
    diffusion(t, p, c, Method::Quadrature, &DiffusionOptions::default())
}

/// A grid point that could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct Gap {
    pub index: usize,
    pub time: f64,
    pub error: Error,
}

/// A sampled `D(t)` on `[0, horizon]`; failed points hold NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionSeries {
    pub case: CaseId,
    pub method: Method,
    pub series: TimeSeries,
    pub gaps: Vec<Gap>,
}

fn map_points<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Samples `D` on `n` uniform points of `[0, horizon]`.
pub fn diffusion_series(
    horizon: f64,
    n: usize,
    p: &ModelParams,
    c: CaseId,
    method: Method,
    opts: &DiffusionOptions,
) -> Result<DiffusionSeries> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::domain(format!("horizon must be positive, got {horizon}")));
    }
    if n < 2 {
        return Err(Error::domain("need at least two grid points"));
    }
    let dt = horizon / (n - 1) as f64;
    let results = map_points(n, |k| diffusion(k as f64 * dt, p, c, method, opts));
    let mut values = Vec::with_capacity(n);
    let mut gaps = Vec::new();
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => values.push(v),
            Err(error) => {
                values.push(f64::NAN);
                gaps.push(Gap {
                    index: k,
                    time: k as f64 * dt,
                    error,
                });
            }
        }
    }
    Ok(DiffusionSeries {
        case: c,
        method,
        series: TimeSeries::new(0.0, dt, values)?,
        gaps,
    })
}
