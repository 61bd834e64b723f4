//! Classical boundary-value paths of A and B, the difference path `Δq_cl`
//! and the response function `g(s, t)`.
//!
//! B obeys `q̈ ± Ω² q = (λ/M_B) x` (upper sign harmonic); dissipation in
//! B's equation of motion is dropped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CaseId, ModelParams, OscillatorKind};
use crate::numerics::{integrate, QuadratureSpec, TimeSeries};

/// Harmonic boundary problems are refused when `|sin(frequency · t)|`
/// falls below this value.
pub const CAUSTIC_THRESHOLD: f64 = 1e-6;

/// Below `frequency · t < SMALL_T` boundary ratios use their first-order
/// series.
pub const SMALL_T: f64 = 1e-6;

pub(crate) fn trajectory_spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-300,
        rel_tol: 1e-12,
        max_subdivisions: 200,
    }
}

fn check_time(s: f64, t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("horizon must be finite and >= 0, got {t}")));
    }
    if !(s >= 0.0 && s <= t) {
        return Err(Error::domain(format!("time {s} outside [0, {t}]")));
    }
    Ok(())
}

/// Errors at a harmonic caustic of the horizon.
pub fn check_caustic(kind: OscillatorKind, frequency: f64, t: f64) -> Result<()> {
    if kind == OscillatorKind::Harmonic && frequency * t >= SMALL_T {
        let value = (frequency * t).sin();
        if value.abs() < CAUSTIC_THRESHOLD {
            return Err(Error::Caustic {
                time: t,
                frequency,
                value,
            });
        }
    }
    Ok(())
}

/// `(sn(f(t−s))/sn(ft), sn(fs)/sn(ft))`, the weights of the initial and
/// final endpoints of a free path.
pub fn boundary_weights(s: f64, t: f64, kind: OscillatorKind, frequency: f64) -> Result<(f64, f64)> {
    check_time(s, t)?;
    check_caustic(kind, frequency, t)?;
    if t == 0.0 {
        return Ok((1.0, 0.0));
    }
    if frequency * t < SMALL_T {
        return Ok(((t - s) / t, s / t));
    }
    let d = kind.sn(frequency * t);
    Ok((kind.sn(frequency * (t - s)) / d, kind.sn(frequency * s) / d))
}

/// Classical path of A with `x(0) = x0`, `x(t) = xf`.
pub fn x_classical(s: f64, t: f64, x0: f64, xf: f64, kind: OscillatorKind, omega: f64) -> Result<f64> {
    let (w0, wf) = boundary_weights(s, t, kind, omega)?;
    Ok(x0 * w0 + xf * wf)
}

/// Functional form of the drive felt by B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceShape {
    Zero,
    /// A's free solution with unit value and zero velocity at the final time:
    /// `cos(ω(t−u))` or `cosh(ω(t−u))`.
    FinalAnchored,
    /// A's boundary-value path between the given endpoints.
    BoundaryPath {
        x0: f64,
        xf: f64,
    },
}

/// A drive `amplitude · shape(u)` built from A's classical dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrivenSourceSpec {
    pub amplitude: f64,
    pub shape: SourceShape,
    pub kind: OscillatorKind,
    pub omega: f64,
}

impl DrivenSourceSpec {
    pub fn zero(kind: OscillatorKind, omega: f64) -> Self {
        Self {
            amplitude: 0.0,
            shape: SourceShape::Zero,
            kind,
            omega,
        }
    }

    /// Unit endpoint-difference drive for case `c`.
    pub fn final_anchored(c: CaseId, omega: f64) -> Self {
        Self {
            amplitude: 1.0,
            shape: SourceShape::FinalAnchored,
            kind: c.kind_a(),
            omega,
        }
    }

    pub fn value(&self, u: f64, t: f64) -> Result<f64> {
        Ok(match self.shape {
            SourceShape::Zero => 0.0,
            SourceShape::FinalAnchored => self.amplitude * self.kind.cs(self.omega * (t - u)),
            SourceShape::BoundaryPath { x0, xf } => {
                self.amplitude * x_classical(u, t, x0, xf, self.kind, self.omega)?
            }
        })
    }

    fn validate(&self, t: f64) -> Result<()> {
        if let SourceShape::BoundaryPath { .. } = self.shape {
            check_caustic(self.kind, self.omega, t)?;
        }
        Ok(())
    }
}

/// `∫₀^upper x(u) sn(Ω(upper − u)) du`.
fn convolution(
    source: &DrivenSourceSpec,
    kind_b: OscillatorKind,
    omega_b: f64,
    upper: f64,
    t: f64,
) -> Result<f64> {
    if upper == 0.0 || matches!(source.shape, SourceShape::Zero) || source.amplitude == 0.0 {
        return Ok(0.0);
    }
    // Caustics of the source were rejected up front, so the closure is total.
    let f = |u: f64| source.value(u, t).unwrap_or(f64::NAN) * kind_b.sn(omega_b * (upper - u));
    Ok(integrate(f, 0.0, upper, &trajectory_spec())?.value)
}

/// Driven classical path of B with `q(0) = q0`, `q(t) = qf`.
#[allow(clippy::too_many_arguments)]
pub fn q_classical(
    s: f64,
    t: f64,
    q0: f64,
    qf: f64,
    kind: OscillatorKind,
    omega_b: f64,
    source: &DrivenSourceSpec,
    p: &ModelParams,
) -> Result<f64> {
    let (w0, wf) = boundary_weights(s, t, kind, omega_b)?;
    source.validate(t)?;
    let c = p.lambda / (p.mass_b * omega_b);
    let inner = convolution(source, kind, omega_b, s, t)?;
    let outer = convolution(source, kind, omega_b, t, t)?;
    Ok(q0 * w0 + qf * wf + c * (inner - wf * outer))
}

/// `g(s,t) = (λ/M_BΩ)[−∫₀ˢ Δx sn(Ω(s−u)) du + sn(Ωs)/sn(Ωt) ∫₀ᵗ Δx sn(Ω(t−u)) du]`.
pub fn g_function(
    s: f64,
    t: f64,
    source: &DrivenSourceSpec,
    p: &ModelParams,
    bkind: OscillatorKind,
) -> Result<f64> {
    let (_, wf) = boundary_weights(s, t, bkind, p.omega_b)?;
    source.validate(t)?;
    let inner = convolution(source, bkind, p.omega_b, s, t)?;
    let outer = convolution(source, bkind, p.omega_b, t, t)?;
    Ok(p.lambda / (p.mass_b * p.omega_b) * (wf * outer - inner))
}

/// Difference of two B paths sharing the final endpoint, with initial
/// offset `dq0` and drive difference `source`: `dq0 · w₀(s) − g(s, t)`.
pub fn delta_q(
    s: f64,
    t: f64,
    dq0: f64,
    source: &DrivenSourceSpec,
    p: &ModelParams,
    bkind: OscillatorKind,
) -> Result<f64> {
    let (w0, _) = boundary_weights(s, t, bkind, p.omega_b)?;
    Ok(dq0 * w0 - g_function(s, t, source, p, bkind)?)
}

/// A sampled classical path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPath {
    pub t_final: f64,
    pub endpoint_start: f64,
    pub endpoint_end: f64,
    pub kind: OscillatorKind,
    pub frequency: f64,
    pub samples: TimeSeries,
}

impl BoundaryPath {
    /// A's free path on `n` points.
    pub fn free(t: f64, x0: f64, xf: f64, kind: OscillatorKind, omega: f64, n: usize) -> Result<Self> {
        check_caustic(kind, omega, t)?;
        let mut values = Vec::with_capacity(n);
        let dt = t / (n.max(2) - 1) as f64;
        for k in 0..n {
            let s = (k as f64 * dt).min(t);
            values.push(x_classical(s, t, x0, xf, kind, omega)?);
        }
        Ok(Self {
            t_final: t,
            endpoint_start: x0,
            endpoint_end: xf,
            kind,
            frequency: omega,
            samples: TimeSeries::new(0.0, dt, values)?,
        })
    }

    /// B's driven path on `n` points.
    #[allow(clippy::too_many_arguments)]
    pub fn driven(
        t: f64,
        q0: f64,
        qf: f64,
        kind: OscillatorKind,
        omega_b: f64,
        source: &DrivenSourceSpec,
        p: &ModelParams,
        n: usize,
    ) -> Result<Self> {
        check_caustic(kind, omega_b, t)?;
        let dt = t / (n.max(2) - 1) as f64;
        let mut values = Vec::with_capacity(n);
        for k in 0..n {
            let s = (k as f64 * dt).min(t);
            values.push(q_classical(s, t, q0, qf, kind, omega_b, source, p)?);
        }
        Ok(Self {
            t_final: t,
            endpoint_start: q0,
            endpoint_end: qf,
            kind,
            frequency: omega_b,
            samples: TimeSeries::new(0.0, dt, values)?,
        })
    }
}

/// Response to the unit final-anchored drive at a fixed horizon, in units
/// of `λ/(M_B Ω)`.
///
/// Evaluated through B's Green's function,
/// `ĝ(s) = q(s) ∫₀ˢ Δx(u) sn(Ωu) du + r(s) ∫ₛᵗ Δx(u) sn(Ω(t−u)) du` with
/// `q = sn(Ω(t−s))/sn(Ωt)` and `r = sn(Ωs)/sn(Ωt)`, which equals
/// [`g_function`] without its cancellation between exponentially large
/// terms.
#[derive(Debug, Clone)]
pub struct UnitResponse {
    t: f64,
    omega: f64,
    omega_b: f64,
    kind_a: OscillatorKind,
    kind_b: OscillatorKind,
    spec: QuadratureSpec,
    sn_t: f64,
    cs_t: f64,
}

impl UnitResponse {
    pub fn new(t: f64, c: CaseId, omega: f64, omega_b: f64, spec: &QuadratureSpec) -> Result<Self> {
        check_time(0.0, t)?;
        let (kind_a, kind_b) = (c.kind_a(), c.kind_b());
        check_caustic(kind_b, omega_b, t)?;
        Ok(Self {
            t,
            omega,
            omega_b,
            kind_a,
            kind_b,
            spec: *spec,
            sn_t: kind_b.sn(omega_b * t),
            cs_t: kind_b.cs(omega_b * t),
        })
    }

    fn dx(&self, u: f64) -> f64 {
        self.kind_a.cs(self.omega * (self.t - u))
    }

    fn dx_dt(&self, u: f64) -> f64 {
        self.omega * self.kind_a.cs_prime(self.omega * (self.t - u))
    }

    fn quad<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        Ok(integrate(f, a, b, &self.spec)?.value)
    }

    fn weights(&self, s: f64) -> (f64, f64) {
        let (w, kb) = (self.omega_b, self.kind_b);
        (kb.sn(w * (self.t - s)) / self.sn_t, kb.sn(w * s) / self.sn_t)
    }

    pub fn horizon(&self) -> f64 {
        self.t
    }

    /// `ĝ(s)`.
    pub fn g(&self, s: f64) -> Result<f64> {
        check_time(s, self.t)?;
        if self.t == 0.0 {
            return Ok(0.0);
        }
        let (w, kb, t) = (self.omega_b, self.kind_b, self.t);
        let (q, r) = self.weights(s);
        let early = self.quad(|u| self.dx(u) * kb.sn(w * u), 0.0, s)?;
        let late = self.quad(|u| self.dx(u) * kb.sn(w * (t - u)), s, t)?;
        Ok(q * early + r * late)
    }

    /// `(ĝ(s), ∂ₜĝ(s))`.
    pub fn g_and_dt(&self, s: f64) -> Result<(f64, f64)> {
        check_time(s, self.t)?;
        if self.t == 0.0 {
            return Ok((0.0, 0.0));
        }
        let (w, kb, t) = (self.omega_b, self.kind_b, self.t);
        let (q, r) = self.weights(s);
        let dq = w * r / self.sn_t;
        let dr = -w * r * self.cs_t / self.sn_t;
        let early = self.quad(|u| self.dx(u) * kb.sn(w * u), 0.0, s)?;
        let late = self.quad(|u| self.dx(u) * kb.sn(w * (t - u)), s, t)?;
        let d_early = self.quad(|u| self.dx_dt(u) * kb.sn(w * u), 0.0, s)?;
        let d_late = self.quad(
            |u| self.dx_dt(u) * kb.sn(w * (t - u)) + self.dx(u) * w * kb.cs(w * (t - u)),
            s,
            t,
        )?;
        Ok((
            q * early + r * late,
            dq * early + q * d_early + dr * late + r * d_late,
        ))
    }
}
