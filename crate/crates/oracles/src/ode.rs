//! Two-point boundary-value solver for the driven oscillator
//! `q'' = ±Ω² q + c x(s)` by RK4 shooting on the initial velocity.

use crate::{Kind, OracleError};

const CAUSTIC_THRESHOLD: f64 = 1e-6;

/// A solved path sampled on a uniform grid over `[0, t]`.
#[derive(Debug, Clone)]
pub struct SampledPath {
    pub dt: f64,
    pub positions: Vec<f64>,
    pub initial_velocity: f64,
    pub endpoint_residual: f64,
}

impl SampledPath {
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }
}

pub struct BoundaryProblem<'a> {
    pub kind: Kind,
    pub frequency: f64,
    /// Coefficient of the drive, `λ / M_B`.
    pub coupling: f64,
    pub source: &'a dyn Fn(f64) -> f64,
    pub horizon: f64,
    pub q0: f64,
    pub qf: f64,
}

/// Solves the boundary problem with `steps` RK4 steps and returns
/// `samples + 1` evenly spaced positions. `steps` must be a multiple of
/// `samples`.
pub fn boundary_solve(
    problem: &BoundaryProblem<'_>,
    steps: usize,
    samples: usize,
) -> Result<SampledPath, OracleError> {
    if samples == 0 || !steps.is_multiple_of(samples) {
        return Err(OracleError::Input("steps must be a multiple of samples"));
    }
    if problem.kind == Kind::Harmonic {
        let s = (problem.frequency * problem.horizon).sin();
        if s.abs() < CAUSTIC_THRESHOLD {
            return Err(OracleError::Caustic {
                frequency: problem.frequency,
                horizon: problem.horizon,
                value: s,
            });
        }
    }

    let shoot = |v0: f64| integrate(problem, v0, steps, samples);
    let endpoint = |path: &[f64]| path[path.len() - 1] - problem.qf;

    // The problem is linear in v0, so a secant step from two shots is exact
    // up to rounding; a few more secant steps absorb the rounding.
    let scale = 1.0 + problem.q0.abs() + problem.qf.abs();
    let mut v_prev = 0.0;
    let mut f_prev = endpoint(&shoot(v_prev));
    let mut v = scale / problem.horizon.max(1e-12);
    let mut path = shoot(v);
    let mut f = endpoint(&path);
    for _ in 0..20 {
        if f.abs() <= 1e-10 {
            return Ok(SampledPath {
                dt: problem.horizon / samples as f64,
                positions: path,
                initial_velocity: v,
                endpoint_residual: f,
            });
        }
        if f == f_prev {
            break;
        }
        let v_next = v - f * (v - v_prev) / (f - f_prev);
        v_prev = v;
        f_prev = f;
        v = v_next;
        path = shoot(v);
        f = endpoint(&path);
    }
    if f.abs() <= 1e-10 {
        return Ok(SampledPath {
            dt: problem.horizon / samples as f64,
            positions: path,
            initial_velocity: v,
            endpoint_residual: f,
        });
    }
    Err(OracleError::ShootingFailed { residual: f })
}

fn integrate(problem: &BoundaryProblem<'_>, v0: f64, steps: usize, samples: usize) -> Vec<f64> {
    let sign = match problem.kind {
        Kind::Harmonic => -1.0,
        Kind::Inverted => 1.0,
    };
    let w2 = problem.frequency * problem.frequency;
    let accel = |s: f64, q: f64| sign * w2 * q + problem.coupling * (problem.source)(s);
    let h = problem.horizon / steps as f64;
    let every = steps / samples;
    let mut q = problem.q0;
    let mut v = v0;
    let mut out = Vec::with_capacity(samples + 1);
    out.push(q);
    for k in 0..steps {
        let s = k as f64 * h;
        let k1q = v;
        let k1v = accel(s, q);
        let k2q = v + 0.5 * h * k1v;
        let k2v = accel(s + 0.5 * h, q + 0.5 * h * k1q);
        let k3q = v + 0.5 * h * k2v;
        let k3v = accel(s + 0.5 * h, q + 0.5 * h * k2q);
        let k4q = v + h * k3v;
        let k4v = accel(s + h, q + h * k3q);
        q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (k + 1) % every == 0 {
            out.push(q);
        }
    }
    out
}

/// Central second difference, used to check ODE residuals of closed forms.
pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// Fourth-order five-point second difference.
pub fn second_derivative_5pt<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h)
}

/// Fourth-order five-point first difference.
pub fn first_derivative_5pt<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}
