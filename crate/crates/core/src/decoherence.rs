//! Decoherence factor `Γ(t) = exp(−L² ∫₀ᵗ D)` and decoherence-time
//! estimators.

use serde::{Deserialize, Serialize};

use crate::diffusion::{diffusion, diffusion_series, DiffusionOptions, DiffusionSeries, Method};
use crate::error::{Error, Result};
use crate::model::{CaseId, ModelParams, OscillatorKind};
use crate::numerics::{cumulative_integral, find_first_crossing, Direction, TimeSeries, DEFAULT_GRID_POINTS};

pub const DEFAULT_EPSILON: f64 = 0.01;

/// Uniform sampling grid `[0, horizon]` with `points` samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub horizon: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(horizon: f64, points: usize) -> Self {
        Self { horizon, points }
    }

    pub fn with_default_points(horizon: f64) -> Self {
        Self::new(horizon, DEFAULT_GRID_POINTS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaOptions {
    pub method: Method,
    pub diffusion: DiffusionOptions,
    /// Squared coherence separation `(x_f − x_f′)²` multiplying `∫D`.
    pub separation: f64,
}

impl Default for GammaOptions {
    fn default() -> Self {
        Self {
            method: Method::ClosedForm,
            diffusion: DiffusionOptions::default(),
            separation: 1.0,
        }
    }
}

/// `D(t)` and the resulting `Γ(t)` on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaCurve {
    pub diffusion: DiffusionSeries,
    pub gamma: TimeSeries,
}

/// `Γ = exp(−separation · ∫D)` by cumulative trapezoid. Gaps propagate.
pub fn gamma_from_diffusion(d: &TimeSeries, separation: f64) -> TimeSeries {
    cumulative_integral(d).map(|c| (-separation * c).exp())
}

pub fn gamma_curve(grid: Grid, p: &ModelParams, c: CaseId, opts: &GammaOptions) -> Result<GammaCurve> {
    let d = diffusion_series(grid.horizon, grid.points, p, c, opts.method, &opts.diffusion)?;
    let gamma = gamma_from_diffusion(&d.series, opts.separation);
    Ok(GammaCurve { diffusion: d, gamma })
}

/// `Γ(t)` at unit separation with default options.
pub fn gamma_factor(horizon: f64, n: usize, p: &ModelParams, c: CaseId) -> Result<TimeSeries> {
    Ok(gamma_curve(Grid::new(horizon, n), p, c, &GammaOptions::default())?.gamma)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter {
            field: "epsilon",
            reason: format!("must lie in (0, 1), got {epsilon}"),
        });
    }
    Ok(())
}

/// First time `Γ` falls below `epsilon`.
pub fn t_dec_threshold(gamma: &TimeSeries, epsilon: f64) -> Result<Option<f64>> {
    check_epsilon(epsilon)?;
    Ok(find_first_crossing(gamma, epsilon, Direction::Falling))
}

/// `Λ = 2ω²`.
pub fn lyapunov(p: &ModelParams) -> f64 {
    2.0 * p.omega * p.omega
}

/// Choice of `t_max` in `t_D = t_max + (1/Λ) ln(σ_p0/σ_c)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TMaxPolicy {
    /// `t_max = t_c = (1/Λ) ln(σ_p0/σ_c)`.
    #[default]
    CriticalTime,
    /// `t_max` is the time at which `Γ` reaches one half.
    HalfDecay,
    Fixed(f64),
}

/// Choice of the diffusion value entering `σ_c = √(2 D_ref/Λ)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DRefPolicy {
    /// `D` at the threshold time of `Γ`, then once more at the resulting
    /// `t_D`.
    #[default]
    FirstPassThreshold,
    AtTime(f64),
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnstableOptions {
    pub grid: Grid,
    pub epsilon: f64,
    pub t_max: TMaxPolicy,
    pub d_ref: DRefPolicy,
    pub gamma: GammaOptions,
}

impl UnstableOptions {
    pub fn new(grid: Grid) -> Self {
        Self {
            grid,
            epsilon: DEFAULT_EPSILON,
            t_max: TMaxPolicy::default(),
            d_ref: DRefPolicy::default(),
            gamma: GammaOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnstableEstimate {
    pub t_d: f64,
    pub t_c: f64,
    pub t_max: f64,
    pub sigma_c: f64,
    pub lyapunov: f64,
    pub d_ref: f64,
    /// Time at which `d_ref` was evaluated, if it came from `D(t)`.
    pub t_ref: Option<f64>,
    pub notes: Vec<String>,
}

fn require_unstable(c: CaseId) -> Result<()> {
    if c.kind_a() != OscillatorKind::Inverted {
        return Err(Error::UnsupportedCase {
            case: c,
            reason: "the instability estimator needs an inverted A oscillator",
        });
    }
    Ok(())
}

fn require_harmonic(c: CaseId) -> Result<()> {
    if c.kind_a() != OscillatorKind::Harmonic {
        return Err(Error::UnsupportedCase {
            case: c,
            reason: "the distance estimator needs a harmonic A oscillator",
        });
    }
    Ok(())
}

/// Estimate for a given `D_ref` and `t_max` policy.
fn estimate_from(
    p: &ModelParams,
    d_ref: f64,
    t_ref: Option<f64>,
    policy: TMaxPolicy,
    half_decay: Option<f64>,
) -> Result<UnstableEstimate> {
    if !(d_ref > 0.0) || !d_ref.is_finite() {
        return Err(Error::NonPositiveDiffusion {
            time: t_ref.unwrap_or(f64::NAN),
            value: d_ref,
        });
    }
    let lyap = lyapunov(p);
    let sigma_c = (2.0 * d_ref / lyap).sqrt();
    let t_c = (p.sigma_p0 / sigma_c).ln() / lyap;
    let t_max = match policy {
        TMaxPolicy::CriticalTime => t_c,
        TMaxPolicy::Fixed(t) => t,
        TMaxPolicy::HalfDecay => half_decay.ok_or(Error::ThresholdNotReached)?,
    };
    let mut notes = Vec::new();
    if sigma_c > p.sigma_p0 {
        notes.push(format!(
            "sigma_c = {sigma_c:.6e} exceeds sigma_p0 = {:.6e}; the logarithmic term is negative",
            p.sigma_p0
        ));
    }
    Ok(UnstableEstimate {
        t_d: t_max + t_c,
        t_c,
        t_max,
        sigma_c,
        lyapunov: lyap,
        d_ref,
        t_ref,
        notes,
    })
}

/// Analytic decoherence time for inverted-A cases, given a precomputed `Γ`.
pub fn t_dec_unstable_from(
    p: &ModelParams,
    c: CaseId,
    gamma: &TimeSeries,
    opts: &UnstableOptions,
) -> Result<UnstableEstimate> {
    require_unstable(c)?;
    check_epsilon(opts.epsilon)?;
    let half = find_first_crossing(gamma, 0.5, Direction::Falling);
    let d_at = |t: f64| diffusion(t, p, c, opts.gamma.method, &opts.gamma.diffusion);
    match opts.d_ref {
        DRefPolicy::Value(d) => estimate_from(p, d, None, opts.t_max, half),
        DRefPolicy::AtTime(t) => estimate_from(p, d_at(t)?, Some(t), opts.t_max, half),
        DRefPolicy::FirstPassThreshold => {
            let t1 = t_dec_threshold(gamma, opts.epsilon)?.ok_or(Error::ThresholdNotReached)?;
            let first = estimate_from(p, d_at(t1)?, Some(t1), opts.t_max, half)?;
            let t2 = first.t_d;
            let refined = if t2 > 0.0 && t2.is_finite() {
                d_at(t2).ok().filter(|d| *d > 0.0 && d.is_finite())
            } else {
                None
            };
            match refined {
                Some(d2) => estimate_from(p, d2, Some(t2), opts.t_max, half),
                None => {
                    let mut kept = first;
                    kept.notes.push(format!(
                        "refinement at t = {t2:.6} unavailable; first-pass D_ref kept"
                    ));
                    Ok(kept)
                }
            }
        }
    }
}

/// Analytic decoherence time for cases (b) and (d).
pub fn t_dec_unstable(p: &ModelParams, c: CaseId, opts: &UnstableOptions) -> Result<UnstableEstimate> {
    require_unstable(c)?;
    let gamma = gamma_curve(opts.grid, p, c, &opts.gamma)?.gamma;
    t_dec_unstable_from(p, c, &gamma, opts)
}

/// Smallest grid time with `L² ∫₀ᵗ D ≥ 1`, from a sampled `D`.
pub fn t_dec_harmonic_from(d: &TimeSeries, length: f64) -> Result<Option<f64>> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::InvalidParameter {
            field: "length",
            reason: format!("must be positive, got {length}"),
        });
    }
    let l2 = length * length;
    let exponent = cumulative_integral(d).map(|c| l2 * c);
    if exponent.values()[0] >= 1.0 {
        return Ok(Some(exponent.t0()));
    }
    Ok(find_first_crossing(&exponent, 1.0, Direction::Rising))
}

/// Decoherence time for cases (a) and (c) at typical distance `length`
/// (default `2σ`).
pub fn t_dec_harmonic(
    p: &ModelParams,
    c: CaseId,
    length: Option<f64>,
    grid: Grid,
    opts: &GammaOptions,
) -> Result<Option<f64>> {
    require_harmonic(c)?;
    let d = diffusion_series(grid.horizon, grid.points, p, c, opts.method, &opts.diffusion)?;
    t_dec_harmonic_from(&d.series, length.unwrap_or(2.0 * p.sigma))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub grid: Grid,
    pub epsilon: f64,
    pub gamma: GammaOptions,
    pub t_max: TMaxPolicy,
    /// Typical distance for the harmonic estimator; `None` means `2σ`.
    pub length: Option<f64>,
}

impl ReportOptions {
    pub fn new(grid: Grid) -> Self {
        Self {
            grid,
            epsilon: DEFAULT_EPSILON,
            gamma: GammaOptions::default(),
            t_max: TMaxPolicy::default(),
            length: None,
        }
    }
}

/// Per-case decoherence summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecoherenceReport {
    pub case: CaseId,
    pub gamma_series: TimeSeries,
    pub t_d_threshold: Option<f64>,
    pub t_d_analytic: Option<f64>,
    pub lyapunov: Option<f64>,
    pub sigma_c: Option<f64>,
    pub notes: Vec<String>,
}

pub fn decoherence_report(p: &ModelParams, c: CaseId, opts: &ReportOptions) -> Result<DecoherenceReport> {
    let curve = gamma_curve(opts.grid, p, c, &opts.gamma)?;
    report_from_curve(p, c, &curve, opts)
}

/// Builds a report from an already sampled curve.
pub fn report_from_curve(
    p: &ModelParams,
    c: CaseId,
    curve: &GammaCurve,
    opts: &ReportOptions,
) -> Result<DecoherenceReport> {
    let t_d_threshold = t_dec_threshold(&curve.gamma, opts.epsilon)?;
    let mut notes = Vec::new();
    if !curve.diffusion.gaps.is_empty() {
        notes.push(format!(
            "{} grid points skipped (first at t = {:.6})",
            curve.diffusion.gaps.len(),
            curve.diffusion.gaps[0].time
        ));
    }
    let (t_d_analytic, lyap, sigma_c) = match c.kind_a() {
        OscillatorKind::Inverted => {
            let uopts = UnstableOptions {
                grid: opts.grid,
                epsilon: opts.epsilon,
                t_max: opts.t_max,
                d_ref: DRefPolicy::FirstPassThreshold,
                gamma: opts.gamma,
            };
            match t_dec_unstable_from(p, c, &curve.gamma, &uopts) {
                Ok(est) => {
                    notes.extend(est.notes.iter().cloned());
                    (Some(est.t_d), Some(est.lyapunov), Some(est.sigma_c))
                }
                Err(e) => {
                    notes.push(format!("analytic estimate unavailable: {e}"));
                    (None, Some(lyapunov(p)), None)
                }
            }
        }
        OscillatorKind::Harmonic => {
            let l = opts.length.unwrap_or(2.0 * p.sigma);
            (t_dec_harmonic_from(&curve.diffusion.series, l)?, None, None)
        }
    };
    Ok(DecoherenceReport {
        case: c,
        gamma_series: curve.gamma.clone(),
        t_d_threshold,
        t_d_analytic,
        lyapunov: lyap,
        sigma_c,
        notes,
    })
}

/// Coupling calibration against a target threshold decoherence time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationTarget {
    pub case: CaseId,
    pub t_target: f64,
    pub epsilon: f64,
    /// Sampling grid; `None` means `2 · t_target` with the default points.
    pub grid: Option<Grid>,
    pub bracket: (f64, f64),
    /// Accepted relative miss of the target.
    pub rel_tol: f64,
    pub gamma: GammaOptions,
}

impl CalibrationTarget {
    pub fn new(case: CaseId, t_target: f64) -> Self {
        Self {
            case,
            t_target,
            epsilon: DEFAULT_EPSILON,
            grid: None,
            bracket: (1e-4, 10.0),
            rel_tol: 0.01,
            gamma: GammaOptions::default(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
            .unwrap_or_else(|| Grid::with_default_points(2.0 * self.t_target))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub lambda: f64,
    pub t_d: f64,
    pub iterations: usize,
}

/// `−ln Γ` per unit `λ²`, on which every coupling's threshold time can be
/// read off since `D ∝ λ²`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitExponent {
    pub exponent: TimeSeries,
}

impl UnitExponent {
    pub fn new(grid: Grid, p: &ModelParams, c: CaseId, opts: &GammaOptions) -> Result<Self> {
        let unit = p.with_lambda(1.0);
        let d = diffusion_series(grid.horizon, grid.points, &unit, c, opts.method, &opts.diffusion)?;
        Ok(Self {
            exponent: cumulative_integral(&d.series).map(|v| opts.separation * v),
        })
    }

    /// Threshold time of `Γ = exp(−λ² F)` at level `epsilon`.
    pub fn threshold_time(&self, lambda: f64, epsilon: f64) -> Option<f64> {
        let level = -epsilon.ln() / (lambda * lambda);
        if self.exponent.values()[0] >= level {
            return Some(self.exponent.t0());
        }
        find_first_crossing(&self.exponent, level, Direction::Rising)
    }

    pub fn gamma(&self, lambda: f64) -> TimeSeries {
        let l2 = lambda * lambda;
        self.exponent.map(|f| (-l2 * f).exp())
    }
}

/// Bisection in `ln λ` for `t_D(λ) = t_target` within `rel_tol`.
pub fn calibrate_lambda(p: &ModelParams, target: &CalibrationTarget) -> Result<Calibration> {
    check_epsilon(target.epsilon)?;
    if !(target.t_target > 0.0) {
        return Err(Error::InvalidParameter {
            field: "target",
            reason: format!("must be positive, got {}", target.t_target),
        });
    }
    let (lo0, hi0) = target.bracket;
    if !(lo0 > 0.0 && hi0 > lo0) {
        return Err(Error::domain("calibration bracket must satisfy 0 < lo < hi"));
    }
    let unit = UnitExponent::new(target.grid(), p, target.case, &target.gamma)?;
    let t_of = |l: f64| unit.threshold_time(l, target.epsilon);
    let goal = target.t_target;
    let tol = target.rel_tol * goal;
    let bracket_error = || Error::CalibrationBracket {
        target: goal,
        lo_lambda: lo0,
        lo_time: t_of(lo0),
        hi_lambda: hi0,
        hi_time: t_of(hi0),
    };
    // Larger λ decoheres sooner; None means beyond the horizon.
    let late = |t: Option<f64>| t.is_none_or(|t| t > goal);
    if late(t_of(hi0)) && t_of(hi0).is_none_or(|t| t - goal > tol) {
        return Err(bracket_error());
    }
    if let Some(t) = t_of(lo0) {
        if goal - t > tol {
            return Err(bracket_error());
        }
    }
    let (mut lo, mut hi) = (lo0.ln(), hi0.ln());
    for iterations in 1..=200 {
        let mid = 0.5 * (lo + hi);
        let lambda = mid.exp();
        let t = t_of(lambda);
        if let Some(t_d) = t {
            if (t_d - goal).abs() <= tol {
                return Ok(Calibration {
                    lambda,
                    t_d,
                    iterations,
                });
            }
        }
        if late(t) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Err(bracket_error())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_starts_at_one() {
        for c in CaseId::ALL {
            let g = gamma_factor(2.0, 64, &ModelParams::default().with_gamma_kt(1.0), c).unwrap();
            assert_eq!(g.values()[0], 1.0);
        }
    }

    #[test]
    fn threshold_of_gaussian() {
        let g = TimeSeries::sample(0.0, 4.0, 401, |t| (-t * t).exp()).unwrap();
        let t = t_dec_threshold(&g, (-4.0f64).exp()).unwrap().unwrap();
        assert!((t - 2.0).abs() < g.dt());
        assert!(t_dec_threshold(&g, 0.0).is_err());
        let flat = TimeSeries::new(0.0, 1.0, vec![1.0, 0.9, 0.8]).unwrap();
        assert_eq!(t_dec_threshold(&flat, 0.5).unwrap(), None);
    }

    #[test]
    fn constant_diffusion_harmonic_time() {
        let d = TimeSeries::new(0.0, 0.001, vec![2.0; 4001]).unwrap();
        let t = t_dec_harmonic_from(&d, 0.5).unwrap().unwrap();
        assert!((t - 2.0).abs() < 1e-9);
    }

    #[test]
    fn sigma_c_scales_as_root() {
        let p = ModelParams::default();
        let a = estimate_from(&p, 1e-3, None, TMaxPolicy::CriticalTime, None).unwrap();
        let b = estimate_from(&p, 4e-3, None, TMaxPolicy::CriticalTime, None).unwrap();
        assert!((b.sigma_c / a.sigma_c - 2.0).abs() < 1e-14);
        assert_eq!(a.lyapunov, 2.0);
        assert!((a.t_d - 2.0 * a.t_c).abs() < 1e-15);
        assert!(estimate_from(&p, 0.0, None, TMaxPolicy::CriticalTime, None).is_err());
    }

    #[test]
    fn calibration_hits_target() {
        let p = ModelParams::default().with_gamma_kt(1.0);
        let target = CalibrationTarget::new(CaseId::D, 3.0);
        let cal = calibrate_lambda(&p, &target).unwrap();
        assert!((cal.t_d - 3.0).abs() <= 0.03);
        let g = gamma_factor(6.0, DEFAULT_GRID_POINTS, &p.with_lambda(cal.lambda), CaseId::D).unwrap();
        let t = t_dec_threshold(&g, DEFAULT_EPSILON).unwrap().unwrap();
        // Interpolation is linear in Γ on one side and in −ln Γ on the other.
        assert!((t - cal.t_d).abs() < g.dt());
        let longer = calibrate_lambda(&p, &CalibrationTarget::new(CaseId::D, 6.0)).unwrap();
        assert!(longer.lambda < cal.lambda);
    }

    #[test]
    fn calibration_floor() {
        let p = ModelParams::default();
        let target = CalibrationTarget::new(CaseId::D, 1e-3);
        assert!(matches!(
            calibrate_lambda(&p, &target),
            Err(Error::CalibrationBracket { .. })
        ));
    }

    #[test]
    fn wrong_case_kind() {
        let p = ModelParams::default();
        let opts = UnstableOptions::new(Grid::new(1.0, 8));
        assert!(matches!(
            t_dec_unstable(&p, CaseId::A, &opts),
            Err(Error::UnsupportedCase { .. })
        ));
        assert!(t_dec_harmonic(&p, CaseId::D, None, Grid::new(1.0, 8), &GammaOptions::default()).is_err());
    }
}
