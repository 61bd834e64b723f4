//! Numerical primitives: adaptive Gauss-Kronrod integration, cumulative
//! trapezoid integration on uniform grids, and threshold crossings.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of grid points for sampled curves.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Samples on a uniform grid `t_k = t0 + k dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    t0: f64,
    dt: f64,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::domain(format!("time step must be positive, got {dt}")));
        }
        if !t0.is_finite() {
            return Err(Error::domain("series origin must be finite"));
        }
        if values.is_empty() {
            return Err(Error::domain("series must hold at least one sample"));
        }
        Ok(Self { t0, dt, values })
    }

    /// Samples `f` at `n` points spanning `[t0, t_end]` inclusive.
    pub fn sample<F: FnMut(f64) -> f64>(t0: f64, t_end: f64, n: usize, mut f: F) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("need at least two grid points"));
        }
        let dt = (t_end - t0) / (n - 1) as f64;
        let values = (0..n).map(|k| f(t0 + k as f64 * dt)).collect();
        Self::new(t0, dt, values)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.time(self.values.len() - 1)
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|k| self.time(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times().zip(self.values.iter().copied())
    }

    /// Same grid, values mapped pointwise.
    pub fn map<F: FnMut(f64) -> f64>(&self, f: F) -> Self {
        Self {
            t0: self.t0,
            dt: self.dt,
            values: self.values.iter().copied().map(f).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.map(|v| factor * v)
    }
}

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-300,
            rel_tol: 1e-12,
            max_subdivisions: 400,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::domain("max_subdivisions must be at least one"));
        }
        Ok(())
    }
}

/// Outcome of a successful adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

// Gauss-Kronrod 7/15 pair, abscissae in decreasing order (QUADPACK layout):
// odd indices are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    roundoff: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_segment<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut f1 = [0.0; 7];
    let mut f2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = f(center - dx);
        let hi = f(center + dx);
        f1[j] = lo;
        f2[j] = hi;
        res_k += WGK[j] * (lo + hi);
        res_abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (lo + hi);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(roundoff);
    }
    Segment {
        a,
        b,
        value,
        error,
        roundoff,
    }
}

/// Adaptive Gauss-Kronrod (7/15) integration of `f` over `[a, b]`.
///
/// Converges when the summed error estimate drops below
/// `max(abs_tol, rel_tol |I|)`, or when every remaining segment sits at its
/// rounding floor.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature> {
    if !(a <= b) {
        return Err(Error::domain(format!(
            "integration limits out of order: [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let first = kronrod_segment(&f, a, b);
    let mut evaluations = 15;
    let mut value = first.value;
    let mut error = first.error;
    let mut roundoff = first.roundoff;
    if !value.is_finite() {
        return Err(Error::QuadratureNonConvergence {
            estimate: value,
            residual: error,
            subdivisions: 1,
        });
    }
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 1;
    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * value.abs());
        if error <= tol || error <= 2.0 * roundoff {
            return Ok(Quadrature {
                value,
                error,
                evaluations,
            });
        }
        if subdivisions >= spec.max_subdivisions {
            break;
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Segment cannot be split further in floating point.
            heap.push(worst);
            break;
        }
        let left = kronrod_segment(&f, worst.a, mid);
        let right = kronrod_segment(&f, mid, worst.b);
        evaluations += 30;
        subdivisions += 1;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        roundoff += left.roundoff + right.roundoff - worst.roundoff;
        if !value.is_finite() {
            break;
        }
        heap.push(left);
        heap.push(right);
    }
    // Recompute sums from scratch to shed accumulated update drift.
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let error: f64 = heap.iter().map(|s| s.error).sum();
    let tol = spec.abs_tol.max(spec.rel_tol * value.abs());
    if value.is_finite() && error <= tol {
        return Ok(Quadrature {
            value,
            error,
            evaluations,
        });
    }
    Err(Error::QuadratureNonConvergence {
        estimate: value,
        residual: error,
        subdivisions,
    })
}

/// Composite trapezoid running integral on the same grid, starting at zero.
/// A gap (NaN) poisons every later value.
pub fn cumulative_integral(s: &TimeSeries) -> TimeSeries {
    let half_dt = 0.5 * s.dt;
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(s.len());
    out.push(0.0);
    for w in s.values.windows(2) {
        acc += half_dt * (w[0] + w[1]);
        out.push(acc);
    }
    TimeSeries {
        t0: s.t0,
        dt: s.dt,
        values: out,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Falling,
    Rising,
}

/// First time the series crosses `threshold` in `direction`, linearly
/// interpolated between the bracketing samples. Pairs touching a gap are
/// skipped.
pub fn find_first_crossing(s: &TimeSeries, threshold: f64, direction: Direction) -> Option<f64> {
    for (k, w) in s.values.windows(2).enumerate() {
        let (lo, hi) = (w[0], w[1]);
        if !lo.is_finite() || !hi.is_finite() {
            continue;
        }
        let crosses = match direction {
            Direction::Falling => lo > threshold && hi <= threshold,
            Direction::Rising => lo < threshold && hi >= threshold,
        };
        if crosses {
            let frac = (lo - threshold) / (lo - hi);
            return Some(s.time(k) + frac * s.dt);
        }
    }
    None
}

/// Central first difference on interior points; endpoints are one-sided.
pub fn derivative(s: &TimeSeries) -> TimeSeries {
    let n = s.len();
    let v = &s.values;
    let mut out = vec![0.0; n];
    if n >= 2 {
        out[0] = (v[1] - v[0]) / s.dt;
        out[n - 1] = (v[n - 1] - v[n - 2]) / s.dt;
        for k in 1..n - 1 {
            out[k] = (v[k + 1] - v[k - 1]) / (2.0 * s.dt);
        }
    }
    TimeSeries {
        t0: s.t0,
        dt: s.dt,
        values: out,
    }
}
