//! Browser demo. Each operation takes a JSON request and returns a JSON
//! response; the `wasm32` build exports them to JavaScript.

use std::collections::BTreeMap;

use decoherence_core::decoherence::{
    calibrate_lambda, gamma_curve, report_from_curve, CalibrationTarget, Grid, ReportOptions, DEFAULT_EPSILON,
};
use decoherence_core::diffusion::{diffusion_series, DiffusionOptions, Method};
use decoherence_core::model::{CaseId, ModelParams, ParamOverrides};
use decoherence_core::numerics::TimeSeries;
use serde::{Deserialize, Serialize};

/// Largest grid a request may ask for.
pub const MAX_POINTS: usize = 8193;

#[derive(Debug, thiserror::Error)]
pub enum DemoError {
    #[error("bad request: {0}")]
    Request(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Numerical(#[from] decoherence_core::Error),
}

pub type Result<T, E = DemoError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    #[serde(default)]
    pub params: ParamOverrides,
    /// Applied after `params`.
    #[serde(default, rename = "gamma_kT")]
    pub gamma_kt: Option<f64>,
    #[serde(default = "default_horizon")]
    pub horizon: f64,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "all_cases")]
    pub cases: Vec<CaseId>,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Calibration only.
    #[serde(default)]
    pub case: Option<CaseId>,
    /// Calibration only.
    #[serde(default)]
    pub target: Option<f64>,
}

fn default_horizon() -> f64 {
    3.0
}

fn default_points() -> usize {
    1025
}

fn all_cases() -> Vec<CaseId> {
    CaseId::ALL.to_vec()
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

impl Request {
    pub fn parse(json: &str) -> Result<Self> {
        let r: Request = serde_json::from_str(json)?;
        if !(2..=MAX_POINTS).contains(&r.points) {
            return Err(DemoError::Invalid(format!(
                "points must lie in 2..={MAX_POINTS}, got {}",
                r.points
            )));
        }
        if !(r.horizon > 0.0 && r.horizon.is_finite()) {
            return Err(DemoError::Invalid(format!(
                "horizon must be positive, got {}",
                r.horizon
            )));
        }
        Ok(r)
    }

    pub fn model(&self) -> Result<ModelParams> {
        let p = ModelParams::from(self.params);
        let p = self.gamma_kt.map_or(p, |g| p.with_gamma_kt(g));
        p.check()?;
        Ok(p)
    }

    fn grid(&self) -> Grid {
        Grid::new(self.horizon, self.points)
    }
}

/// Curves share the time axis `t`; failed points are `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curves {
    pub t: Vec<f64>,
    pub curves: BTreeMap<CaseId, Vec<Option<f64>>>,
}

impl Curves {
    fn new(grid: Grid) -> Self {
        let dt = grid.horizon / (grid.points - 1) as f64;
        Self {
            t: (0..grid.points).map(|k| k as f64 * dt).collect(),
            curves: BTreeMap::new(),
        }
    }

    fn insert(&mut self, c: CaseId, s: &TimeSeries) {
        let v = s.values().iter().map(|x| x.is_finite().then_some(*x)).collect();
        self.curves.insert(c, v);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Times {
    pub threshold: Option<f64>,
    pub analytic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaResponse {
    #[serde(flatten)]
    pub curves: Curves,
    pub times: BTreeMap<CaseId, Times>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationResponse {
    pub case: CaseId,
    pub lambda: f64,
    pub t_d: f64,
    pub iterations: usize,
    pub times: BTreeMap<CaseId, Times>,
}

pub fn diffusion_curves(req: &Request) -> Result<Curves> {
    let p = req.model()?;
    let grid = req.grid();
    let mut out = Curves::new(grid);
    for &c in &req.cases {
        let d = diffusion_series(
            grid.horizon,
            grid.points,
            &p,
            c,
            Method::ClosedForm,
            &DiffusionOptions::default(),
        )?;
        out.insert(c, &d.series);
    }
    Ok(out)
}

fn times_at(
    p: &ModelParams,
    cases: &[CaseId],
    ropts: &ReportOptions,
    mut curves: Option<&mut Curves>,
) -> Result<BTreeMap<CaseId, Times>> {
    let mut times = BTreeMap::new();
    for &c in cases {
        let curve = gamma_curve(ropts.grid, p, c, &ropts.gamma)?;
        let r = report_from_curve(p, c, &curve, ropts)?;
        if let Some(out) = curves.as_deref_mut() {
            out.insert(c, &curve.gamma);
        }
        times.insert(
            c,
            Times {
                threshold: r.t_d_threshold,
                analytic: r.t_d_analytic.filter(|v| v.is_finite()),
            },
        );
    }
    Ok(times)
}

pub fn gamma_curves(req: &Request) -> Result<GammaResponse> {
    let p = req.model()?;
    let ropts = ReportOptions {
        epsilon: req.epsilon,
        ..ReportOptions::new(req.grid())
    };
    let mut curves = Curves::new(req.grid());
    let times = times_at(&p, &req.cases, &ropts, Some(&mut curves))?;
    Ok(GammaResponse { curves, times })
}

/// Finds λ with `t_D(case) = target` on the request grid.
pub fn calibrate(req: &Request) -> Result<CalibrationResponse> {
    let p = req.model()?;
    let (Some(case), Some(t)) = (req.case, req.target) else {
        return Err(DemoError::Invalid("calibration needs case and target".into()));
    };
    let mut target = CalibrationTarget::new(case, t);
    target.epsilon = req.epsilon;
    target.grid = Some(req.grid());
    let cal = calibrate_lambda(&p, &target)?;
    let ropts = ReportOptions {
        epsilon: req.epsilon,
        ..ReportOptions::new(req.grid())
    };
    let times = times_at(&p.with_lambda(cal.lambda), &CaseId::ALL, &ropts, None)?;
    Ok(CalibrationResponse {
        case,
        lambda: cal.lambda,
        t_d: cal.t_d,
        iterations: cal.iterations,
        times,
    })
}

fn run<T: Serialize>(json: &str, op: fn(&Request) -> Result<T>) -> Result<String> {
    let req = Request::parse(json)?;
    Ok(serde_json::to_string(&op(&req)?)?)
}

pub fn diffusion_json(json: &str) -> Result<String> {
    run(json, diffusion_curves)
}

pub fn gamma_json(json: &str) -> Result<String> {
    run(json, gamma_curves)
}

pub fn calibrate_json(json: &str) -> Result<String> {
    run(json, calibrate)
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    fn js(r: super::Result<String>) -> Result<String, JsValue> {
        r.map_err(|e| JsValue::from_str(&e.to_string()))
    }

    #[wasm_bindgen]
    pub fn diffusion(request: &str) -> Result<String, JsValue> {
        js(super::diffusion_json(request))
    }

    #[wasm_bindgen]
    pub fn gamma(request: &str) -> Result<String, JsValue> {
        js(super::gamma_json(request))
    }

    #[wasm_bindgen]
    pub fn calibrate(request: &str) -> Result<String, JsValue> {
        js(super::calibrate_json(request))
    }
}
