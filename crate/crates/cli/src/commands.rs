//! The `diffusion`, `gamma` and `calibrate-lambda` commands.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use decoherence_core::decoherence::{
    calibrate_lambda, gamma_curve, report_from_curve, CalibrationTarget, DecoherenceReport, Grid,
    ReportOptions,
};
use decoherence_core::diffusion::{diffusion_series, DiffusionSeries, Method, PrefactorScope};
use decoherence_core::model::{CaseId, ModelParams};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{diffusion_rows, field, gamma_rows, write_atomic, DIFFUSION_HEADER, GAMMA_HEADER};

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionSummary {
    pub rows: usize,
    pub gaps: usize,
    /// Largest `|D_closed − D_quadrature| / max(|D_closed|, 1e−12)`, when
    /// both routes ran.
    pub max_relative_gap: Option<f64>,
}

fn relative_gap(series: &[DiffusionSeries]) -> Option<f64> {
    let mut worst = None::<f64>;
    for pair in series.windows(2) {
        let (x, y) = (&pair[0], &pair[1]);
        if x.case != y.case || x.method != Method::ClosedForm || y.method != Method::Quadrature {
            continue;
        }
        for (a, b) in x.series.values().iter().zip(y.series.values()) {
            if a.is_finite() && b.is_finite() {
                let r = (a - b).abs() / a.abs().max(1e-12);
                worst = Some(worst.map_or(r, |w| w.max(r)));
            }
        }
    }
    worst
}

/// Renders the diffusion CSV without writing it.
pub fn diffusion_table(config: &RunConfig) -> Result<(String, DiffusionSummary)> {
    config.validate()?;
    let opts = config.diffusion_options();
    let mut series = Vec::new();
    for &c in &config.cases {
        for &m in config.method.methods() {
            series.push(diffusion_series(
                config.horizon,
                config.points,
                &config.params,
                c,
                m,
                &opts,
            )?);
        }
    }
    let mut csv = format!("{DIFFUSION_HEADER}\n");
    diffusion_rows(&mut csv, &series);
    let summary = DiffusionSummary {
        rows: series.iter().map(|s| s.series.len()).sum(),
        gaps: series.iter().map(|s| s.gaps.len()).sum(),
        max_relative_gap: relative_gap(&series),
    };
    Ok((csv, summary))
}

pub fn cmd_diffusion(config: &RunConfig) -> Result<DiffusionSummary> {
    let (csv, summary) = diffusion_table(config)?;
    write_atomic(&config.output, &csv)?;
    Ok(summary)
}

/// One case of the `gamma` sidecar; inapplicable fields are `null`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SidecarEntry {
    pub t_threshold: Option<f64>,
    pub t_analytic: Option<f64>,
    pub sigma_c: Option<f64>,
    pub lyapunov: Option<f64>,
}

impl From<&DecoherenceReport> for SidecarEntry {
    fn from(r: &DecoherenceReport) -> Self {
        let finite = |x: Option<f64>| x.filter(|v| v.is_finite());
        Self {
            t_threshold: finite(r.t_d_threshold),
            t_analytic: finite(r.t_d_analytic),
            sigma_c: finite(r.sigma_c),
            lyapunov: finite(r.lyapunov),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GammaOutput {
    pub csv: String,
    pub sidecar: BTreeMap<String, SidecarEntry>,
    pub reports: Vec<DecoherenceReport>,
}

impl GammaOutput {
    pub fn sidecar_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.sidecar).expect("sidecar is plain data");
        s.push('\n');
        s
    }
}

/// `<output>` with its extension replaced by `json`.
pub fn sidecar_path(output: &Path) -> PathBuf {
    output.with_extension("json")
}

pub fn gamma_table(config: &RunConfig) -> Result<GammaOutput> {
    config.validate()?;
    let method = config.method.single()?;
    let grid = Grid::new(config.horizon, config.points);
    let ropts = ReportOptions {
        epsilon: config.epsilon,
        gamma: config.gamma_options(method),
        ..ReportOptions::new(grid)
    };
    let mut csv = format!("{GAMMA_HEADER}\n");
    let mut sidecar = BTreeMap::new();
    let mut reports = Vec::new();
    for &c in &config.cases {
        let curve = gamma_curve(grid, &config.params, c, &ropts.gamma)?;
        let report = report_from_curve(&config.params, c, &curve, &ropts)?;
        gamma_rows(&mut csv, c, &curve.gamma);
        sidecar.insert(c.to_string(), SidecarEntry::from(&report));
        reports.push(report);
    }
    Ok(GammaOutput {
        csv,
        sidecar,
        reports,
    })
}

/// Writes the `Γ` CSV and its JSON sidecar next to it.
pub fn cmd_gamma(config: &RunConfig) -> Result<GammaOutput> {
    let out = gamma_table(config)?;
    write_atomic(&config.output, &out.csv)?;
    write_atomic(&sidecar_path(&config.output), &out.sidecar_json())?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrateConfig {
    pub params: ModelParams,
    pub case: CaseId,
    pub target: f64,
    pub epsilon: f64,
    /// `None` means twice the target.
    pub horizon: Option<f64>,
    pub points: usize,
    pub method: Method,
    pub scope: PrefactorScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseTimes {
    pub case: CaseId,
    pub t_threshold: Option<f64>,
    pub t_analytic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationReport {
    pub case: CaseId,
    pub target: f64,
    pub lambda: f64,
    pub t_d: f64,
    pub iterations: usize,
    pub table: Vec<CaseTimes>,
}

impl CalibrationReport {
    pub fn times(&self, c: CaseId) -> Option<&CaseTimes> {
        self.table.iter().find(|r| r.case == c)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lambda = {}", self.lambda);
        let _ = writeln!(
            s,
            "t_D({}) = {} (target {}, {} iterations)",
            self.case, self.t_d, self.target, self.iterations
        );
        let _ = writeln!(s, "case,t_threshold,t_analytic");
        for r in &self.table {
            let opt = |x: Option<f64>| x.map_or(String::new(), field);
            let _ = writeln!(s, "{},{},{}", r.case, opt(r.t_threshold), opt(r.t_analytic));
        }
        s
    }
}

/// Finds λ with `t_D(case) = target`, then tabulates every case at it.
pub fn cmd_calibrate_lambda(cfg: &CalibrateConfig) -> Result<CalibrationReport> {
    if cfg.points < 2 {
        return Err(CliError::usage(format!(
            "points must be >= 2, got {}",
            cfg.points
        )));
    }
    let horizon = cfg.horizon.unwrap_or(2.0 * cfg.target);
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(CliError::usage(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    let grid = Grid::new(horizon, cfg.points);
    let mut target = CalibrationTarget::new(cfg.case, cfg.target);
    target.epsilon = cfg.epsilon;
    target.grid = Some(grid);
    target.gamma.method = cfg.method;
    target.gamma.diffusion.scope = cfg.scope;
    let cal = calibrate_lambda(&cfg.params, &target)?;

    let at = cfg.params.with_lambda(cal.lambda);
    let ropts = ReportOptions {
        epsilon: cfg.epsilon,
        gamma: target.gamma,
        ..ReportOptions::new(grid)
    };
    let mut table = Vec::new();
    for c in CaseId::ALL {
        let curve = gamma_curve(grid, &at, c, &ropts.gamma)?;
        let r = report_from_curve(&at, c, &curve, &ropts)?;
        table.push(CaseTimes {
            case: c,
            t_threshold: r.t_d_threshold,
            t_analytic: r.t_d_analytic.filter(|v| v.is_finite()),
        });
    }
    Ok(CalibrationReport {
        case: cfg.case,
        target: cfg.target,
        lambda: cal.lambda,
        t_d: cal.t_d,
        iterations: cal.iterations,
        table,
    })
}
