//! Parameter grids of the four published figures and their CSV datasets.

use std::path::{Path, PathBuf};

use decoherence_core::decoherence::{gamma_curve, Grid};
use decoherence_core::diffusion::{diffusion_series, DiffusionOptions, PrefactorScope};
use decoherence_core::model::{CaseId, ModelParams};
use decoherence_core::numerics::DEFAULT_GRID_POINTS;
use serde::Serialize;

use crate::config::MethodChoice;
use crate::error::{CliError, Result};
use crate::output::{diffusion_rows, gamma_rows, write_atomic, DIFFUSION_HEADER, GAMMA_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Diffusion,
    Gamma,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PanelSpec {
    pub name: String,
    pub omega: f64,
    pub omega_b: f64,
    pub sigma: f64,
    pub gamma_kt: f64,
    /// The panel spans `ω t ∈ [0, omega_t]`.
    pub omega_t: f64,
    pub cases: Vec<CaseId>,
}

impl PanelSpec {
    pub fn horizon(&self) -> f64 {
        self.omega_t / self.omega
    }

    /// `base` with the panel's frequencies, width and bath product.
    pub fn params(&self, base: &ModelParams) -> ModelParams {
        let mut p = base.with_frequencies(self.omega, self.omega_b);
        p.sigma = self.sigma;
        p.with_gamma_kt(self.gamma_kt)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureSpec {
    pub id: u8,
    pub quantity: Quantity,
    pub panels: Vec<PanelSpec>,
}

const SIGMA: f64 = 0.01;

/// Rows by `γ₀k_BT`, columns by frequency set, as in the first figure.
fn six_panels() -> Vec<PanelSpec> {
    let rows = [("top", 0.0, 3.0), ("middle", 1.0, 3.0), ("bottom", 100.0, 2.0)];
    let cols = [("left", 1.0, 1.0), ("right", 5.0, 1.0)];
    let mut out = Vec::new();
    for (row, gamma_kt, omega_t) in rows {
        for (col, omega, omega_b) in cols {
            out.push(PanelSpec {
                name: format!("{row}_{col}"),
                omega,
                omega_b,
                sigma: SIGMA,
                gamma_kt,
                omega_t,
                cases: CaseId::ALL.to_vec(),
            });
        }
    }
    out
}

fn large_time(omega_t: f64) -> Vec<PanelSpec> {
    vec![PanelSpec {
        name: "main".into(),
        omega: 5.0,
        omega_b: 1.0,
        sigma: SIGMA,
        gamma_kt: 100.0,
        omega_t,
        cases: vec![CaseId::A, CaseId::C],
    }]
}

impl FigureSpec {
    pub fn new(id: u8) -> Result<Self> {
        let (quantity, panels) = match id {
            1 => (Quantity::Diffusion, six_panels()),
            2 => (Quantity::Diffusion, large_time(12.0)),
            3 => (Quantity::Gamma, six_panels()),
            4 => (Quantity::Gamma, large_time(30.0)),
            other => return Err(CliError::usage(format!("figure id must be 1..4, got {other}"))),
        };
        Ok(Self { id, quantity, panels })
    }

    pub fn file_name(&self, panel: &PanelSpec) -> String {
        format!("fig{}_{}.csv", self.id, panel.name)
    }

    pub fn header(&self) -> &'static str {
        match self.quantity {
            Quantity::Diffusion => DIFFUSION_HEADER,
            Quantity::Gamma => GAMMA_HEADER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOptions {
    /// Coupling, masses, `ħ` and cutoff; the panel fixes the rest.
    pub base: ModelParams,
    pub points: usize,
    /// `Γ` panels use the first route of the choice.
    pub method: MethodChoice,
    pub scope: PrefactorScope,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            base: ModelParams::default(),
            points: DEFAULT_GRID_POINTS,
            method: MethodChoice::ClosedForm,
            scope: PrefactorScope::Both,
        }
    }
}

/// Renders one panel's CSV.
pub fn panel_csv(fig: &FigureSpec, panel: &PanelSpec, opts: &FigureOptions) -> Result<String> {
    if opts.points < 2 {
        return Err(CliError::usage(format!(
            "points must be >= 2, got {}",
            opts.points
        )));
    }
    let p = panel.params(&opts.base);
    let dopts = DiffusionOptions {
        scope: opts.scope,
        ..DiffusionOptions::default()
    };
    let mut csv = format!("{}\n", fig.header());
    match fig.quantity {
        Quantity::Diffusion => {
            let mut series = Vec::new();
            for &c in &panel.cases {
                for &m in opts.method.methods() {
                    series.push(diffusion_series(panel.horizon(), opts.points, &p, c, m, &dopts)?);
                }
            }
            diffusion_rows(&mut csv, &series);
        }
        Quantity::Gamma => {
            let gopts = decoherence_core::decoherence::GammaOptions {
                method: opts.method.methods()[0],
                diffusion: dopts,
                ..Default::default()
            };
            let grid = Grid::new(panel.horizon(), opts.points);
            for &c in &panel.cases {
                gamma_rows(&mut csv, c, &gamma_curve(grid, &p, c, &gopts)?.gamma);
            }
        }
    }
    Ok(csv)
}

/// Writes `fig<id>_<panel>.csv` for every panel into `out_dir`.
pub fn cmd_reproduce_figure(id: u8, out_dir: &Path, opts: &FigureOptions) -> Result<Vec<PathBuf>> {
    let fig = FigureSpec::new(id)?;
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut written = Vec::new();
    for panel in &fig.panels {
        let csv = panel_csv(&fig, panel, opts)?;
        let path = out_dir.join(fig.file_name(panel));
        write_atomic(&path, &csv)?;
        written.push(path);
    }
    Ok(written)
}
