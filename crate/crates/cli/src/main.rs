use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use decoherence_cli::config::parse_cases;
use decoherence_cli::{
    cmd_calibrate_lambda, cmd_diffusion, cmd_gamma, cmd_reproduce_figure, CalibrateConfig, CliError,
    FigureOptions, MethodChoice, Settings,
};
use decoherence_core::diffusion::PrefactorScope;
use decoherence_core::model::{CaseId, ParamOverrides};

#[derive(Parser)]
#[command(
    name = "decohere",
    version,
    about = "Diffusion coefficients and decoherence factors for the four oscillator cases"
)]
struct Cli {
    /// Flat JSON file with model and run keys; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    horizon: Option<f64>,
    #[arg(long, global = true)]
    points: Option<usize>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// closed_form, quadrature or both.
    #[arg(long, global = true)]
    method: Option<String>,
    /// both or first_only.
    #[arg(long, global = true)]
    prefactor_scope: Option<String>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, global = true)]
    omega: Option<f64>,
    #[arg(long, global = true)]
    omega_b: Option<f64>,
    #[arg(long, global = true)]
    lambda: Option<f64>,
    #[arg(long, global = true)]
    gamma0: Option<f64>,
    #[arg(long, global = true)]
    kt: Option<f64>,
    /// Sets the product γ₀k_BT, keeping γ₀ when positive.
    #[arg(long, global = true)]
    gamma_kt: Option<f64>,
    #[arg(long, global = true)]
    sigma: Option<f64>,
    #[arg(long, global = true)]
    sigma_a: Option<f64>,
    #[arg(long, global = true)]
    sigma_p0: Option<f64>,
    #[arg(long, global = true)]
    hbar: Option<f64>,
    #[arg(long, global = true)]
    mass_a: Option<f64>,
    #[arg(long, global = true)]
    mass_b: Option<f64>,
    #[arg(long, global = true)]
    cutoff: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Writes `t,case,method,D`.
    Diffusion {
        #[arg(long)]
        cases: Option<String>,
        #[arg(long, default_value = "diffusion.csv")]
        out: PathBuf,
    },
    /// Writes `t,case,Gamma` and a JSON sidecar of decoherence times.
    Gamma {
        #[arg(long)]
        cases: Option<String>,
        #[arg(long, default_value = "gamma.csv")]
        out: PathBuf,
    },
    /// Writes one CSV per panel of figure 1-4.
    ReproduceFigure {
        #[arg(long)]
        id: u8,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Finds λ so that `t_D(case)` hits the target, then prints every case.
    CalibrateLambda {
        #[arg(long)]
        case: String,
        #[arg(long)]
        target: f64,
        /// Also write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn flag_settings(cli: &Cli, cases: Option<&str>) -> Result<Settings, CliError> {
    let p = &cli.params;
    Ok(Settings {
        params: ParamOverrides {
            omega: p.omega,
            omega_b: p.omega_b,
            lambda: p.lambda,
            gamma0: p.gamma0,
            kt: p.kt,
            sigma: p.sigma,
            sigma_a: p.sigma_a,
            sigma_p0: p.sigma_p0,
            hbar: p.hbar,
            mass_a: p.mass_a,
            mass_b: p.mass_b,
            cutoff: p.cutoff,
        },
        gamma_kt: p.gamma_kt,
        cases: cases.map(parse_cases).transpose()?,
        horizon: cli.horizon,
        points: cli.points,
        epsilon: cli.epsilon,
        method: cli.method.as_deref().map(str::parse).transpose()?,
        scope: cli
            .prefactor_scope
            .as_deref()
            .map(|s| {
                s.parse::<PrefactorScope>()
                    .map_err(|e| CliError::Usage(e.to_string()))
            })
            .transpose()?,
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cases = match &cli.command {
        Command::Diffusion { cases, .. } | Command::Gamma { cases, .. } => cases.clone(),
        _ => None,
    };
    let file = match &cli.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    let settings = file.merge(flag_settings(&cli, cases.as_deref())?);

    match &cli.command {
        Command::Diffusion { out, .. } => {
            let config = settings.run_config(out)?;
            let summary = cmd_diffusion(&config)?;
            eprintln!(
                "wrote {} rows to {} ({} gaps)",
                summary.rows,
                out.display(),
                summary.gaps
            );
            if let Some(gap) = summary.max_relative_gap {
                eprintln!("max relative gap closed_form vs quadrature: {gap:e}");
            }
        }
        Command::Gamma { out, .. } => {
            let config = settings.run_config(out)?;
            let result = cmd_gamma(&config)?;
            eprintln!("wrote {} and its sidecar", out.display());
            for r in &result.reports {
                for note in &r.notes {
                    eprintln!("case {}: {note}", r.case);
                }
            }
        }
        Command::ReproduceFigure { id, out } => {
            let opts = FigureOptions {
                base: settings.model_params(),
                points: settings.points.unwrap_or(FigureOptions::default().points),
                method: settings.method.unwrap_or(MethodChoice::ClosedForm),
                scope: settings.scope.unwrap_or_default(),
            };
            for path in cmd_reproduce_figure(*id, out, &opts)? {
                println!("{}", path.display());
            }
        }
        Command::CalibrateLambda { case, target, out } => {
            let case: CaseId = case
                .parse()
                .map_err(|e: decoherence_core::Error| CliError::Usage(e.to_string()))?;
            let defaults = settings.run_config("unused")?;
            let cfg = CalibrateConfig {
                params: defaults.params,
                case,
                target: *target,
                epsilon: defaults.epsilon,
                horizon: settings.horizon,
                points: defaults.points,
                method: defaults.method.single()?,
                scope: defaults.scope,
            };
            let report = cmd_calibrate_lambda(&cfg)?;
            print!("{}", report.render());
            if let Some(path) = out {
                let json = serde_json::to_string_pretty(&report).expect("report is plain data");
                decoherence_cli::output::write_atomic(path, &(json + "\n"))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("decohere: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
