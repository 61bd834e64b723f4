//! Library half of the `decohere` binary: configuration, the commands and
//! the figure datasets, usable without spawning the process.

pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod output;

pub use commands::{
    cmd_calibrate_lambda, cmd_diffusion, cmd_gamma, CalibrateConfig, CalibrationReport, DiffusionSummary,
    GammaOutput,
};
pub use config::{MethodChoice, RunConfig, Settings};
pub use error::{CliError, Result};
pub use figures::{cmd_reproduce_figure, FigureOptions, FigureSpec};
