//! Run configuration: a flat JSON file merged under command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use decoherence_core::decoherence::{GammaOptions, DEFAULT_EPSILON};
use decoherence_core::diffusion::{DiffusionOptions, Method, PrefactorScope};
use decoherence_core::model::{CaseId, ModelParams, ParamOverrides};
use decoherence_core::numerics::DEFAULT_GRID_POINTS;
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

pub const DEFAULT_HORIZON: f64 = 3.0;

/// Evaluation route for the diffusion coefficient; `Both` emits each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    ClosedForm,
    Quadrature,
    Both,
}

impl MethodChoice {
    pub fn methods(self) -> &'static [Method] {
        match self {
            MethodChoice::ClosedForm => &[Method::ClosedForm],
            MethodChoice::Quadrature => &[Method::Quadrature],
            MethodChoice::Both => &Method::ALL,
        }
    }

    /// The route for commands that need exactly one.
    pub fn single(self) -> Result<Method> {
        match self {
            MethodChoice::ClosedForm => Ok(Method::ClosedForm),
            MethodChoice::Quadrature => Ok(Method::Quadrature),
            MethodChoice::Both => Err(CliError::usage("this command takes a single method")),
        }
    }
}

impl FromStr for MethodChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_form" => Ok(MethodChoice::ClosedForm),
            "quadrature" => Ok(MethodChoice::Quadrature),
            "both" => Ok(MethodChoice::Both),
            other => Err(CliError::usage(format!(
                "unknown method {other:?} (closed_form, quadrature, both)"
            ))),
        }
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodChoice::ClosedForm => "closed_form",
            MethodChoice::Quadrature => "quadrature",
            MethodChoice::Both => "both",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub cases: Vec<CaseId>,
    pub horizon: f64,
    pub points: usize,
    pub epsilon: f64,
    pub output: PathBuf,
    pub method: MethodChoice,
    pub scope: PrefactorScope,
}

impl RunConfig {
    pub fn new(params: ModelParams, output: impl Into<PathBuf>) -> Self {
        Self {
            params,
            cases: CaseId::ALL.to_vec(),
            horizon: DEFAULT_HORIZON,
            points: DEFAULT_GRID_POINTS,
            epsilon: DEFAULT_EPSILON,
            output: output.into(),
            method: MethodChoice::default(),
            scope: PrefactorScope::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(CliError::usage(format!(
                "points must be >= 2, got {}",
                self.points
            )));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(CliError::usage(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        if self.cases.is_empty() {
            return Err(CliError::usage("case list is empty"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(CliError::usage(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        self.params.check().map_err(|e| CliError::usage(e.to_string()))
    }

    pub fn diffusion_options(&self) -> DiffusionOptions {
        DiffusionOptions {
            scope: self.scope,
            ..DiffusionOptions::default()
        }
    }

    pub fn gamma_options(&self, method: Method) -> GammaOptions {
        GammaOptions {
            method,
            diffusion: self.diffusion_options(),
            ..GammaOptions::default()
        }
    }
}

/// Every setting a config file or the command line may supply.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub params: ParamOverrides,
    /// Applied after `params`, through [`ModelParams::with_gamma_kt`].
    pub gamma_kt: Option<f64>,
    pub cases: Option<Vec<CaseId>>,
    pub horizon: Option<f64>,
    pub points: Option<usize>,
    pub epsilon: Option<f64>,
    pub method: Option<MethodChoice>,
    pub scope: Option<PrefactorScope>,
}

impl Settings {
    /// Fields set in `other` win.
    pub fn merge(self, other: Settings) -> Settings {
        Settings {
            params: self.params.merge(other.params),
            gamma_kt: other.gamma_kt.or(self.gamma_kt),
            cases: other.cases.or(self.cases),
            horizon: other.horizon.or(self.horizon),
            points: other.points.or(self.points),
            epsilon: other.epsilon.or(self.epsilon),
            method: other.method.or(self.method),
            scope: other.scope.or(self.scope),
        }
    }

    pub fn from_file(path: &Path) -> Result<Settings> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Usage(msg) => CliError::usage(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Parses a flat JSON object. Model keys follow [`ParamOverrides`];
    /// run keys are `case`/`cases`, `gamma_kT`, `horizon`, `points`,
    /// `epsilon`, `method` and `prefactor_scope`.
    pub fn from_json(text: &str) -> Result<Settings> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid JSON: {e}")))?;
        let Value::Object(mut map) = value else {
            return Err(CliError::usage("config must be a JSON object"));
        };
        let mut out = Settings {
            gamma_kt: take_f64(&mut map, "gamma_kT")?,
            horizon: take_f64(&mut map, "horizon")?,
            epsilon: take_f64(&mut map, "epsilon")?,
            ..Settings::default()
        };
        if let Some(v) = map.remove("points") {
            let n = v
                .as_u64()
                .ok_or_else(|| CliError::usage("points must be a non-negative integer"))?;
            out.points = Some(n as usize);
        }
        for key in ["case", "cases"] {
            if let Some(v) = map.remove(key) {
                out.cases = Some(cases_from_json(&v)?);
            }
        }
        if let Some(v) = map.remove("method") {
            out.method = Some(take_str(&v, "method")?.parse()?);
        }
        if let Some(v) = map.remove("prefactor_scope") {
            let s = take_str(&v, "prefactor_scope")?;
            out.scope = Some(
                s.parse()
                    .map_err(|e: decoherence_core::Error| CliError::usage(e.to_string()))?,
            );
        }
        out.params = serde_json::from_value(Value::Object(map))
            .map_err(|e| CliError::usage(format!("model parameters: {e}")))?;
        Ok(out)
    }

    pub fn model_params(&self) -> ModelParams {
        let p = ModelParams::from(self.params);
        match self.gamma_kt {
            Some(g) => p.with_gamma_kt(g),
            None => p,
        }
    }

    pub fn run_config(&self, output: impl Into<PathBuf>) -> Result<RunConfig> {
        let defaults = RunConfig::new(self.model_params(), output);
        let config = RunConfig {
            cases: self.cases.clone().unwrap_or(defaults.cases.clone()),
            horizon: self.horizon.unwrap_or(defaults.horizon),
            points: self.points.unwrap_or(defaults.points),
            epsilon: self.epsilon.unwrap_or(defaults.epsilon),
            method: self.method.unwrap_or(defaults.method),
            scope: self.scope.unwrap_or(defaults.scope),
            ..defaults
        };
        config.validate()?;
        Ok(config)
    }
}

fn take_f64(map: &mut Map<String, Value>, key: &str) -> Result<Option<f64>> {
    match map.remove(key) {
        None => Ok(None),
        Some(v) => v
            .as_f64()
            .map(Some)
            .ok_or_else(|| CliError::usage(format!("{key} must be a number"))),
    }
}

fn take_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| CliError::usage(format!("{key} must be a string")))
}

/// Parses `"a,c"` or a list of such strings.
pub fn parse_cases(s: &str) -> Result<Vec<CaseId>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse()
                .map_err(|e: decoherence_core::Error| CliError::usage(e.to_string()))
        })
        .collect()
}

fn cases_from_json(v: &Value) -> Result<Vec<CaseId>> {
    match v {
        Value::String(s) => parse_cases(s),
        Value::Array(items) => {
            let mut out = Vec::new();
            for item in items {
                out.extend(parse_cases(take_str(item, "cases")?)?);
            }
            Ok(out)
        }
        _ => Err(CliError::usage("cases must be a string or a list of strings")),
    }
}
