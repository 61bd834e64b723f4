//! Physical parameters, the four oscillator-kind cases and regime checks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Kind of a one-dimensional quadratic oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OscillatorKind {
    Harmonic,
    /// Upside-down (negative quadratic) potential.
    Inverted,
}

impl OscillatorKind {
    /// `sin` for harmonic, `sinh` for inverted.
    #[inline]
    pub fn sn(self, x: f64) -> f64 {
        match self {
            OscillatorKind::Harmonic => x.sin(),
            OscillatorKind::Inverted => x.sinh(),
        }
    }

    /// `cos` for harmonic, `cosh` for inverted.
    #[inline]
    pub fn cs(self, x: f64) -> f64 {
        match self {
            OscillatorKind::Harmonic => x.cos(),
            OscillatorKind::Inverted => x.cosh(),
        }
    }

    /// Derivative of [`Self::cs`]: `-sin` or `sinh`.
    #[inline]
    pub fn cs_prime(self, x: f64) -> f64 {
        match self {
            OscillatorKind::Harmonic => -x.sin(),
            OscillatorKind::Inverted => x.sinh(),
        }
    }
}

impl fmt::Display for OscillatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OscillatorKind::Harmonic => "harmonic",
            OscillatorKind::Inverted => "inverted",
        })
    }
}

/// One of the four A/B oscillator-kind combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    A,
    B,
    C,
    D,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [CaseId::A, CaseId::B, CaseId::C, CaseId::D];

    pub fn tag(self) -> char {
        match self {
            CaseId::A => 'a',
            CaseId::B => 'b',
            CaseId::C => 'c',
            CaseId::D => 'd',
        }
    }

    pub fn kind_a(self) -> OscillatorKind {
        case_kinds(self).0
    }

    pub fn kind_b(self) -> OscillatorKind {
        case_kinds(self).1
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" | "A" => Ok(CaseId::A),
            "b" | "B" => Ok(CaseId::B),
            "c" | "C" => Ok(CaseId::C),
            "d" | "D" => Ok(CaseId::D),
            other => Err(Error::InvalidParameter {
                field: "case",
                reason: format!("expected one of a, b, c, d; got `{other}`"),
            }),
        }
    }
}

/// Oscillator kinds of (A, B) for a case.
pub fn case_kinds(c: CaseId) -> (OscillatorKind, OscillatorKind) {
    use OscillatorKind::*;
    match c {
        CaseId::A => (Harmonic, Inverted),
        CaseId::B => (Inverted, Harmonic),
        CaseId::C => (Harmonic, Harmonic),
        CaseId::D => (Inverted, Inverted),
    }
}

/// Damping constant used when a figure specifies only the product γ₀ k_B T.
pub const DEFAULT_GAMMA0: f64 = 0.01;

/// All physical constants of the A+B system and the bath.
///
/// Units default to ħ = k_B = M_A = M_B = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "ParamOverrides", into = "ParamOverrides")]
pub struct ModelParams {
    /// Frequency ω of A.
    pub omega: f64,
    /// Frequency Ω of B.
    pub omega_b: f64,
    /// Bilinear A-B coupling λ.
    pub lambda: f64,
    pub gamma0: f64,
    pub kt: f64,
    /// Squared width of B's initial packet.
    pub sigma: f64,
    pub sigma_a: f64,
    pub sigma_p0: f64,
    pub hbar: f64,
    pub mass_a: f64,
    pub mass_b: f64,
    pub cutoff: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ParamOverrides::default().into()
    }
}

impl ModelParams {
    /// Returns a copy carrying the product `γ₀ k_B T = product`.
    ///
    /// A zero product switches the bath off (`γ₀ = kT = 0`); otherwise
    /// `γ₀` is kept if positive, else set to [`DEFAULT_GAMMA0`].
    pub fn with_gamma_kt(mut self, product: f64) -> Self {
        if product == 0.0 {
            self.gamma0 = 0.0;
            self.kt = 0.0;
        } else {
            if !(self.gamma0 > 0.0) {
                self.gamma0 = DEFAULT_GAMMA0;
            }
            self.kt = product / self.gamma0;
        }
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_frequencies(mut self, omega: f64, omega_b: f64) -> Self {
        self.omega = omega;
        self.omega_b = omega_b;
        self
    }

    /// `γ₀ k_B T`, the only bath combination reaching the diffusion formulas.
    pub fn gamma_kt(&self) -> f64 {
        self.gamma0 * self.kt
    }

    /// Hard checks of the field invariants.
    pub fn check(&self) -> Result<()> {
        let positive = [
            ("omega", self.omega),
            ("omega_B", self.omega_b),
            ("sigma", self.sigma),
            ("sigma_A", self.sigma_a),
            ("sigma_p0", self.sigma_p0),
            ("hbar", self.hbar),
            ("mass_A", self.mass_a),
            ("mass_B", self.mass_b),
            ("cutoff", self.cutoff),
        ];
        for (field, v) in positive {
            if !v.is_finite() {
                return Err(invalid(field, format!("must be finite, got {v}")));
            }
            if v <= 0.0 {
                return Err(invalid(field, format!("must be positive, got {v}")));
            }
        }
        for (field, v) in [("lambda", self.lambda), ("gamma0", self.gamma0), ("kT", self.kt)] {
            if !v.is_finite() {
                return Err(invalid(field, format!("must be finite, got {v}")));
            }
        }
        if self.gamma0 < 0.0 {
            return Err(invalid(
                "gamma0",
                format!("must be non-negative, got {}", self.gamma0),
            ));
        }
        if self.kt < 0.0 {
            return Err(invalid("kT", format!("must be non-negative, got {}", self.kt)));
        }
        Ok(())
    }
}

fn invalid(field: &'static str, reason: String) -> Error {
    Error::InvalidParameter { field, reason }
}

/// Parameter record with every field optional, as read from a JSON file.
/// Missing fields take defaults, some derived from other fields.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(rename = "omega_B", skip_serializing_if = "Option::is_none")]
    pub omega_b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma0: Option<f64>,
    #[serde(rename = "kT", skip_serializing_if = "Option::is_none")]
    pub kt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(rename = "sigma_A", skip_serializing_if = "Option::is_none")]
    pub sigma_a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_p0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    #[serde(rename = "mass_A", skip_serializing_if = "Option::is_none")]
    pub mass_a: Option<f64>,
    #[serde(rename = "mass_B", skip_serializing_if = "Option::is_none")]
    pub mass_b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
}

impl ParamOverrides {
    /// Fields set in `other` replace those in `self`.
    pub fn merge(self, other: ParamOverrides) -> ParamOverrides {
        ParamOverrides {
            omega: other.omega.or(self.omega),
            omega_b: other.omega_b.or(self.omega_b),
            lambda: other.lambda.or(self.lambda),
            gamma0: other.gamma0.or(self.gamma0),
            kt: other.kt.or(self.kt),
            sigma: other.sigma.or(self.sigma),
            sigma_a: other.sigma_a.or(self.sigma_a),
            sigma_p0: other.sigma_p0.or(self.sigma_p0),
            hbar: other.hbar.or(self.hbar),
            mass_a: other.mass_a.or(self.mass_a),
            mass_b: other.mass_b.or(self.mass_b),
            cutoff: other.cutoff.or(self.cutoff),
        }
    }
}

impl From<ParamOverrides> for ModelParams {
    fn from(o: ParamOverrides) -> Self {
        let omega = o.omega.unwrap_or(1.0);
        let hbar = o.hbar.unwrap_or(1.0);
        let mass_a = o.mass_a.unwrap_or(1.0);
        let sigma = o.sigma.unwrap_or(0.01);
        ModelParams {
            omega,
            omega_b: o.omega_b.unwrap_or(1.0),
            lambda: o.lambda.unwrap_or(0.1),
            gamma0: o.gamma0.unwrap_or(0.0),
            kt: o.kt.unwrap_or(0.0),
            sigma,
            sigma_a: o.sigma_a.unwrap_or(sigma),
            sigma_p0: o.sigma_p0.unwrap_or_else(|| (hbar * mass_a * omega / 2.0).sqrt()),
            hbar,
            mass_a,
            mass_b: o.mass_b.unwrap_or(1.0),
            cutoff: o.cutoff.unwrap_or(50.0),
        }
    }
}

impl From<ModelParams> for ParamOverrides {
    fn from(p: ModelParams) -> Self {
        ParamOverrides {
            omega: Some(p.omega),
            omega_b: Some(p.omega_b),
            lambda: Some(p.lambda),
            gamma0: Some(p.gamma0),
            kt: Some(p.kt),
            sigma: Some(p.sigma),
            sigma_a: Some(p.sigma_a),
            sigma_p0: Some(p.sigma_p0),
            hbar: Some(p.hbar),
            mass_a: Some(p.mass_a),
            mass_b: Some(p.mass_b),
            cutoff: Some(p.cutoff),
        }
    }
}

/// Outcome of the weak-damping and high-temperature checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub underdamped_ok: bool,
    pub high_t_ok: bool,
    pub messages: Vec<String>,
}

pub const UNDERDAMPED_RATIO: f64 = 0.1;
pub const HIGH_T_RATIO: f64 = 10.0;

/// Checks field invariants (hard error) and regime assumptions (warnings).
///
/// `underdamped_ok ⇔ γ₀ ≤ 0.1 min(ω, Ω)`; `high_t_ok ⇔ kT ≥ 10 ħ max(ω, Ω)`
/// or `γ₀ = 0`.
pub fn validate(p: &ModelParams) -> Result<RegimeReport> {
    p.check()?;
    let mut messages = Vec::new();
    let min_f = p.omega.min(p.omega_b);
    let max_f = p.omega.max(p.omega_b);
    let underdamped_ok = p.gamma0 <= UNDERDAMPED_RATIO * min_f;
    if !underdamped_ok {
        messages.push(format!(
            "gamma0 = {} exceeds {UNDERDAMPED_RATIO} x min(omega, omega_B) = {}; underdamped limit violated",
            p.gamma0,
            UNDERDAMPED_RATIO * min_f
        ));
    }
    let high_t_ok = p.gamma0 == 0.0 || p.kt >= HIGH_T_RATIO * p.hbar * max_f;
    if !high_t_ok {
        messages.push(format!(
            "kT = {} is below {HIGH_T_RATIO} x hbar x max(omega, omega_B) = {}; high-temperature limit violated",
            p.kt,
            HIGH_T_RATIO * p.hbar * max_f
        ));
    }
    Ok(RegimeReport {
        underdamped_ok,
        high_t_ok,
        messages,
    })
}
