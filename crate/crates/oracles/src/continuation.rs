//! Analytic continuation of the harmonic-A / inverted-B diffusion integrand.
//!
//! The inverted-B expression is evaluated in complex arithmetic with the
//! frequencies replaced by imaginary values; the other three oscillator
//! combinations fall out as real parts. The imaginary residue is checked
//! rather than discarded.

use num_complex::Complex64;

use crate::quadrature::composite_complex;
use crate::{Method, OracleError, OracleResult};

const RESIDUE_BOUND: f64 = 1e-9;
const PANELS: usize = 96;
const ORDER: usize = 20;

/// Physical inputs, already reduced to the two real constants that multiply
/// the bath and back-reaction integrals.
#[derive(Debug, Clone, Copy)]
pub struct DiffusionInput {
    pub omega: f64,
    pub omega_b: f64,
    pub t: f64,
    /// `2 γ₀ k_B T λ² / ħ`.
    pub bath_factor: f64,
    /// Real constant multiplying `∫ ν̃-shape · Δx`.
    pub backreaction_factor: f64,
}

/// Which closed-form expression is continued.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    /// Harmonic A, inverted B; continuing Ω → iΩ gives harmonic-harmonic.
    HarmonicInverted,
    /// Inverted A, harmonic B (itself the (ω, Ω) → (iω, iΩ) image of the
    /// first); continuing Ω → iΩ gives inverted-inverted.
    InvertedHarmonic,
}

/// The harmonic-A / inverted-B diffusion value at complex frequencies.
pub fn diffusion_complex(omega: Complex64, omega_b: Complex64, input: &DiffusionInput) -> Complex64 {
    let t = input.t;
    let w = omega;
    let big = omega_b;
    let sh_t = (big * t).sinh();
    let ch_t = (big * t).cosh();
    let c_t = (w * t).cos();
    let s_t = (w * t).sin();

    let bracket_g =
        |s: f64| (big * s).sinh() / sh_t * (ch_t * c_t - 1.0) - (big * s).cosh() * c_t + (w * (t - s)).cos();
    let bracket_dg = |s: f64| {
        let sh_s = (big * s).sinh();
        big * (sh_s * ch_t * (1.0 - ch_t * c_t) / (sh_t * sh_t) + sh_s * c_t)
            + w * (-sh_s * s_t * ch_t / sh_t - (w * (t - s)).sin() + s_t * (big * s).cosh())
    };

    let mut total = Complex64::new(0.0, 0.0);
    if input.bath_factor != 0.0 {
        let denom = w * w + big * big;
        let integral = composite_complex(&|s| bracket_g(s) * bracket_dg(s), 0.0, t, PANELS, ORDER);
        total += integral * input.bath_factor / (denom * denom);
    }
    if input.backreaction_factor != 0.0 {
        let integral = composite_complex(
            &|s| (big * (t - s)).cosh() * (w * (t - s)).cos(),
            0.0,
            t,
            PANELS,
            ORDER,
        );
        total += integral * input.backreaction_factor;
    }
    total
}

/// The inverted-A / harmonic-B value, obtained from the first by the joint
/// substitution (ω, Ω) → (iω, iΩ).
pub fn inverted_harmonic_complex(omega: Complex64, omega_b: Complex64, input: &DiffusionInput) -> Complex64 {
    let i = Complex64::i();
    diffusion_complex(i * omega, i * omega_b, input)
}

fn checked(z: Complex64) -> Result<OracleResult, OracleError> {
    if z.im.abs() > RESIDUE_BOUND * z.re.abs().max(f64::MIN_POSITIVE) {
        return Err(OracleError::ImaginaryResidue {
            real: z.re,
            imag: z.im,
        });
    }
    Ok(OracleResult {
        value: z.re,
        method: Method::ComplexContinuation,
        estimated_error: z.im.abs(),
    })
}

/// Evaluates `base` at its own (real) frequencies.
pub fn direct(base: Base, input: &DiffusionInput) -> Result<OracleResult, OracleError> {
    let w = Complex64::new(input.omega, 0.0);
    let big = Complex64::new(input.omega_b, 0.0);
    checked(match base {
        Base::HarmonicInverted => diffusion_complex(w, big, input),
        Base::InvertedHarmonic => inverted_harmonic_complex(w, big, input),
    })
}

/// Evaluates `base` with Ω → iΩ and returns the real part.
pub fn continued(base: Base, input: &DiffusionInput) -> Result<OracleResult, OracleError> {
    let w = Complex64::new(input.omega, 0.0);
    let big = Complex64::new(0.0, input.omega_b);
    checked(match base {
        Base::HarmonicInverted => diffusion_complex(w, big, input),
        Base::InvertedHarmonic => inverted_harmonic_complex(w, big, input),
    })
}

/// The driven response of an inverted B oscillator,
/// `(1/Ω)[-∫₀ˢ Δx sinh Ω(s-u) du + sinh Ωs / sinh Ωt ∫₀ᵗ Δx sinh Ω(t-u) du]`,
/// at complex Ω. With Ω → iΩ the real part is the harmonic-B response.
pub fn driven_response_complex<F: Fn(f64) -> f64>(
    omega_b: Complex64,
    s: f64,
    t: f64,
    source: F,
) -> Complex64 {
    let big = omega_b;
    let inner = composite_complex(&|u| (big * (s - u)).sinh() * source(u), 0.0, s, PANELS, ORDER);
    let outer = composite_complex(&|u| (big * (t - u)).sinh() * source(u), 0.0, t, PANELS, ORDER);
    (-inner + (big * s).sinh() / (big * t).sinh() * outer) / big
}
