//! Decoherence of an oscillator A coupled to an oscillator B that is itself
//! coupled to a hot Ohmic bath. Each of A and B may be harmonic or inverted,
//! giving the four cases (a)-(d).
//!
//! The chain is [`model`] parameters → [`trajectories`] (classical paths and
//! the response `g`) → [`diffusion`] coefficient `D(t)` →
//! [`decoherence`] factor `Γ(t)` and decoherence times. Bath kernels live in
//! [`kernels`]; integration and crossing search in [`numerics`].

pub mod decoherence;
pub mod diffusion;
pub mod error;
pub mod kernels;
pub mod model;
pub mod numerics;
pub mod trajectories;

pub use decoherence::{DecoherenceReport, Grid};
pub use diffusion::{Method, PrefactorScope};
pub use error::{Error, Result};
pub use model::{case_kinds, validate, CaseId, ModelParams, OscillatorKind, RegimeReport};
pub use numerics::{QuadratureSpec, TimeSeries};
