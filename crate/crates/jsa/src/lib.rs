//! Joint spectral amplitudes (JSAs) of signal–idler pairs generated by
//! counter-propagating CW pumps in the fundamental mode, with optional
//! helical gratings converting each photon between two OAM orders.
//!
//! Frequencies are parametrized by the detuning `Δω = ω_s − ω₁`; energy
//! conservation fixes `ω̄_i = ω₁ + ω₂ − ω_s`. Mode wavenumbers, group
//! velocities, coupling constants and overlap integrals are smooth in `Δω`
//! and are tabulated once per sweep on Chebyshev points; the longitudinal
//! integral is then evaluated in closed form point by point.

mod config;
mod engine;
mod error;
mod fidelity;
mod grid;
mod ideal;
mod model;
mod peaks;
mod ratio;

pub use config::{EnvelopeCarrier, GratingPair, JsaOptions, OutputChannel, PumpConfig, ZIntegration};
pub use engine::JsaEngine;
pub use error::JsaError;
pub use fidelity::{bell_fidelity, fidelity_from_overlaps, BellOverlaps};
pub use grid::{count_peaks, integrate_trapezoid, DetuningGrid, JsaGrid};
pub use ideal::{ideal_components, IdealComponents};
pub use model::{SpectralModel, SpectralPoint};
pub use peaks::{Peak, PeakSigns};
pub use ratio::PairRatio;
