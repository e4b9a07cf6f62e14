#![allow(dead_code)]

use fwm_fiber_modes::FiberSpec;
use fwm_grating::DEFAULT_DELTA_EPS0;
use fwm_jsa::{GratingPair, JsaEngine, JsaOptions, OutputChannel, PumpConfig};
use fwm_oam_basis::{OamLabel, Sam};

pub fn engine() -> JsaEngine {
    JsaEngine::new(FiberSpec::silica_low_contrast(), PumpConfig::reference(), JsaOptions::default())
}

/// `(O_m⁺; O_{−m}⁻)`.
pub fn co_channel(m: i32) -> OutputChannel {
    OutputChannel::new(OamLabel::new(m, Sam::Plus).unwrap(), OamLabel::new(-m, Sam::Minus).unwrap())
}

pub fn resonant(engine: &JsaEngine, m_prime: i32) -> GratingPair {
    engine.resonant_gratings(m_prime, DEFAULT_DELTA_EPS0).unwrap()
}

/// Resonant gratings so weak that conversion is negligible.
pub fn vanishing(engine: &JsaEngine, m_prime: i32) -> GratingPair {
    engine.resonant_gratings(m_prime, 1e-14).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
