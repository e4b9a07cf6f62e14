use crate::error::JsaError;
use fwm_oam_basis::{OamLabel, Sam};
use fwm_overlap::{fwm_overlap, Frequencies, FwmChannel, OverlapSetup};
use num_complex::Complex64;

/// The two overlaps entering the polarization-entangled state of the
/// `(m_s, −m_i)` pair: `co = I(O_{m_s}⁺, O_{−m_i}⁻)` and
/// `counter = I(O_{m_s}⁻, O_{−m_i}⁺)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellOverlaps {
    pub co: Complex64,
    pub counter: Complex64,
}

/// Fidelity of `A|σ⁺σ⁻⟩ + B|σ⁻σ⁺⟩` with the maximally entangled state,
/// `(|A| + |B|)/√(2(|A|² + |B|²))`. Zero when both overlaps vanish.
pub fn fidelity_from_overlaps(a: f64, b: f64) -> f64 {
    let (a, b) = (a.abs(), b.abs());
    let norm = a.hypot(b);
    if norm == 0.0 {
        return 0.0;
    }
    (a + b) / (std::f64::consts::SQRT_2 * norm)
}

/// Bell-state fidelity of the pair with signal OAM `m_s` and idler OAM
/// `−m_i`, from freshly computed overlaps in the labelling where
/// `O_{±1}^{∓}` are the unit-charge counter-rotating states.
pub fn bell_fidelity(
    setup: &OverlapSetup,
    frequencies: Frequencies,
    m_s: i32,
    m_i: i32,
) -> Result<(f64, BellOverlaps), JsaError> {
    let overlap = |s: OamLabel, i: OamLabel| fwm_overlap(&FwmChannel::new(s, i, frequencies), setup);
    let co = overlap(OamLabel::tabulation(m_s, Sam::Plus)?, OamLabel::tabulation(-m_i, Sam::Minus)?)?;
    let counter = overlap(OamLabel::tabulation(m_s, Sam::Minus)?, OamLabel::tabulation(-m_i, Sam::Plus)?)?;
    Ok((fidelity_from_overlaps(co.norm(), counter.norm()), BellOverlaps { co, counter }))
}
