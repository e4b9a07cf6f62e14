//! Closed-form azimuthal integrals.
//!
//! The even fundamental pump has components `(e_r cos φ, e_φ sin φ,
//! e_z cos φ)`. A product of two pump components therefore contributes
//! `cos²φ`, `sin²φ` or `cos φ sin φ`, and the conjugated signal and idler
//! contribute `e^{−iLφ}` with `L` their total azimuthal charge. Writing
//!
//! ```text
//! cos²φ = (e^{2iφ} + e^{−2iφ} + 2)/4
//! sin²φ = −(e^{2iφ} + e^{−2iφ} − 2)/4
//! cos φ sin φ = (e^{2iφ} − e^{−2iφ})/(4i)
//! ```
//!
//! and using `∫₀^{2π} e^{inφ} dφ = 2π δ_{n0}` gives the three cases below.
//! All of them vanish unless `L ∈ {−2, 0, 2}`.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Angular dependence of one pump component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularPattern {
    Cos,
    Sin,
}

/// Patterns of the `(r, φ, z)` components of the even fundamental mode.
pub const PUMP_PATTERN: [AngularPattern; 3] = [AngularPattern::Cos, AngularPattern::Sin, AngularPattern::Cos];

/// `∫₀^{2π} p(φ) q(φ) e^{−iLφ} dφ`.
pub fn azimuthal_factor(p: AngularPattern, q: AngularPattern, total_charge: i32) -> Complex64 {
    use AngularPattern::*;
    let (at_zero, at_two) = match total_charge {
        0 => (true, false),
        2 | -2 => (false, true),
        _ => return Complex64::new(0.0, 0.0),
    };
    match (p, q) {
        (Cos, Cos) if at_zero => Complex64::new(PI, 0.0),
        (Cos, Cos) if at_two => Complex64::new(PI / 2.0, 0.0),
        (Sin, Sin) if at_zero => Complex64::new(PI, 0.0),
        (Sin, Sin) if at_two => Complex64::new(-PI / 2.0, 0.0),
        (Cos, Sin) | (Sin, Cos) if at_two => Complex64::new(0.0, -(total_charge.signum() as f64) * PI / 2.0),
        _ => Complex64::new(0.0, 0.0),
    }
}
