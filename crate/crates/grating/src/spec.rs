use crate::coupling::resonant_period;
use crate::error::GratingError;
use fwm_oam_basis::{OamLabel, ProfileBank};
use std::f64::consts::PI;

/// Index perturbation `Δε₀ ≈ 2 n_co Δn₀` for `n_co = 1.45`, `Δn₀ = 0.01`.
pub const DEFAULT_DELTA_EPS0: f64 = 0.029;

/// Which photon of the pair the grating acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetPhoton {
    Signal,
    Idler,
}

/// Mode pair and angular frequency (rad/s) the period was designed for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub from: OamLabel,
    pub to: OamLabel,
    pub omega_t: f64,
}

/// A helical grating. The period is in metres.
///
/// The grating wavevector enters the momentum detuning with a sign: it is
/// positive when the target mode is faster-varying (`k^{to} > k^{from}`)
/// at the design frequency and negative otherwise, so that a resonant
/// grating always cancels the wavenumber mismatch of its design pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GratingSpec {
    pub topological_charge: i32,
    pub period: f64,
    pub delta_eps0: f64,
    pub target_photon: TargetPhoton,
    pub resonance: Resonance,
    wavevector_sign: f64,
}

impl GratingSpec {
    /// Grating with an explicit period; `wavevector_sign` is ±1.
    pub fn new(
        topological_charge: i32,
        period: f64,
        delta_eps0: f64,
        target_photon: TargetPhoton,
        resonance: Resonance,
        wavevector_sign: f64,
    ) -> Result<Self, GratingError> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(GratingError::InvalidGrating(format!("period must be positive, got {period}")));
        }
        if !(delta_eps0 > 0.0 && delta_eps0.is_finite()) {
            return Err(GratingError::InvalidGrating(format!(
                "perturbation must be positive, got {delta_eps0}"
            )));
        }
        if wavevector_sign.abs() != 1.0 {
            return Err(GratingError::InvalidGrating("wavevector sign must be ±1".into()));
        }
        if !(resonance.omega_t > 0.0) {
            return Err(GratingError::InvalidGrating("design frequency must be positive".into()));
        }
        Ok(Self {
            topological_charge,
            period,
            delta_eps0,
            target_photon,
            resonance,
            wavevector_sign,
        })
    }

    /// Grating whose period makes `from → to` exactly phase matched at
    /// `omega_t`; the topological charge is the total-charge difference.
    pub fn resonant(
        bank: &ProfileBank,
        from: OamLabel,
        to: OamLabel,
        omega_t: f64,
        delta_eps0: f64,
        target_photon: TargetPhoton,
    ) -> Result<Self, GratingError> {
        let signed = resonant_period(bank, from, to, omega_t)?;
        Self::new(
            to.total_charge() - from.total_charge(),
            signed.abs(),
            delta_eps0,
            target_photon,
            Resonance { from, to, omega_t },
            signed.signum(),
        )
    }

    /// Signed grating wavevector `±2π/Λ_t` (rad/m).
    pub fn wavevector(&self) -> f64 {
        self.wavevector_sign * 2.0 * PI / self.period
    }

    /// Same grating with a different perturbation strength.
    pub fn with_delta_eps0(&self, delta_eps0: f64) -> Result<Self, GratingError> {
        Self::new(
            self.topological_charge,
            self.period,
            delta_eps0,
            self.target_photon,
            self.resonance,
            self.wavevector_sign,
        )
    }
}
