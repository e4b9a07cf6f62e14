use fwm_fiber_modes::omega_from_wavelength;
use fwm_grating::{GratingSpec, KappaPrefactor};
use fwm_numerics::QuadratureSpec;
use fwm_oam_basis::OamLabel;
use std::fmt;

/// Two CW pumps in the even fundamental mode: pump 1 forward at
/// `lambda1`, pump 2 backward at `lambda2` (µm), over a fiber of
/// `length` metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpConfig {
    pub lambda1_um: f64,
    pub lambda2_um: f64,
    pub length: f64,
}

impl PumpConfig {
    pub fn new(lambda1_um: f64, lambda2_um: f64, length: f64) -> Self {
        Self {
            lambda1_um,
            lambda2_um,
            length,
        }
    }

    /// 1.5 µm and 0.5 µm pumps in a 2 cm fiber.
    pub fn reference() -> Self {
        Self::new(1.5, 0.5, 0.02)
    }

    pub fn omega1(&self) -> f64 {
        omega_from_wavelength(self.lambda1_um)
    }

    pub fn omega2(&self) -> f64 {
        omega_from_wavelength(self.lambda2_um)
    }
}

/// The signal and idler modes a pair leaves the fiber in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OutputChannel {
    pub signal: OamLabel,
    pub idler: OamLabel,
}

impl OutputChannel {
    pub fn new(signal: OamLabel, idler: OamLabel) -> Self {
        Self { signal, idler }
    }
}

impl fmt::Display for OutputChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.signal, self.idler)
    }
}

/// At most one grating per photon.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GratingPair {
    pub signal: Option<GratingSpec>,
    pub idler: Option<GratingSpec>,
}

impl GratingPair {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn both(signal: GratingSpec, idler: GratingSpec) -> Self {
        Self {
            signal: Some(signal),
            idler: Some(idler),
        }
    }
}

/// How the `z` integral is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZIntegration {
    /// Exact integration of the exponential-sum form of the integrand.
    ClosedForm,
    /// Adaptive Gauss–Kronrod on the pointwise integrand.
    Adaptive(QuadratureSpec),
}

/// Where the frequency dependence of the mode wavenumbers enters the
/// converted amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnvelopeCarrier {
    /// Entirely through the pair phase `Δk(ω)`. The grating envelopes see
    /// only the physical mismatch `2d = K + k^{m}(ω) − k^{m′}(ω)` and carry
    /// no group-delay phase of their own, so each wavenumber is counted
    /// once.
    #[default]
    Absorbed,
    /// Additionally through the group-delay carriers `e^{∓iδz/v}` of the
    /// printed envelope solutions, with `2d = δ(1/v′ − 1/v) + K + k^{m}(ω)
    /// − k^{m′}(ω)`. Combined with `Δk(ω)` this counts the group delay of
    /// each photon twice.
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JsaOptions {
    /// Chebyshev points used to tabulate frequency-dependent quantities.
    pub interpolation_nodes: usize,
    pub z_integration: ZIntegration,
    pub kappa_prefactor: KappaPrefactor,
    pub envelope_carrier: EnvelopeCarrier,
}

impl Default for JsaOptions {
    fn default() -> Self {
        Self {
            interpolation_nodes: 24,
            z_integration: ZIntegration::ClosedForm,
            kappa_prefactor: KappaPrefactor::FromMode,
            envelope_carrier: EnvelopeCarrier::Absorbed,
        }
    }
}
