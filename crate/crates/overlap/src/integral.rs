use crate::azimuthal::{azimuthal_factor, PUMP_PATTERN};
use crate::channel::{Allowed, Frequencies, FwmChannel};
use crate::chi3::Chi3Tensor;
use crate::error::OverlapError;
use fwm_fiber_modes::{integrate_radial, omega_from_wavelength, FiberSpec, ModeLabel, Normalization, RadialProfile};
use fwm_numerics::QuadratureSpec;
use fwm_oam_basis::{ProfileBank, UnitCounterConstruction, VectorModeProfile};
use num_complex::Complex64;
use std::sync::Arc;

/// Common wavelength (µm) of the tabulation convention for the
/// low-contrast 20 µm fiber, where V ≈ 6.89.
pub const TABULATION_WAVELENGTH_UM: f64 = 3.1;

/// Everything needed to evaluate overlap integrals: normalized mode
/// profiles, the susceptibility, the radial quadrature tolerances and an
/// overall factor applied to every reported value.
#[derive(Debug, Clone)]
pub struct OverlapSetup {
    pub bank: Arc<ProfileBank>,
    pub chi: Chi3Tensor,
    pub quad: QuadratureSpec,
    /// Multiplies every returned integral (1 for physical units of µm⁻²).
    pub output_scale: f64,
}

fn mode_quadrature() -> QuadratureSpec {
    QuadratureSpec::new(1e-12, 1e-300, 4000)
}

fn overlap_quadrature() -> QuadratureSpec {
    QuadratureSpec::new(1e-10, 1e-18, 4000)
}

impl OverlapSetup {
    pub fn new(fiber: FiberSpec, normalization: Normalization, unit_counter: UnitCounterConstruction) -> Self {
        Self {
            bank: Arc::new(ProfileBank::new(fiber, normalization, mode_quadrature(), unit_counter)),
            chi: Chi3Tensor::default(),
            quad: overlap_quadrature(),
            output_scale: 1.0,
        }
    }

    /// Flux-normalized modes, values in µm⁻².
    pub fn physical(fiber: FiberSpec) -> Self {
        Self::new(fiber, Normalization::Poynting, UnitCounterConstruction::default())
    }

    /// The tabulation convention: every field at the common wavelength
    /// [`TABULATION_WAVELENGTH_UM`], unit field energy `∬|E|² d²r = 1`,
    /// and values multiplied by `a²` so that they are dimensionless and
    /// refer to the core area scale. Returns the setup and the common
    /// frequencies.
    pub fn tabulation(fiber: FiberSpec) -> (Self, Frequencies) {
        let mut setup = Self::new(fiber, Normalization::FieldEnergy, UnitCounterConstruction::HybridFormula);
        setup.output_scale = fiber.core_radius().powi(2);
        (setup, Frequencies::common(omega_from_wavelength(TABULATION_WAVELENGTH_UM)))
    }

    pub fn fiber(&self) -> &FiberSpec {
        self.bank.fiber()
    }

    fn pump(&self, omega: f64) -> Result<RadialProfile, OverlapError> {
        let he11 = ModeLabel::he(1)?;
        Ok(self.bank.hybrid(he11, omega)?.sources()[0].clone())
    }
}

/// Radial quadrature of the contracted integrand for explicit profiles.
///
/// The pumps are the even fundamental mode with radial parts `pump1`,
/// `pump2`; `signal` and `idler` enter complex conjugated. Every pair of
/// signal and idler harmonics whose total charge the pumps cannot balance
/// is dropped analytically; if none is left the result is exactly zero.
pub fn overlap_of_profiles(
    chi: &Chi3Tensor,
    quad: &QuadratureSpec,
    pump1: &RadialProfile,
    pump2: &RadialProfile,
    signal: &VectorModeProfile,
    idler: &VectorModeProfile,
) -> Result<Complex64, OverlapError> {
    let mut pairs = Vec::new();
    for qs in signal.charges() {
        for qi in idler.charges() {
            let mut f = [[Complex64::new(0.0, 0.0); 3]; 3];
            let mut any = false;
            for a in 0..3 {
                for b in 0..3 {
                    f[a][b] = azimuthal_factor(PUMP_PATTERN[a], PUMP_PATTERN[b], qs + qi);
                    any |= f[a][b] != Complex64::new(0.0, 0.0);
                }
            }
            if any {
                pairs.push((qs, qi, f));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let terms = chi.nonzero_terms();
    let r_max = [
        pump1.truncation_radius(),
        pump2.truncation_radius(),
        signal.truncation_radius(),
        idler.truncation_radius(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let integrand = |r: f64| {
        let (pa, pb) = (pump1.field(r), pump2.field(r));
        let mut acc = Complex64::new(0.0, 0.0);
        for (qs, qi, f) in &pairs {
            let c = signal.radial_for_charge(*qs, r).map(|x| x.conj());
            let d = idler.radial_for_charge(*qi, r).map(|x| x.conj());
            for &(ia, ib, ic, id, v) in &terms {
                let fab = f[ia][ib];
                if fab.re != 0.0 || fab.im != 0.0 {
                    acc += fab * v * pa[ia] * pb[ib] * c[ic] * d[id];
                }
            }
        }
        acc * r
    };
    Ok(integrate_radial(integrand, pump1.core_radius(), r_max, quad)?)
}

/// Overlap integral of an OAM channel, scaled by `setup.output_scale`.
/// Forbidden channels return exactly zero without touching the modes.
pub fn fwm_overlap(channel: &FwmChannel, setup: &OverlapSetup) -> Result<Complex64, OverlapError> {
    if channel.allowed() == Allowed::Forbidden {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let pump1 = setup.pump(channel.omega_1)?;
    let pump2 = setup.pump(channel.omega_2)?;
    let signal = setup.bank.oam(channel.signal, channel.omega_s)?;
    let idler = setup.bank.oam(channel.idler, channel.omega_i)?;
    let value = overlap_of_profiles(&setup.chi, &setup.quad, &pump1, &pump2, &signal, &idler)?;
    Ok(value * setup.output_scale)
}

/// Overlap integral with the signal and idler in hybrid modes.
///
/// Signal and idler of opposite parity give exactly zero: the integrand is
/// then odd under `φ → −φ`.
pub fn hybrid_overlap(
    signal: ModeLabel,
    idler: ModeLabel,
    frequencies: &Frequencies,
    setup: &OverlapSetup,
) -> Result<Complex64, OverlapError> {
    if signal.parity() != idler.parity() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let pump1 = setup.pump(frequencies.pump1)?;
    let pump2 = setup.pump(frequencies.pump2)?;
    let s = setup.bank.hybrid(signal, frequencies.signal)?;
    let i = setup.bank.hybrid(idler, frequencies.idler)?;
    let value = overlap_of_profiles(&setup.chi, &setup.quad, &pump1, &pump2, &s, &i)?;
    Ok(value * setup.output_scale)
}
