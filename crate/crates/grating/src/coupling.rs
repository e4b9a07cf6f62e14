use crate::error::GratingError;
use crate::spec::GratingSpec;
use fwm_fiber_modes::{DispersionPoint, SPEED_OF_LIGHT};
use fwm_numerics::{integrate, QuadratureSpec};
use fwm_oam_basis::{hybrid_partner, OamLabel, ProfileBank, Sam, VectorModeProfile};
use num_complex::Complex64;
use std::f64::consts::PI;

/// True iff the grating of charge `m_g` can scatter `O_m^σ` into
/// `O_{m′}^{σ′}`: `m′ = m + m_g` with the spin kept, or
/// `m′ = m + m_g ± 2` with the spin flipped from `±` to `∓`. All three rules
/// are the statement that the total charge grows by exactly `m_g`.
pub fn coupling_allowed(m: i32, sigma: Sam, m_prime: i32, sigma_prime: Sam, m_g: i32) -> bool {
    if sigma == sigma_prime {
        m_prime == m + m_g
    } else {
        m_prime == m + m_g + sigma.sign() - sigma_prime.sign()
    }
}

/// Which wavenumber divides the coupling prefactor `Δε₀ ω²/(4 k c²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KappaPrefactor {
    /// `k` of the mode the photon scatters out of.
    #[default]
    FromMode,
    /// `√(k_from k_to)`, which makes `κ(a→b) = κ(b→a)` exact.
    Geometric,
}

fn dispersion(bank: &ProfileBank, label: OamLabel, omega: f64) -> Result<DispersionPoint, GratingError> {
    let partner = hybrid_partner(label)?;
    Ok(bank.dispersion().get_or_solve(bank.fiber(), partner, omega)?)
}

/// `2π ∫₀^a r Σ_k conj(f_k(r)) g_k(r) dr` for two single-charge radial
/// vectors: the transverse overlap restricted to the perturbed core.
pub fn core_overlap<F, G>(f: F, g: G, core_radius: f64, quad: &QuadratureSpec) -> Result<Complex64, GratingError>
where
    F: Fn(f64) -> [Complex64; 3],
    G: Fn(f64) -> [Complex64; 3],
{
    let res = integrate(
        |r: f64| {
            let (a, b) = (f(r), g(r));
            (a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2]) * r
        },
        0.0,
        core_radius,
        quad,
    )
    .map_err(|e| GratingError::Quadrature(e.to_string()))?;
    Ok(res.value * (2.0 * PI))
}

fn profile_overlap(a: &VectorModeProfile, b: &VectorModeProfile, quad: &QuadratureSpec) -> Result<Complex64, GratingError> {
    let (qa, qb) = (a.charges()[0], b.charges()[0]);
    core_overlap(
        |r| a.radial_for_charge(qa, r),
        |r| b.radial_for_charge(qb, r),
        a.core_radius(),
        quad,
    )
}

fn coupling_quadrature() -> QuadratureSpec {
    QuadratureSpec::new(1e-12, 1e-300, 4000)
}

/// Coupling constant (1/m) of the grating between two co-propagating OAM
/// modes at angular frequency `omega`, using the profiles of `bank` (whose
/// normalization fixes the scale of the transverse overlap).
///
/// Returns exactly zero when the charges do not satisfy the selection
/// rule; the azimuthal integral is then identically zero.
pub fn coupling_constant(
    bank: &ProfileBank,
    grating: &GratingSpec,
    from: OamLabel,
    to: OamLabel,
    omega: f64,
    prefactor: KappaPrefactor,
) -> Result<Complex64, GratingError> {
    if !coupling_allowed(from.oam_charge(), from.sam(), to.oam_charge(), to.sam(), grating.topological_charge) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let a = bank.oam(from, omega)?;
    let b = bank.oam(to, omega)?;
    let overlap = profile_overlap(&a, &b, &coupling_quadrature())?;
    let k_from = dispersion(bank, from, omega)?.k;
    let k = match prefactor {
        KappaPrefactor::FromMode => k_from,
        KappaPrefactor::Geometric => (k_from * dispersion(bank, to, omega)?.k).sqrt(),
    };
    let scale = grating.delta_eps0 * omega * omega / (4.0 * k * SPEED_OF_LIGHT * SPEED_OF_LIGHT);
    Ok(overlap * scale)
}

/// Signed period `2π/(k^{to} − k^{from})` (m) at `omega_t`. The magnitude is
/// the physical period; the sign says which way the grating wavevector must
/// point to cancel the mismatch.
pub fn resonant_period(bank: &ProfileBank, from: OamLabel, to: OamLabel, omega_t: f64) -> Result<f64, GratingError> {
    let dk = dispersion(bank, to, omega_t)?.k - dispersion(bank, from, omega_t)?.k;
    if dk == 0.0 || from == to {
        return Err(GratingError::DegenerateDispersion {
            from: from.to_string(),
            to: to.to_string(),
        });
    }
    Ok(2.0 * PI / dk)
}

/// Coupling constant with the frequency and momentum detunings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingPoint {
    /// Coupling constant (1/m).
    pub kappa: Complex64,
    /// Frequency detuning `δ = ω_t − ω` (rad/s).
    pub delta: f64,
    /// Momentum detuning (1/m).
    pub d: f64,
    /// `γ = √(d² + |κ|²)` (1/m).
    pub gamma: f64,
}

impl CouplingPoint {
    pub fn new(kappa: Complex64, delta: f64, d: f64) -> Self {
        Self {
            kappa,
            delta,
            d,
            gamma: d.hypot(kappa.norm()),
        }
    }
}

/// Detunings of the grating between `from` (order `m`) and `to` (order
/// `m′`) at the photon frequency `omega`:
///
/// ```text
/// δ  = ω_t − ω
/// 2d = δ (1/v_g^{m′} − 1/v_g^{m}) + K_t + k^{m}(ω) − k^{m′}(ω)
/// ```
///
/// with wavenumbers and group velocities of both modes taken at `omega`.
pub fn detunings(
    bank: &ProfileBank,
    grating: &GratingSpec,
    from: OamLabel,
    to: OamLabel,
    omega: f64,
    prefactor: KappaPrefactor,
) -> Result<CouplingPoint, GratingError> {
    let kappa = coupling_constant(bank, grating, from, to, omega, prefactor)?;
    let (low, high) = (dispersion(bank, from, omega)?, dispersion(bank, to, omega)?);
    let delta = grating.resonance.omega_t - omega;
    let d = 0.5 * (delta * (1.0 / high.v_g - 1.0 / low.v_g) + grating.wavevector() + low.k - high.k);
    Ok(CouplingPoint::new(kappa, delta, d))
}
