//! Helical transmission gratings written into the fiber core.
//!
//! The perturbation `Δε(r, φ, z) = Δε₀ cos(K_t z − m_g φ) Θ(a − r)` adds
//! `m_g` units of total angular momentum per scattering event and couples
//! co-propagating OAM modes whose wavenumbers differ by about `K_t`.

mod coupling;
mod error;
mod spec;

pub use coupling::{
    core_overlap, coupling_allowed, coupling_constant, detunings, resonant_period, CouplingPoint,
    KappaPrefactor,
};
pub use error::GratingError;
pub use spec::{GratingSpec, Resonance, TargetPhoton, DEFAULT_DELTA_EPS0};
