//! Transverse overlap integrals of spontaneous four-wave mixing.
//!
//! Two pump photons in the even fundamental mode `HE_{1,1}` are converted
//! into a signal and an idler photon. The process amplitude carries the
//! integral
//!
//! ```text
//! I = ∬ d²r  χ⁽³⁾ ⋮ A B C* D*
//! ```
//!
//! over the transverse plane, with `A`, `B` the pump fields and `C`, `D`
//! the signal and idler fields. The azimuthal integral is done
//! analytically; only the radial integral is numerical. A channel whose
//! total azimuthal charge cannot be balanced by the pumps gives an exact
//! zero without any quadrature.

mod azimuthal;
mod channel;
mod chi3;
mod error;
mod integral;
mod table;

pub use azimuthal::{azimuthal_factor, AngularPattern, PUMP_PATTERN};
pub use channel::{angular_momentum_allowed, Allowed, Frequencies, FwmChannel};
pub use chi3::{Chi3Tensor, Component};
pub use error::OverlapError;
pub use integral::{
    fwm_overlap, hybrid_overlap, overlap_of_profiles, OverlapSetup, TABULATION_WAVELENGTH_UM,
};
pub use table::{overlap_table, OverlapFamily, OverlapTable};
