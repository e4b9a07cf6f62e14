//! OAM modes of a step-index fiber.
//!
//! An OAM mode `O_{±m}^{σ}` is the circular superposition
//! `(even ± i·odd)/√2` of a hybrid mode: co-rotating spin and orbital
//! momentum use `HE_{|m|+1}`, counter-rotating ones `EH_{|m|−1}`. The
//! resulting field is a radial vector times a single azimuthal phase
//! `e^{iℓφ}` with total charge `ℓ = m + σ`.
//!
//! Vector profiles are stored as sums of single-charge harmonics, which
//! covers OAM modes (one harmonic) and even/odd hybrid modes (two harmonics
//! `±m`) with the same machinery.

mod bank;
mod error;
mod label;
mod profile;

pub use bank::ProfileBank;
pub use error::OamError;
pub use label::{hybrid_partner, hybrid_partner_with, OamLabel, PartnerConvention, Sam};
pub use profile::{
    hybrid_vector_profile, oam_profile, oam_profile_with, orthogonality_check, Harmonic,
    UnitCounterConstruction, VectorModeProfile,
};
