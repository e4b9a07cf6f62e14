//! Guided modes of a step-index fiber.
//!
//! The crate solves the exact vector eigenvalue problem of a step-index
//! fiber for HE/EH hybrid modes and the TE/TM modes of the first radial
//! order, returns per-frequency dispersion data, and evaluates the radial
//! parts of the electric and magnetic fields together with their flux or
//! energy normalization.
//!
//! Units: frequencies and wavenumbers in [`DispersionPoint`] are SI
//! (rad/s, rad/m, m/s); lengths inside [`RadialProfile`] are micrometres and
//! its wavenumbers are rad/µm.

mod cache;
mod error;
mod fiber;
mod label;
mod profile;
mod solver;

pub use cache::DispersionCache;
pub use error::ModeError;
pub use fiber::{omega_from_wavelength, v_number, wavelength_from_omega, FiberSpec, SPEED_OF_LIGHT};
pub use label::{Branch, Family, ModeLabel, Parity};
pub use profile::{
    integrate_radial, normalize, poynting_normalize, radial_profile, radial_profile_with_shape, Normalization,
    ProfileShape, RadialField, RadialProfile, TRUNCATION_RATIO,
};
pub use solver::{
    branch_function, characteristic_residual, guided_roots, solve_mode, solve_u, DispersionPoint,
    GROUP_VELOCITY_STEP, SCAN_POINTS,
};
