use crate::error::ModeError;
use std::f64::consts::PI;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Geometry and refractive indices of a step-index fiber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberSpec {
    core_index: f64,
    cladding_index: f64,
    /// Core radius in micrometres.
    core_radius: f64,
}

impl FiberSpec {
    pub fn new(core_index: f64, cladding_index: f64, core_radius_um: f64) -> Result<Self, ModeError> {
        if !(core_index.is_finite() && cladding_index.is_finite() && core_radius_um.is_finite()) {
            return Err(ModeError::InvalidFiber("parameters must be finite".into()));
        }
        if !(cladding_index > 1.0) {
            return Err(ModeError::InvalidFiber(format!(
                "cladding_index must exceed 1, got {cladding_index}"
            )));
        }
        if !(core_index > cladding_index) {
            return Err(ModeError::InvalidFiber(format!(
                "core_index ({core_index}) must exceed cladding_index ({cladding_index})"
            )));
        }
        if !(core_radius_um > 0.0) {
            return Err(ModeError::InvalidFiber(format!(
                "core_radius must be positive, got {core_radius_um} um"
            )));
        }
        Ok(Self {
            core_index,
            cladding_index,
            core_radius: core_radius_um,
        })
    }

    /// The low-contrast silica fiber used throughout: n_co = 1.45,
    /// n_cl = 1.44, a = 20 µm.
    pub fn silica_low_contrast() -> Self {
        Self::new(1.45, 1.44, 20.0).expect("valid constants")
    }

    pub fn core_index(&self) -> f64 {
        self.core_index
    }

    pub fn cladding_index(&self) -> f64 {
        self.cladding_index
    }

    /// Core radius in micrometres.
    pub fn core_radius(&self) -> f64 {
        self.core_radius
    }

    pub fn core_permittivity(&self) -> f64 {
        self.core_index * self.core_index
    }

    pub fn cladding_permittivity(&self) -> f64 {
        self.cladding_index * self.cladding_index
    }

    /// ε_cl / ε_co, the ratio entering the hybrid eigenvalue equation.
    pub fn permittivity_ratio(&self) -> f64 {
        self.cladding_permittivity() / self.core_permittivity()
    }

    pub fn numerical_aperture(&self) -> f64 {
        (self.core_permittivity() - self.cladding_permittivity()).sqrt()
    }

    /// Normalized frequency at a vacuum wavelength given in micrometres.
    pub fn v_parameter(&self, wavelength_um: f64) -> f64 {
        v_number(self.core_index, self.cladding_index, self.core_radius, wavelength_um)
    }

    /// Normalized frequency at angular frequency `omega` (rad/s).
    pub fn v_at_omega(&self, omega: f64) -> f64 {
        self.v_parameter(wavelength_from_omega(omega))
    }

    /// Same fiber with a different core radius (µm).
    pub fn with_core_radius(&self, core_radius_um: f64) -> Result<Self, ModeError> {
        Self::new(self.core_index, self.cladding_index, core_radius_um)
    }
}

/// V = 2πa·√(ε_co − ε_cl)/λ with `a` and `λ` in the same length unit.
///
/// Defined for any pair of indices; equal indices give V = 0 (no guidance).
pub fn v_number(core_index: f64, cladding_index: f64, core_radius: f64, wavelength: f64) -> f64 {
    let contrast = (core_index * core_index - cladding_index * cladding_index).max(0.0);
    2.0 * PI * core_radius * contrast.sqrt() / wavelength
}

/// Angular frequency (rad/s) of a vacuum wavelength in micrometres.
pub fn omega_from_wavelength(wavelength_um: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT / (wavelength_um * 1e-6)
}

/// Vacuum wavelength in micrometres of an angular frequency in rad/s.
pub fn wavelength_from_omega(omega: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT / omega * 1e6
}
