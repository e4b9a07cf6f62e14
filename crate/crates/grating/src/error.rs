use fwm_fiber_modes::ModeError;
use fwm_oam_basis::OamError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GratingError {
    #[error("invalid grating: {0}")]
    InvalidGrating(String),
    #[error("modes {from} and {to} have equal wavenumbers; no finite resonant period")]
    DegenerateDispersion { from: String, to: String },
    #[error("coupling overlap quadrature failed: {0}")]
    Quadrature(String),
    #[error(transparent)]
    Mode(#[from] ModeError),
    #[error(transparent)]
    Oam(#[from] OamError),
}
