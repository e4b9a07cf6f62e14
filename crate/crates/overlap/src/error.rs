use fwm_fiber_modes::ModeError;
use fwm_oam_basis::OamError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OverlapError {
    #[error(transparent)]
    Mode(#[from] ModeError),
    #[error(transparent)]
    Oam(#[from] OamError),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
}
