use fwm_fiber_modes::ModeError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OamError {
    #[error("O({charge},{sam}) is formed by the unstable TE and TM modes")]
    UnstableMode { charge: i32, sam: char },
    #[error("invalid OAM label: {0}")]
    InvalidLabel(String),
    #[error(transparent)]
    Mode(#[from] ModeError),
}
