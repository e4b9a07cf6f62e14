use fwm_coupled_modes::EnvelopeError;
use fwm_fiber_modes::ModeError;
use fwm_grating::GratingError;
use fwm_oam_basis::OamError;
use fwm_overlap::OverlapError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JsaError {
    #[error("channel {0} violates angular-momentum conservation")]
    ForbiddenChannel(String),
    #[error("channel {0} is not reachable with the given gratings")]
    ChannelUnreachable(String),
    #[error("invalid detuning grid: {0}")]
    InvalidGrid(String),
    #[error("spectrum not contained in the window after {attempts} widenings (tail/peak = {tail_ratio:e})")]
    GridTooNarrow { attempts: usize, tail_ratio: f64 },
    #[error("grid too coarse: phase advances {phase_step:.3} rad per cell (limit {limit:.3})")]
    GridTooCoarse { phase_step: f64, limit: f64 },
    #[error("longitudinal quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error(transparent)]
    Overlap(#[from] OverlapError),
    #[error(transparent)]
    Grating(#[from] GratingError),
    #[error(transparent)]
    Mode(#[from] ModeError),
    #[error(transparent)]
    Oam(#[from] OamError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
}
