use fwm_numerics::{BesselError, RootError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModeError {
    #[error("invalid fiber: {0}")]
    InvalidFiber(String),
    #[error("invalid mode label: {0}")]
    InvalidLabel(String),
    #[error("invalid angular frequency {omega} rad/s (must be finite and > 0)")]
    InvalidFrequency { omega: f64 },
    #[error("{label} is not guided at V = {v}")]
    NotGuided { label: String, v: f64 },
    #[error("{label}: two roots of the same branch within tolerance (U = {first}, U = {second})")]
    BranchAmbiguity { label: String, first: f64, second: f64 },
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("non-positive normalization integral {value} (solver or branch error)")]
    DegenerateFlux { value: f64 },
    #[error("root finding failed: {0}")]
    Root(#[from] RootError),
    #[error("special function failed: {0}")]
    Bessel(#[from] BesselError),
    #[error("radial quadrature failed: {0}")]
    Quadrature(String),
}
