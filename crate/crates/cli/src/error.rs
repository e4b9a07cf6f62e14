use crate::config::ConfigError;
use fwm_grating::GratingError;
use fwm_jsa::JsaError;
use fwm_oam_basis::OamError;
use fwm_overlap::OverlapError;
use thiserror::Error;

/// Exit status for invalid configuration or arguments.
pub const EXIT_CONFIG: i32 = 2;
/// Exit status for failures during computation or output.
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration:\n{}", list(.0))]
    Config(Vec<ConfigError>),
    #[error("invalid argument {argument}: {message}")]
    Argument { argument: String, message: String },
    #[error("{module}: {message}")]
    Compute { module: &'static str, message: String },
    #[error("output: {0}")]
    Output(String),
}

fn list(errors: &[ConfigError]) -> String {
    errors.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n")
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Argument { .. } => EXIT_CONFIG,
            Self::Compute { .. } | Self::Output(_) => EXIT_COMPUTE,
        }
    }

    pub fn argument(argument: &str, message: impl ToString) -> Self {
        Self::Argument {
            argument: argument.into(),
            message: message.to_string(),
        }
    }
}

impl From<JsaError> for CliError {
    fn from(e: JsaError) -> Self {
        let module = match &e {
            JsaError::Overlap(_) => "overlap",
            JsaError::Grating(_) => "grating",
            JsaError::Mode(_) => "fiber_modes",
            JsaError::Oam(_) => "oam_basis",
            JsaError::Envelope(_) => "coupled_modes",
            _ => "jsa",
        };
        Self::Compute {
            module,
            message: e.to_string(),
        }
    }
}

impl From<OverlapError> for CliError {
    fn from(e: OverlapError) -> Self {
        Self::Compute {
            module: "overlap",
            message: e.to_string(),
        }
    }
}

impl From<GratingError> for CliError {
    fn from(e: GratingError) -> Self {
        Self::Compute {
            module: "grating",
            message: e.to_string(),
        }
    }
}

impl From<OamError> for CliError {
    fn from(e: OamError) -> Self {
        Self::Compute {
            module: "oam_basis",
            message: e.to_string(),
        }
    }
}

impl From<fwm_fiber_modes::ModeError> for CliError {
    fn from(e: fwm_fiber_modes::ModeError) -> Self {
        Self::Compute {
            module: "fiber_modes",
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Output(e.to_string())
    }
}
