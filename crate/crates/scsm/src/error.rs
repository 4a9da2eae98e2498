use thiserror::Error;

/// Errors produced by configuration validation, Monte Carlo assembly and
/// sweep/CSV plumbing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid config: `{field}`: {message}")]
    InvalidConfig { field: &'static str, message: String },

    #[error("pilot preamble of {pilot_len} symbols plus guard does not leave room for payload in a frame of {frame_len} (need at least 1 payload symbol)")]
    PilotOverflow { pilot_len: usize, frame_len: usize },

    #[error("monte carlo requires at least {min} trials for an error estimate, got {got}")]
    TooFewTrials { min: usize, got: usize },

    #[error("non-positive SINR denominator {value:.6e} for user {user}, antenna {antenna}; the trial count is too small for a stable estimate")]
    NonPositiveDenominator { user: usize, antenna: usize, value: f64 },

    #[error("unknown preset `{0}`, expected one of fig4, fig5, fig6, fig7, fig8")]
    UnknownPreset(String),

    #[error("sweep produced no rows to write")]
    EmptyRows,

    #[error("config file {path}: {message}")]
    ConfigFile { path: String, message: String },

    #[error("sweep spec: {0}")]
    InvalidSweep(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
