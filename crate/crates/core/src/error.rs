//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by model construction, simulation, and analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter failed validation. The string names the offending key.
    #[error("invalid parameter {key}: {reason}")]
    InvalidParameter { key: String, reason: String },

    /// Configuration text failed to parse or validate; all problems are
    /// collected so the user can fix them in one pass.
    #[error("configuration errors:\n{}", format_issues(.0))]
    Config(Vec<ConfigIssue>),

    /// The integrator time step exceeds the resolution bound for the
    /// stiffest trap frequency.
    #[error("time step {dt:.3e} s exceeds the allowed maximum {max:.3e} s (1/50 of the steepest trap period)")]
    TimeStepTooLarge { dt: f64, max: f64 },

    /// A state became non-finite during integration.
    #[error("non-finite state at t = {t:.6e} s: {what}")]
    NonFinite { t: f64, what: String },

    /// An analysis routine received input it cannot work with.
    #[error("analysis error: {0}")]
    Analysis(String),

    /// A scenario could not be run as requested.
    #[error("scenario error: {0}")]
    Scenario(String),

    /// Filesystem or serialization failure while writing outputs.
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON serialization failure.
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

/// One problem found while parsing or validating a configuration file.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ConfigIssue {
    /// 1-based line number in the config text, 0 when the issue is not tied
    /// to a specific line (e.g. a missing required key).
    pub line: usize,
    /// Key involved, when known.
    pub key: String,
    /// Human-readable description.
    pub message: String,
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}: {}", self.line, self.key, self.message)
        } else {
            write!(f, "{}: {}", self.key, self.message)
        }
    }
}

fn format_issues(issues: &[ConfigIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub type Result<T> = std::result::Result<T, Error>;
