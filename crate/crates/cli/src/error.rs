use std::process::ExitCode;

use graded_zeta::analytic::AnalyticError;
use graded_zeta::verify::VerifyError;
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    Compute(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Parse(_) => ExitCode::from(2),
            _ => ExitCode::from(1),
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self {
            CliError::Parse(_) => "parse",
            CliError::Analytic(AnalyticError::Pole { .. })
            | CliError::Analytic(AnalyticError::HurwitzPole(_)) => "pole",
            CliError::Analytic(AnalyticError::DivergentRegion { .. }) => "divergent_region",
            CliError::Analytic(_) | CliError::Verify(_) | CliError::Compute(_) => "compute",
            CliError::Io(_) => "io",
        };
        let mut doc = json!({ "error": kind, "message": self.to_string() });
        if let CliError::Analytic(AnalyticError::Pole { pole, residue }) = self {
            doc["pole"] = json!(pole);
            doc["residue"] = json!(residue.to_string());
        }
        doc
    }
}

impl From<graded_zeta::hilbert::HilbertError> for CliError {
    fn from(e: graded_zeta::hilbert::HilbertError) -> Self {
        CliError::Compute(e.to_string())
    }
}
