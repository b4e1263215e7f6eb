use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Algebra(#[from] susp_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("invalid matrix: {0}")]
    Matrix(String),
    #[error("invalid environment variable {name}: {message}")]
    Env { name: &'static str, message: String },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Algebra(e) => e.code(),
            CliError::Usage(_) => "usage",
            CliError::Matrix(_) => "invalid_matrix",
            CliError::Env { .. } => "invalid_environment",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut body = json!({ "code": self.code(), "message": self.to_string() });
        if let CliError::Algebra(susp_core::Error::NotUfd { witness }) = self {
            body["witness"] = json!(witness);
        }
        json!({ "error": body })
    }
}
