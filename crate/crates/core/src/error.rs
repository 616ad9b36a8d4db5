use thiserror::Error;

/// Errors raised anywhere in the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad JSON, unknown example name, schema violation.
    #[error("input error: {0}")]
    Input(String),

    /// Input parsed but describes an invalid arrangement.
    #[error("invalid arrangement: {0}")]
    Validation(String),

    /// A mathematical invariant that must hold failed; this signals a bug or corrupt input.
    #[error("invariant violation [{name}]: {detail}")]
    Invariant { name: &'static str, detail: String },

    /// A computation would exceed its configured size budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Shapes of operands do not agree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    pub fn invariant(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            name,
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Validation(_) => 2,
            Error::Invariant { .. } | Error::Dimension(_) => 3,
            Error::Resource(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
