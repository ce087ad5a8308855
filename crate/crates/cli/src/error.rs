use thiserror::Error;

/// Errors surfaced by the command-line tools, grouped by exit code:
/// 1 for usage problems, 2 when verification or certification fails,
/// 3 for file and format trouble.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{origin}: {message}")]
    Format { origin: String, message: String },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("no certifiable instance after {retries} attempts (n={n}, delta={delta})")]
    GenerationExhausted { n: usize, delta: f64, retries: usize },

    #[error("hull radii sum to zero; tightness ratio undefined")]
    DegenerateHull,

    #[error("verification failed: {0}")]
    Verify(String),

    #[error(transparent)]
    Core(#[from] intlin::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verify(_)
            | CliError::GenerationExhausted { .. }
            | CliError::DegenerateHull
            | CliError::Core(_) => 2,
            CliError::Io { .. } | CliError::Format { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
