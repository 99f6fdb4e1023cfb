use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("overlapping components: {0}")]
    Overlap(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] tscale_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for regressivity and singularities, 3 for parse and configuration
    /// problems, 4 for internal tolerance failures.
    pub fn exit_code(&self) -> u8 {
        use tscale_core::Error as E;
        match self {
            CliError::Core(E::Regressivity { .. } | E::Singular { .. }) => 2,
            CliError::Core(E::Tolerance { .. } | E::NotReal { .. }) => 4,
            _ => 3,
        }
    }
}
