use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("unstable Hamiltonian ({detail}); critical coupling g_cr = {g_cr}")]
    Unstable { g_cr: f64, detail: String },
    #[error("I/O error: {0}")]
    Io(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Unstable { .. } => 3,
            CliError::Io(_) => 4,
            CliError::Decomposition(_) => 5,
        }
    }

    pub(crate) fn config(e: impl std::fmt::Display) -> Self {
        CliError::Config(e.to_string())
    }
}
