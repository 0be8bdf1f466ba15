use azumaya::AzumayaError;

/// CLI-level error split by exit code: verification failures exit 1,
/// everything about the input (parse, schema, validation) exits 2.
#[derive(Debug)]
pub enum CliError {
    /// Exit code 2.
    Input(String),
    /// Exit code 1.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Verification(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Verification(m) => m,
        }
    }
}

impl From<AzumayaError> for CliError {
    fn from(e: AzumayaError) -> Self {
        match e {
            AzumayaError::VerificationFailed(_) | AzumayaError::NotACocycle { .. } => {
                CliError::Verification(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
