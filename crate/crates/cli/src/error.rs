use arithfn_core::Error;

/// Exit 2 for bad arguments, 1 for runtime failures and failed checks.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
    /// A check failed; the report was still written.
    ChecksFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) | CliError::ChecksFailed => 1,
        }
    }

    /// Core errors raised while validating parameters.
    pub fn usage(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn runtime(e: Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
