use assort_core::AssortError;

/// Exit code 2: bad input or usage. Exit code 3: the computation is
/// degenerate for this input (valid files, no meaningful answer).
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<AssortError> for CliError {
    fn from(e: AssortError) -> Self {
        let code = match e {
            AssortError::SelfLoop { .. }
            | AssortError::DuplicateEdge { .. }
            | AssortError::ParseEdge { .. }
            | AssortError::UnknownNode { .. }
            | AssortError::RaggedRow { .. }
            | AssortError::AttributeFormat(_)
            | AssortError::InvalidConfig(_)
            | AssortError::InvalidNode(_)
            | AssortError::DirectedUnsupported(_)
            | AssortError::WrongColumnKind { .. } => EXIT_INPUT,
            AssortError::NonConvergence { .. }
            | AssortError::DegenerateAttribute(_)
            | AssortError::EmptyMixing
            | AssortError::Disconnected(_)
            | AssortError::Infeasible(_)
            | AssortError::TooFewComparable { .. } => EXIT_DEGENERATE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::usage(format!("csv error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(format!("json error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
