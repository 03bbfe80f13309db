use thiserror::Error;

/// Errors produced by graph loading and assortativity computations.
#[derive(Debug, Error)]
pub enum AssortError {
    #[error("self-loop at line {line}")]
    SelfLoop { line: usize },
    #[error("duplicate edge at line {line}")]
    DuplicateEdge { line: usize },
    #[error("cannot parse edge at line {line}: {msg}")]
    ParseEdge { line: usize, msg: String },
    #[error("unknown node id `{id}` at line {line}")]
    UnknownNode { line: usize, id: String },
    #[error("ragged row at line {line}: expected {expected} fields, got {got}")]
    RaggedRow {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("attribute file error: {0}")]
    AttributeFormat(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("node index {0} out of range")]
    InvalidNode(usize),
    #[error("operation not supported on directed graphs: {0}")]
    DirectedUnsupported(String),
    #[error("power method did not converge in {iterations} iterations (last residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("degenerate attribute: {0}")]
    DegenerateAttribute(String),
    #[error("empty mixing matrix: every edge term touches a missing value")]
    EmptyMixing,
    #[error("graph is disconnected: {0}")]
    Disconnected(String),
    #[error("infeasible block specification: {0}")]
    Infeasible(String),
    #[error("too few comparable nodes: need at least {needed}, got {got}")]
    TooFewComparable { needed: usize, got: usize },
    #[error("expected a {expected} column")]
    WrongColumnKind { expected: &'static str },
}

pub type Result<T> = std::result::Result<T, AssortError>;
