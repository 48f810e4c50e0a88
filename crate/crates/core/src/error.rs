use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex set over {found} vertices used with graph of {expected} vertices")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("oracle limit exceeded: n = {n} > {limit}")]
    OracleLimit { n: usize, limit: usize },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("assignment covers {found} variables, formula has {expected}")]
    PartialAssignment { expected: usize, found: usize },
    #[error("model does not satisfy the NAE formula")]
    ModelNotNae,
    #[error("decoded partition failed verification")]
    WitnessRejected,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
