use thiserror::Error;

/// Errors produced by graph construction, samplers, and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid generator spec `{0}`")]
    InvalidGenerator(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph `{0}` is not bipartite")]
    NotBipartite(String),
    #[error("vertex {vertex} out of range for graph with {size} vertices")]
    VertexOutOfRange { vertex: usize, size: usize },
    #[error("{name} must be even, got {value}")]
    OddParameter { name: &'static str, value: usize },
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("ball is not of exact radius")]
    BallNotExact,
    #[error("anchor vertex lies inside the ball")]
    AnchorInBall,
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("the homomorphism set is empty")]
    EmptyHomomorphismSet,
    #[error("enumeration count {count} exceeds the cap {cap}")]
    CountAboveCap { count: String, cap: usize },
    #[error("walk never hits level {0}")]
    LevelNotHit(i64),
    #[error("invalid layer decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("support mismatch: {0}")]
    SupportMismatch(String),
    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
