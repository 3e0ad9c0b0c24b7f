use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CpgError {
    #[error("degenerate path for vertex `{vertex}`: {reason}")]
    DegeneratePath { vertex: String, reason: String },

    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("endpoint index must be 1 or 2, got {0}")]
    EndpointIndex(u8),

    #[error("vertex `{0}` has no color")]
    MissingColor(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("size limit exceeded: {size} > {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("representation has {bends} bends where at most {allowed} are allowed")]
    TooManyBends { bends: usize, allowed: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("improper coloring: {0}")]
    ImproperColoring(String),

    #[error("region too small at scale {scale}: {detail}")]
    RegionTooSmall { scale: u32, detail: String },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, CpgError>;
