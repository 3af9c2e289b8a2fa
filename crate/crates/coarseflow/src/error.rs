use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: Vertex, count: usize },
    #[error("adjacent cone vertices {0} and {1}")]
    AdjacentConeVertices(Vertex, Vertex),
    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(Vertex, Vertex),
    #[error("graph is not connected")]
    NotConnected,
    #[error("{what} cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("not a geodesic: {0:?}")]
    NotGeodesic(Vec<Vertex>),
    #[error("not an automorphism: generator {index} maps edge ({u}, {v}) to a non-edge")]
    NotAutomorphism { index: usize, u: Vertex, v: Vertex },
    #[error("generator {0} does not preserve the cone vertices")]
    ConeNotPreserved(usize),
    #[error("permutation {index} is invalid: {reason}")]
    BadPermutation { index: usize, reason: String },
    #[error("invalid angle ({0}, {1}, {2}): edges must share the apex")]
    BadAngle(Vertex, Vertex, Vertex),
    #[error("angle sets live on different graphs")]
    MismatchedBase,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("F condition fails for basis element {index}: element {element} is not in F_i")]
    ConditionF { index: usize, element: usize },
    #[error("basis does not cover X: point ({v}, {z}) is missed")]
    BasisNotCovering { v: usize, z: usize },
    #[error("basis element {0} is not contained in X")]
    BasisOutsideX(usize),
    #[error("{0} is not a subgroup")]
    NotSubgroup(String),
    #[error("subset is not contained in the base set")]
    NotSubset,
    #[error("metric is not invariant under element {0}")]
    NonInvariantMetric(usize),
    #[error("{0} is not a multiple of one half")]
    NotHalfInteger(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("mismatched parameters: {0}")]
    Mismatch(String),
    #[error("move validation failed: {0}")]
    MoveValidation(String),
    #[error("stage {stage} failed: {source}")]
    Stage { stage: &'static str, source: Box<Error> },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
}

impl Error {
    /// Tags an error with the pipeline stage that raised it.
    pub fn at(self, stage: &'static str) -> Error {
        Error::Stage { stage, source: Box::new(self) }
    }

    /// True for errors caused by unreadable or malformed input.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Malformed(_) | Error::Json(_) | Error::Io(_) | Error::File { .. } => true,
            Error::Stage { source, .. } => source.is_input_error(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
