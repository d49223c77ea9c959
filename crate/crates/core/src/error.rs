use alloc::string::String;

/// Errors raised by the graph, spectral and sampling routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has invalid weight {w}; weights must be finite and positive")]
    InvalidWeight { u: usize, v: usize, w: f64 },
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("cluster pair has an empty union")]
    EmptyPair,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("{0} is undefined: denominator volume is zero")]
    UndefinedRatio(&'static str),
    #[error("vertex {0} has zero degree")]
    DegenerateDegree(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },
    #[error("input has {n} vertices, limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("degree oracle reports {reported} for vertex {vertex} but {seen} incident weight has been seen")]
    InconsistentOracle { vertex: usize, reported: f64, seen: f64 },
    #[error("malformed cover: edge ({0}, {1}) does not join a tail copy to a head copy")]
    MalformedCover(usize, usize),
    #[error("no feasible cluster family exists")]
    Infeasible,
    #[error("vector is identically zero")]
    ZeroVector,
    #[error("graph has no edges")]
    NoEdges,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("spectral quantity {0} vanishes; oversampling factor is unbounded")]
    DegenerateSpectrum(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
