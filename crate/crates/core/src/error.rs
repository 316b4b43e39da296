use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("node {id} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { id: usize, node_count: usize },
    #[error("node set must be nonempty")]
    EmptySet,
    #[error("node set must be a proper subset of the graph")]
    FullSet,
    #[error("node set intersects the boundary")]
    TouchesBoundary,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("no interior: every node is on the boundary")]
    NoInterior,
    #[error("node {0} is isolated (degree 0)")]
    IsolatedNode(usize),
    #[error("graph with {nodes} nodes exceeds the limit of {limit}")]
    TooLarge { nodes: usize, limit: usize },
    #[error("eigensolver did not converge after {matvecs} matrix applications (residual {residual:.3e})")]
    NotConverged { matvecs: usize, residual: f64 },
    #[error("unexpected spectrum: {0}")]
    UnexpectedSpectrum(String),
    #[error("root bracketing failed: found {found} roots, expected {expected}")]
    RootBracketing { found: usize, expected: usize },
    #[error("degenerate embedding: all points coincide")]
    DegenerateEmbedding,
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Data,
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidParameter(_) => ErrorKind::Usage,
            Error::NotConverged { .. }
            | Error::UnexpectedSpectrum(_)
            | Error::RootBracketing { .. }
            | Error::DegenerateEmbedding => ErrorKind::Numerical,
            _ => ErrorKind::Data,
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io { path: path.display().to_string(), source }
    }
}
