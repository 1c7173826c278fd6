use thiserror::Error;

/// Errors raised by graph construction and graph-level queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{kind} requires {constraint}, got {got}")]
    Parameter {
        kind: &'static str,
        constraint: &'static str,
        got: String,
    },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} is not present")]
    MissingEdge(usize, usize),
    #[error("graph on {n} vertices exceeds the canonicalization bound {bound}")]
    CanonicalBound { n: usize, bound: usize },
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("graph6 encoding supports at most {max} vertices, got {n}")]
    Graph6TooLarge { n: usize, max: usize },
    #[error("multiplicity list has {got} entries for {expected} graphs")]
    MultiplicityLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("family {family} requires k >= {min_k}, got k = {k}")]
    KBelowMinimum { family: String, min_k: i64, k: i64 },
    #[error("unknown family name {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    Empty,
    #[error("tolerance {0:e} is below the supported minimum 1e-12")]
    Tolerance(f64),
    #[error("graph is disconnected; the Perron vector needs an irreducible Q-matrix")]
    Disconnected,
    #[error("graph needs at least {0} vertices")]
    TooSmall(usize),
    #[error("graph has no edges")]
    Edgeless,
    #[error(
        "power iteration did not converge: residual {residual:e} after {iterations} iterations"
    )]
    NonConvergence {
        residual: f64,
        iterations: usize,
        best_q: f64,
        best_vector: Vec<f64>,
    },
    #[error("rotation precondition violated at vertex {vertex}: {reason}")]
    Rotation { vertex: usize, reason: &'static str },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("polynomial has no real root at k = {0}")]
    NoRealRoot(i64),
    #[error("tolerance {0:e} is below the supported minimum 1e-12")]
    Tolerance(f64),
    #[error("matrix is not square ({rows} rows, row {row} has {cols} columns)")]
    NotSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },
    #[error("matrix dimension {0} exceeds the supported maximum 8")]
    TooLarge(usize),
    #[error("partition is not equitable: cell {cell_i} -> cell {cell_j}, vertex {v} has {count_v} neighbours but vertex {u} has {count_u}")]
    NotEquitable {
        cell_i: usize,
        cell_j: usize,
        v: usize,
        count_v: usize,
        u: usize,
        count_u: usize,
    },
    #[error("partition does not cover the vertex set exactly once: {0}")]
    BadPartition(String),
    #[error("no symbolic quotient template for family {0}")]
    NoTemplate(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumerateError {
    #[error("edge count {m} exceeds the enumeration cap {cap}")]
    EdgeCap { m: usize, cap: usize },
    #[error("vertex bound {max_n} exceeds the enumeration cap {cap}")]
    VertexCap { max_n: usize, cap: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Top-level error for the verification suites and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad parameters rather than the environment.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Io { .. } | Error::Json(_))
    }
}
