use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("matrix is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("vertex set is not centrally symmetric: -v missing for vertex {0}")]
    NotCentrallySymmetric(usize),

    #[error("vertex set does not span the ambient space")]
    NotFullDimensional,

    #[error("dimension {dim} exceeds the limit {limit} for {what}")]
    DimensionTooLarge {
        what: &'static str,
        dim: usize,
        limit: usize,
    },

    #[error("cone generators do not span the ambient space")]
    DegenerateCone,

    #[error("cone is not salient: generator {0} has its negative in the cone")]
    NotSalient(usize),

    #[error("unit effect is not strictly positive on generator {0}")]
    UnitNotPositive(usize),

    #[error("unsupported space kind: {0}")]
    UnsupportedKind(String),

    #[error("unsupported space pair: {0} x {1}")]
    UnsupportedPair(String, String),

    #[error("vertex budget exceeded: {count} > {limit}")]
    VertexBudgetExceeded { count: usize, limit: usize },

    #[error("budget exceeded: {count} > {limit} ({what})")]
    BudgetExceeded {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    #[error("tensor is zero")]
    ZeroTensor,

    #[error("operator is not a contraction: norm {norm} > 1")]
    NotContraction { norm: f64 },

    #[error("space is not two-dimensional (dim {0})")]
    NotTwoDimensional(usize),

    #[error("invalid probability vector: {0}")]
    BadProbabilityVector(String),

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numerical check failed: {0}")]
    Numerical(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    /// Budget and dimension-cap failures, as opposed to malformed input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::DimensionTooLarge { .. }
                | Error::VertexBudgetExceeded { .. }
                | Error::BudgetExceeded { .. }
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
