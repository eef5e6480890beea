use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("looping edge {0} is not permitted here")]
    LoopingEdge(usize),

    #[error("invalid theory: {0}")]
    InvalidTheory(String),

    #[error("invalid subgraph: {0}")]
    InvalidSubgraph(String),

    #[error("momentum error: {0}")]
    Momentum(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("enumeration budget exceeded: {needed} > {limit}; {advice}")]
    Budget {
        needed: String,
        limit: String,
        advice: String,
    },

    #[error("integration did not converge: {0}")]
    NotConverged(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid_graph",
            Error::Disconnected => "disconnected",
            Error::LoopingEdge(_) => "looping_edge",
            Error::InvalidTheory(_) => "invalid_theory",
            Error::InvalidSubgraph(_) => "invalid_subgraph",
            Error::Momentum(_) => "momentum",
            Error::Dimension(_) => "dimension",
            Error::InexactDivision(_) => "inexact_division",
            Error::Truncation(_) => "truncation",
            Error::Unsupported(_) => "unsupported",
            Error::Budget { .. } => "budget",
            Error::NotConverged(_) => "not_converged",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::NotConverged(_))
    }

    pub(crate) fn budget(needed: impl ToString, limit: impl ToString, advice: &str) -> Self {
        Error::Budget {
            needed: needed.to_string(),
            limit: limit.to_string(),
            advice: advice.to_string(),
        }
    }
}
