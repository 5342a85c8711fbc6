use thiserror::Error;

use crate::pl::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operators {first} and {second} do not commute (max commutator entry {deviation:e})")]
    NonCommuting {
        first: usize,
        second: usize,
        deviation: f64,
    },

    #[error("operator is not in the algebra of context {context}")]
    NotInAlgebra { context: String },

    #[error("context {sub} is not a subcontext of {sup}")]
    Order { sub: String, sup: String },

    #[error("sieves have different base contexts ({left} vs {right})")]
    MixedBases { left: String, right: String },

    #[error("sub-objects are defined over different posets")]
    PosetMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("unbound sentence letter p{0}")]
    UnboundAtom(u32),

    #[error("unknown state {0}")]
    UnknownState(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    /// Name of the library module the error originates from, used in CLI error reports.
    pub fn module(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) | Error::NotHermitian { .. } | Error::DimensionMismatch { .. } => {
                "hermitian-core"
            }
            Error::NonCommuting { .. } => "context-category",
            Error::NotInAlgebra { .. } | Error::Order { .. } => "spectral-presheaf",
            Error::MixedBases { .. } | Error::PosetMismatch => "topos-logic",
            Error::Precondition(_) => "quantity-value",
            Error::InternalConsistency(_) => "daseinisation",
            Error::UnboundAtom(_) | Error::UnknownState(_) | Error::Parse(_) => "pl-lang",
            Error::Json(_) => "io",
        }
    }

    /// Short machine-readable error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::NotHermitian { .. } => "not-hermitian",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NonCommuting { .. } => "non-commuting",
            Error::NotInAlgebra { .. } => "not-in-algebra",
            Error::Order { .. } => "order",
            Error::MixedBases { .. } => "mixed-bases",
            Error::PosetMismatch => "poset-mismatch",
            Error::Precondition(_) => "precondition",
            Error::InternalConsistency(_) => "internal-consistency",
            Error::UnboundAtom(_) => "unbound-atom",
            Error::UnknownState(_) => "unknown-state",
            Error::Parse(_) => "syntax",
            Error::Json(_) => "json",
        }
    }

    /// Context keys mentioned by the error, if any.
    pub fn context_keys(&self) -> Vec<String> {
        match self {
            Error::NotInAlgebra { context } => vec![context.clone()],
            Error::Order { sub, sup } => vec![sub.clone(), sup.clone()],
            Error::MixedBases { left, right } => vec![left.clone(), right.clone()],
            _ => Vec::new(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
