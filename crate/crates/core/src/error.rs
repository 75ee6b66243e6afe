use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("more than {cap} automorphisms")]
    AutCapExceeded { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("E({n}, M) precondition failed: {condition}")]
    EPrecondition { n: usize, condition: String },

    #[error("set is not a subgroup")]
    NotASubgroup,

    #[error("connection set contains the identity")]
    IdentityInSet,

    #[error("connection set is not closed under inverses")]
    AsymmetricSet,

    #[error("connection set is empty")]
    EmptySet,

    #[error("a graph on {vcount} vertices cannot be written as {format}")]
    OversizeForFormat { vcount: usize, format: &'static str },

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("{count} subsets exceed the cap of {cap}")]
    SizeCap { count: u128, cap: u64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error at position {position} (`{token}`): {message}")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },

    #[error("invalid group descriptor `{descriptor}`: {message}")]
    Descriptor { descriptor: String, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown repro case `{0}`")]
    UnknownCase(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            token: token.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by a configured resource cap or search budget.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::AutCapExceeded { .. }
                | Error::BudgetExceeded { .. }
                | Error::SizeCap { .. }
        )
    }
}
