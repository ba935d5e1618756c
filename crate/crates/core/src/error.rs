use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("maps are not composable: {0}")]
    NotComposable(String),

    #[error("subgroup is not normal in its parent")]
    NotNormal,

    #[error("subgroup is not invariant under the action")]
    NotInvariant,

    #[error("group is not nilpotent")]
    NotNilpotent,

    #[error("action admits no nilpotent structure")]
    NonNilpotentAction,

    #[error("{0} and {1} are not coprime")]
    NotCoprime(BigInt, BigInt),

    #[error("number set entries must be >= 1")]
    ZeroInNumSet,

    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBound { order: usize, bound: usize },

    #[error("depth {depth} out of range (families materialized up to {max})")]
    DepthOutOfRange { depth: usize, max: usize },

    #[error("induced action does not descend: actor element {element} still acts nontrivially after localization")]
    ActionDescent { element: usize },

    #[error("cannot enumerate elements of an infinite group")]
    InfiniteGroup,

    #[error("invalid {kind}: {reason}")]
    Invalid { kind: &'static str, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn invalid(kind: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            kind,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
