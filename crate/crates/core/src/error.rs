use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("cap exceeded: more than {cap} elements")]
    CapExceeded { cap: u128 },

    #[error("element cap exceeded: group has more than {cap} elements")]
    ElementCapExceeded { cap: usize },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("orbit structure of the two groups does not match")]
    OrbitMismatch,

    #[error("map is not an isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("identity element in connection set")]
    IdentityInConnection,

    #[error("connection set not normal")]
    NotNormal,

    #[error("group is not regular")]
    NotRegular,

    #[error("group is not almost simple: {0}")]
    NotAlmostSimple(String),

    #[error("no involution t with aut(G) = C(t)Inn(G) was found")]
    NoSuchInvolution,

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("element is not an involution of the socle")]
    NotEvenInvolution,

    #[error("element is not odd")]
    NotOdd,

    #[error("partition does not cover the point set")]
    BadPartition,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
