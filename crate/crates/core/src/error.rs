use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("minimal resolution requested for inhomogeneous input: {0}")]
    NotHomogeneous(String),
    #[error("ring is not known to be a domain")]
    NotADomain,
    #[error("depth is infinite: the module equals its product with the ideal")]
    DepthInfinite,
    #[error("regular-sequence search exhausted its budget at length {found}, Ext route gives {expected}")]
    SearchExhausted { found: usize, expected: usize },
    #[error("projective dimension is infinite or exceeds the bound {0}")]
    InfiniteProjectiveDimension(usize),
    #[error("resolution over a quotient ring did not reach the required length {0}")]
    ResolutionLength(usize),
    #[error("algebra has no involution")]
    NoInvolution,
    #[error("characteristic 2 is not supported for quaternion algebras")]
    CharacteristicTwo,
    #[error("not an order in a central simple algebra: generic rank {0} is not a perfect square")]
    NotSquareRank(usize),
    #[error("pair search exhausted its budget of {budget} candidates; best candidate: {best}")]
    BudgetExhausted { budget: usize, best: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
