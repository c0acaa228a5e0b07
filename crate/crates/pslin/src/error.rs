use num_bigint::BigUint;

/// Errors surfaced by the library. Numeric code never silently rounds: if a
/// decision cannot be certified below the precision cap it comes back as
/// [`Error::PrecisionOverflow`].
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("undecided at precision cap of {cap} bits ({context})")]
    PrecisionOverflow { cap: u32, context: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("equation c={c} d={d} e={e} is not solvable in the positive integers")]
    NotSolvableInN { c: BigUint, d: BigUint, e: BigUint },

    #[error("{0} is not a member of the sequence")]
    NotMember(BigUint),

    #[error("search budget exhausted after {convergents_tried} convergents (largest q {largest_q}), {pairs_found} pairs found")]
    BudgetExhausted {
        convergents_tried: usize,
        largest_q: BigUint,
        pairs_found: usize,
    },

    #[error("memory budget exceeded: {0}")]
    MemoryBudget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }
}
