use thiserror::Error;

use crate::mothergraph::DigitPair;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters n={n}, b={b}: need 1 < n < b")]
    InvalidParams { n: u32, b: u32 },

    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },

    #[error("digit vector must hold at least one digit")]
    EmptyDigits,

    #[error("{value} does not fit in {width} base-{base} digits")]
    Overflow { value: String, base: u32, width: usize },

    #[error("length mismatch: {left} digits vs {right} digits")]
    LengthMismatch { left: usize, right: usize },

    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: u32, right: u32 },

    #[error("not a valid digit alignment: non-integral carry at position {position}")]
    NonIntegralCarry { position: usize },

    #[error("not a valid digit alignment: carry {carry} out of range at position {position}")]
    CarryOutOfRange { position: usize, carry: i64 },

    #[error("input {0} is not an edge of the mother graph")]
    RejectedInput(DigitPair),

    #[error("not an L-walk: {0}")]
    NotAnLWalk(String),

    #[error("malformed cycle: {0}")]
    MalformedCycle(String),

    #[error("unknown cycle index {index} (inventory holds {len} cycles)")]
    UnknownCycleIndex { index: usize, len: usize },

    #[error("cycle enumeration exceeded the cap of {cap} cycles")]
    CycleCapExceeded { cap: usize },

    #[error("string enumeration exceeded the cap of {cap} results")]
    StringCapExceeded { cap: usize },

    #[error("scan of {needed} candidates exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("invalid length {0}")]
    InvalidLength(usize),
}
