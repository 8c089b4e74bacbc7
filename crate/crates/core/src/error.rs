use thiserror::Error;

/// Errors shared by the word algebra, plat invariants, moves, and search layers.
///
/// Variant names are stable and appear verbatim in CLI diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("InvalidStrandCount: k = {k} (need k >= 1, and k >= 2 for any crossing)")]
    InvalidStrandCount { k: u16 },
    #[error("IndexOutOfRange: token {token} is not a generator index for k = {k}")]
    IndexOutOfRange { token: i64, k: u16 },
    #[error("MalformedToken: {token:?} is not a signed integer")]
    MalformedToken { token: String },
    #[error("StrandMismatch: left operand has k = {left}, right operand has k = {right}")]
    StrandMismatch { left: u16, right: u16 },
    #[error("OddStrandCount: k = {k} (this operation needs an even strand count)")]
    OddStrandCount { k: u16 },
    #[error("EvenHalfIndex: k = {k} has n = {n} even; only the odd-half case is defined")]
    EvenHalfIndex { k: u16, n: u16 },
    #[error("OddHalfIndex: k = {k} has n = {n} odd; only the even-half case is defined")]
    OddHalfIndex { k: u16, n: u16 },
    #[error("InvalidPosition: strand position {position} cannot be deleted for k = {k}")]
    InvalidPosition { position: u16, k: u16 },
    #[error("PatternMismatch: rule {rule} does not match at position {position}")]
    PatternMismatch { rule: &'static str, position: usize },
    #[error("SuffixMismatch: word does not end with the two-letter suffix required for i = {index}")]
    SuffixMismatch { index: u16 },
    #[error("ParityMismatch: index {index} has the wrong parity for this move")]
    ParityMismatch { index: u16 },
    #[error("LetterMismatch: word does not end with the letter this move removes")]
    LetterMismatch,
    #[error("EmptyWord: the move consumes a letter but the word is empty")]
    EmptyWord,
    #[error("RangeError: move parameter l = {l} lies outside 3..={max}")]
    RangeError { l: u16, max: u16 },
    #[error("FactorizationFailed: {reason}")]
    FactorizationFailed { reason: String },
    #[error("ConfigError: {reason}")]
    ConfigError { reason: String },
    #[error("UnknownMove: {text:?} is not a valid move string")]
    UnknownMove { text: String },
}

pub type Result<T> = std::result::Result<T, Error>;
