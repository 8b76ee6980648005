use thiserror::Error;

/// Errors raised by the algebra, the parser and the search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("group parameter mismatch: d={left} vs d={right}")]
    ParamsMismatch { left: u32, right: u32 },

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("coefficient ring {0} is not a field")]
    NotAField(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{what}: {needed} exceeds the configured cap of {cap}")]
    LimitExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("support of the product escapes the codomain window at {0}")]
    WindowOverflow(String),

    #[error("element is not in the augmentation ideal of the base group: {0}")]
    NotInAugmentationIdeal(String),

    #[error("element has a term outside the base group: {0}")]
    NotInBaseGroup(String),

    #[error("element has nonzero augmentation {0}")]
    NonzeroAugmentation(String),

    #[error("lamp order d={d} does not match the field characteristic {p}")]
    CharacteristicMismatch { d: u32, p: u64 },

    #[error("relator index {index} is beyond the truncation L={max}")]
    RelatorOutOfRange { index: usize, max: usize },

    #[error("malformed document: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
