use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("cannot take the square root of negative value {0}")]
    NegativeRadicand(String),
    #[error("series is not a unit: its value at the center is zero")]
    NotAUnit,
    #[error("Hensel seed squared differs from the constant term")]
    BadSeed,
    #[error("Hensel seed is zero; the square root lift is not unique")]
    ZeroSeed,
    #[error("duplicate CRT center {0}")]
    DuplicateCenter(String),
    #[error("root counting of the zero polynomial")]
    ZeroPolynomial,
    #[error("series live at different centers or orders")]
    SeriesMismatch,
    #[error("bad interval: lower end exceeds upper end")]
    EmptyInterval,
    #[error("parse error in {input:?} at byte {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
}
