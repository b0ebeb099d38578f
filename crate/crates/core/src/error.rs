use thiserror::Error;

/// Errors raised by the engine. Verification failures are reported as data
/// (see [`crate::gsb::CompositionReport`]), not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate letter `{0}` in alphabet")]
    DuplicateLetter(String),
    #[error("invalid letter name `{0}`")]
    InvalidLetterName(String),
    #[error("unknown letter in `{0}`")]
    UnknownLetter(String),
    #[error("alphabet has too many letters ({0})")]
    AlphabetTooLarge(usize),
    #[error("empty word where a nonempty word is required")]
    EmptyWord,
    #[error("`{0}` is not an associative Lyndon-Shirshov word")]
    NotAlsw(String),
    #[error("`{factor}` does not occur in `{word}` at offset {offset}")]
    FactorMismatch {
        word: String,
        factor: String,
        offset: usize,
    },
    #[error("not a Lie element: leading word `{0}` is not an ALSW")]
    NotLie(String),
    #[error("zero polynomial has no leading word")]
    ZeroPolynomial,
    #[error("non-unit leading coefficient {0} over the integers")]
    NonUnitLeading(String),
    #[error("non-unit elimination: cannot divide {num} by {den} over the integers")]
    NonUnitElimination { num: String, den: String },
    #[error("coefficient overflow")]
    Overflow,
    #[error("basis has not been verified by a passing composition check")]
    UnverifiedBasis,
    #[error("rewriting system is not complete")]
    IncompleteSystem,
    #[error("degree {degree} exceeds the instantiation bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("letter name `{0}` is reserved")]
    ReservedLetter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
