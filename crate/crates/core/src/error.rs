use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("indeterminate valuation: every term lies at or above precision {0}")]
    IndeterminateValuation(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("negative valuation: {0}")]
    NegativeValuation(String),
    #[error("series over different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("duplicate slope {0} in affine family")]
    DuplicateSlope(i64),
    #[error("empty affine family")]
    EmptyFamily,
    #[error("no admissible γ below the approach cut")]
    NoAdmissibleGamma,
    #[error("every intercept is infinite")]
    AllInfinite,
    #[error("approximant generator is not marked cofinal")]
    NotCofinal,
    #[error("approximation type is not immediate: {0}")]
    NotImmediate(String),
    #[error("marker violation: {0}")]
    MarkerViolation(String),
    #[error("no stable value or affine law within the generator budget: {0}")]
    NotStabilized(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("coefficient cancellation: {0}")]
    CoefficientCancellation(String),
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),
    #[error("witness search exhausted without success")]
    WitnessSearchFailed,
    #[error("exponent outside the supported domain: {0}")]
    ExponentDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    /// Errors that signal a disagreement between two exact derivations.
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }

    /// Stable short name for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::IndeterminateValuation(_) => "indeterminate-valuation",
            Error::InsufficientPrecision(_) => "insufficient-precision",
            Error::NegativeValuation(_) => "negative-valuation",
            Error::PrimeMismatch(..) => "prime-mismatch",
            Error::Precondition(_) => "precondition",
            Error::DuplicateSlope(_) => "duplicate-slope",
            Error::EmptyFamily => "empty-family",
            Error::NoAdmissibleGamma => "no-admissible-gamma",
            Error::AllInfinite => "all-infinite",
            Error::NotCofinal => "not-cofinal",
            Error::NotImmediate(_) => "not-immediate",
            Error::MarkerViolation(_) => "marker-violation",
            Error::NotStabilized(_) => "not-stabilized",
            Error::Inconsistency(_) => "inconsistency",
            Error::CoefficientCancellation(_) => "coefficient-cancellation",
            Error::IntegralityViolation(_) => "integrality-violation",
            Error::WitnessSearchFailed => "witness-search-failed",
            Error::ExponentDomain(_) => "exponent-domain",
        }
    }
}
