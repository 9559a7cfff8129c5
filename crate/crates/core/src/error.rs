use thiserror::Error;

/// Errors raised by the laboratory.
///
/// The `*Violation` variants are raised when a cross-check that holds
/// unconditionally fails; they indicate an arithmetic bug rather than bad
/// input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial is not monic with integer coefficients")]
    NotMonic,
    #[error("polynomial is reducible over the rationals")]
    Reducible,
    #[error("polynomial has {real} real roots, expected {degree}")]
    NotTotallyReal { real: usize, degree: usize },
    #[error("elements belong to different fields")]
    MixedFields,
    #[error("embedding index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("operation requires degree 2, field has degree {0}")]
    UnsupportedDegree(usize),
    #[error("element {0} is not a unit")]
    NotAUnit(String),
    #[error("no separating embedding for unit {0}")]
    SeparationViolation(String),
    #[error("box radius {radius} must be smaller than the translate {x}")]
    RadiusTooLarge { radius: String, x: String },
    #[error("prediction violated: {0}")]
    PredictionViolation(String),
    #[error("envelope violated: {0}")]
    EnvelopeViolation(String),
    #[error("sets live in different ambient rings")]
    MixedAmbient,
    #[error("degree {degree} exceeds section cap {cap}")]
    CapExceeded { degree: usize, cap: usize },
    #[error("set has {0} elements, need at least 2")]
    TooSmall(usize),
    #[error("degree {degree} is below the required minimum {min}")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("counting identity violated: {0}")]
    IdentityViolation(String),
    #[error("pivot is not an element of P")]
    PivotNotInP,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("no feasible point in the search box")]
    NoFeasiblePoint,
    #[error("alpha = {alpha} must exceed sqrt(q) + 1 = {min}")]
    AlphaTooSmall { alpha: f64, min: f64 },
    #[error("work {work} exceeds budget {budget}")]
    BudgetExceeded { work: u128, budget: u128 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotMonic => "NotMonic",
            Error::Reducible => "Reducible",
            Error::NotTotallyReal { .. } => "NotTotallyReal",
            Error::MixedFields => "MixedFields",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::UnsupportedDegree(_) => "UnsupportedDegree",
            Error::NotAUnit(_) => "NotAUnit",
            Error::SeparationViolation(_) => "SeparationViolation",
            Error::RadiusTooLarge { .. } => "RadiusTooLarge",
            Error::PredictionViolation(_) => "PredictionViolation",
            Error::EnvelopeViolation(_) => "EnvelopeViolation",
            Error::MixedAmbient => "MixedAmbient",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::TooSmall(_) => "TooSmall",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::IdentityViolation(_) => "IdentityViolation",
            Error::PivotNotInP => "PivotNotInP",
            Error::DomainError(_) => "DomainError",
            Error::NoFeasiblePoint => "NoFeasiblePoint",
            Error::AlphaTooSmall { .. } => "AlphaTooSmall",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::Unsupported(_) => "Unsupported",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
