use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("expression references m{index} but the parameter vector has only {len} entries")]
    ParameterIndex { index: usize, len: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invariant `{0}` has not passed the translation-invariance check")]
    UnverifiedInvariant(String),

    #[error("invariant `{expr}` is not translation invariant: |delta| = {delta:e} at shift {shift}")]
    NotInvariant { expr: String, shift: i64, delta: f64 },

    #[error("{family}: parameter range violated: {condition}")]
    RangeViolation { family: String, condition: String },

    #[error("x = {x} lies outside the admissible domain of {family}")]
    DomainViolation { family: String, x: f64 },

    #[error("index k = {k} is not admissible for {family}")]
    InadmissibleIndex { family: String, k: usize },

    #[error("Gamma function pole at argument {0}")]
    GammaPole(f64),

    #[error("non-positive radicand {value:e} in {context}")]
    NegativeRadicand { context: String, value: f64 },

    #[error("denominator vanishes near x = {x} ({context})")]
    DenominatorZero { context: String, x: f64 },

    #[error("imaginary residue {residue:e} exceeds {limit:e} at x = {x}")]
    ImaginaryResidue { x: f64, residue: f64, limit: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
}

impl Error {
    /// True for failures of the numerics themselves (poles, vanishing
    /// denominators, non-finite values) as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::GammaPole(_)
                | Error::NegativeRadicand { .. }
                | Error::DenominatorZero { .. }
                | Error::ImaginaryResidue { .. }
                | Error::NonFinite(_)
                | Error::NonConvergence(_)
        )
    }
}
