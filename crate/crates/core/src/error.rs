use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("invalid ring parameters: {0}")]
    BadRing(String),
    #[error("element is not a unit (valuation {0} > 0)")]
    NotAUnit(u32),
    #[error("cannot divide by pi^{wanted}: valuation is only {actual}")]
    DivisionByPi { wanted: u32, actual: u32 },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    BadGroup(String),
    #[error("closure bound {0} exceeded while generating group")]
    ClosureBound(usize),
    #[error("rows of rels do not lie in the span of gens")]
    RelsOutsideSpan,
    #[error("precision exhausted: {context} needs trust >= {needed} but only {available} is certified; raise m")]
    Precision {
        context: String,
        needed: u32,
        available: u32,
    },
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("invalid module operation: {0}")]
    BadModule(String),
    #[error("scenario error: {0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
