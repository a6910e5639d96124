use thiserror::Error;

/// Failure modes shared by every advice algorithm.
///
/// Running out of fuel is an ordinary outcome of a semi-decision search, not
/// a bug; callers usually cannot tell it apart from a broken promise.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("fuel exhausted: {0}")]
    FuelExhausted(String),

    #[error("bound stream `{stream}` is not monotone at index {index}")]
    MonotonicityViolation { stream: &'static str, index: usize },

    #[error("advice violated: {0}")]
    AdviceViolated(String),

    #[error("advice suspect: {0}")]
    AdviceSuspect(String),

    #[error("observed {observed} clusters but advice claims {advised}")]
    ClusterOvershoot { observed: usize, advised: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by the command line front end and the C ABI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Ok,
    InputError,
    FuelExhausted,
    AdviceSuspect,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::InputError => 2,
            Outcome::FuelExhausted => 3,
            Outcome::AdviceSuspect => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Ok => "OK",
            Outcome::InputError => "INPUT_ERROR",
            Outcome::FuelExhausted => "FUEL_EXHAUSTED",
            Outcome::AdviceSuspect => "ADVICE_SUSPECT",
        }
    }
}

impl Error {
    pub fn outcome(&self) -> Outcome {
        match self {
            Error::FuelExhausted(_) => Outcome::FuelExhausted,
            Error::MonotonicityViolation { .. }
            | Error::AdviceViolated(_)
            | Error::AdviceSuspect(_)
            | Error::ClusterOvershoot { .. } => Outcome::AdviceSuspect,
            Error::PreconditionViolated(_) | Error::InvalidInput(_) => Outcome::InputError,
        }
    }

    pub(crate) fn fuel(what: impl Into<String>) -> Self {
        Error::FuelExhausted(what.into())
    }

    pub(crate) fn input(what: impl Into<String>) -> Self {
        Error::InvalidInput(what.into())
    }
}
