use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("channel parameter |p| = {0} exceeds 1, map is not CPTP")]
    NonCptp(f64),

    #[error("relative entropy diverges: weight {weight:.3e} lies outside the support of the reference state")]
    Divergence { weight: f64 },

    #[error("invalid kernel parameters: {0}")]
    InvalidKernel(String),

    #[error("step {step} exceeds the accuracy limit {limit}")]
    StepTooLarge { step: f64, limit: f64 },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("|p(t)| never reaches {target} on [0, {horizon}]")]
    NotFound { target: f64, horizon: f64 },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("{0}")]
    Inconsistent(String),
}
