use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("no preset or family named {0:?}")]
    NotFound(String),

    #[error("degenerate series: {0}")]
    DegenerateSeries(String),

    #[error("sampler produced all-zero data ({0})")]
    SamplerDegenerate(String),

    #[error("desk-scale guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("epsilon = {eps} too large: {constraint} = {value} violates the bound")]
    EpsilonTooLarge { eps: f64, constraint: String, value: f64 },

    #[error("invalid estimate spec: {0}")]
    InvalidSpec(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error(transparent)]
    Core(#[from] torus_nls::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
