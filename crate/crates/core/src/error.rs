use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("shape mismatch: expected (n={expected_n}, d={expected_d}), got (n={n}, d={d})")]
    ShapeMismatch {
        expected_n: usize,
        expected_d: usize,
        n: usize,
        d: usize,
    },

    #[error("state is not normalized: norm = {0}")]
    NotNormalized(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid party subset: {0}")]
    InvalidSubset(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid GHZ-symmetric parameters: {0}")]
    InvalidParams(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownState(String),

    #[error("mixer is not certified free: {0}")]
    UncertifiedMixer(String),

    #[error("no certified mixture found with weight up to {cap}")]
    NoCertifiedMixture { cap: f64 },

    #[error("witness is not verified to lie in [0, 1] on the free set: {0}")]
    UnverifiedWitness(String),

    #[error("source state is free (geometric measure {0}); no conversion bound exists")]
    FreeSource(f64),

    #[error("no robustness upper bound available for the target state")]
    MissingRobustnessBound,

    #[error("probability {p} exceeds the certified maximum {p_max}")]
    ProbabilityExceedsBound { p: f64, p_max: f64 },

    #[error("constraint system is inconsistent: {0}")]
    Inconsistent(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.line() == 0 {
            Error::Json(e.to_string())
        } else {
            Error::Json(format!("line {}, column {}: {}", e.line(), e.column(), e))
        }
    }
}
