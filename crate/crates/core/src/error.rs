use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by time-scale calculus, grey-model fitting and the
/// fractional operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid time scale: {0}")]
    InvalidTimeScale(String),

    #[error("time {0} is not a member of the time scale")]
    Membership(f64),

    #[error("time {0} is not a node of the sampled function")]
    NotANode(f64),

    #[error("scattered point {0} has no sample")]
    MissingScatteredSample(f64),

    #[error("dense interval [{left}, {right}] holds fewer than 2 nodes")]
    InsufficientNodes { left: f64, right: f64 },

    #[error("integration bounds out of order: {lower} > {upper}")]
    Order { lower: f64, upper: f64 },

    #[error("coefficient {p} is not regressive: 1 + mu*p = 0 at t = {t}")]
    Regressivity { p: f64, t: f64 },

    #[error("logarithm argument {arg} is outside the real branch (h = {h}, z = {z})")]
    Branch { h: f64, z: f64, arg: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty input")]
    EmptyInput,

    #[error("at least {needed} samples are required, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("sample times are not strictly increasing at t = {0}")]
    NonMonotoneTime(f64),

    #[error("design matrix is rank deficient (background value is constant)")]
    SingularDesign,

    #[error("series are not aligned: {0}")]
    Alignment(String),

    #[error("all actual values are zero; MAPE is undefined")]
    AllZeroActuals,
}
