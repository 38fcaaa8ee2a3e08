use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("extension degree {0} outside supported range 1..=16")]
    DegreeOutOfRange(u32),
    #[error("zero element has no {0}")]
    ZeroInput(&'static str),
    #[error("zero base with negative exponent")]
    ZeroToNegativePower,
    #[error("{divisor} does not divide {group_order}")]
    NotADivisor { divisor: u64, group_order: u64 },
    #[error("exponent i={i} outside [2, {max}]")]
    ExponentOutOfRange { i: u64, max: u64 },
    #[error("Hermite exponent t={t} outside [1, {max}]")]
    HermiteExponentOutOfRange { t: u64, max: u64 },
    #[error("binomial lower index {k} exceeds upper index {n}")]
    BinomialIndexOrder { n: u64, k: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Hermite tester refused for n={0} > 10 (O(q^2) per pair)")]
    HermiteRefused(u32),
    #[error("testers disagree at i={i}, a={a:#x}: direct={direct} agw={agw} hermite={hermite:?}")]
    TesterDisagreement {
        i: u32,
        a: u32,
        direct: bool,
        agw: bool,
        hermite: Option<bool>,
    },
    #[error("invalid search config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("report parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
