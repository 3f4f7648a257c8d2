use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no roots defined for a constant or zero polynomial")]
    NoRoots,
    #[error("zero polynomial has no stability verdict")]
    ZeroPolynomial,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("positive feedback loop is identically one")]
    UnityLoop,
    #[error("pole on evaluation frequency ω = {0}")]
    PoleOnFrequency(f64),
    #[error("zero or pole at jω for ω = {0}; phase undefined")]
    PhaseUndefined(f64),
    #[error("marginal pole at {re}{im:+}j; class-G membership undefined")]
    MarginalPole { re: f64, im: f64 },
    #[error("L∞ norm infinite: pole on the imaginary axis near ω = {0}")]
    InfiniteNorm(f64),
    #[error("infeasible phase at DC: θ = {0} (must be 0 or π)")]
    InfeasibleDcPhase(f64),
    #[error(
        "internal stability violated (hidden mode): unstable cancellation near s = {re}{im:+}j"
    )]
    HiddenMode { re: f64, im: f64 },
    #[error("time step too large: dt = {dt}, use dt ≤ {suggested}")]
    StepTooLarge { dt: f64, suggested: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid plant: {0}")]
    InvalidPlant(String),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
