use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("SR power series does not converge: beta = {beta} <= delta = {delta}")]
    NonConvergentSeries { beta: f64, delta: f64 },

    #[error("{what} out of domain: {value} not in ({lo}, {hi})")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("series overflow evaluating {0}")]
    Overflow(&'static str),

    #[error(
        "quadrature did not converge on [{a}, {b}]: worst subinterval [{worst_a}, {worst_b}] \
         with error estimate {err:e}"
    )]
    QuadratureNonConvergent {
        a: f64,
        b: f64,
        worst_a: f64,
        worst_b: f64,
        err: f64,
    },

    #[error("resample budget exhausted after {attempts} attempts: {condition}")]
    ResampleBudget {
        attempts: u64,
        condition: &'static str,
    },

    #[error("target {target} unreachable on searched range [{lo_db} dB, {hi_db} dB]")]
    BracketRange {
        target: f64,
        lo_db: f64,
        hi_db: f64,
    },

    #[error("unknown sweep preset {0:?}")]
    UnknownPreset(String),

    #[error("unknown sweep parameter {0:?}")]
    UnknownParameter(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
