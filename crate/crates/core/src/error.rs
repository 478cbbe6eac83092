//! Crate-wide error type.

/// Errors reported by the numerical operations.
///
/// `InvalidParameter`, `Grid*` and `Config` indicate caller mistakes that are
/// detectable before any computation; `Infeasible` reports a request that is
/// well-formed but cannot be satisfied numerically (the message says why).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// No stable estimator of `f'` exists from sup-norm noisy data when the
    /// smoothness order is 1 or below; the minimax error stays bounded away
    /// from zero no matter the operator.
    #[error("no stable differentiation operator exists for smoothness order j <= 1 (got j = {j})")]
    UnstableOrder { j: f64 },

    #[error(
        "grid too coarse for stable differentiation: ideal stepsize {h_ideal:.6e} \
         requires dx <= {required_dx:.6e}, got dx = {dx:.6e}"
    )]
    GridTooCoarse {
        h_ideal: f64,
        required_dx: f64,
        dx: f64,
    },

    #[error("stepsize h = {h} is not a positive integer multiple of dx = {dx}")]
    StepNotGridMultiple { h: f64, dx: f64 },

    #[error("point x = {x} does not lie on the sample grid (x0 = {x0}, dx = {dx})")]
    OffGrid { x: f64, x0: f64, dx: f64 },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("numerically infeasible: {0}")]
    Infeasible(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
