use crate::model::Scheme;

/// Errors produced by problem validation, the solvers, and the
/// convergence metrics.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("gamma is undefined at the non-positive integer x = {0}")]
    GammaPole(f64),

    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },

    /// The order function left (0, 1) at a grid node. Caught eagerly when a
    /// solver validates its inputs, before any stepping.
    #[error("order function out of range at t = {t}: q(t) = {q}, expected 0 < q(t) < 1")]
    OrderOutOfRange { t: f64, q: f64 },

    #[error("invalid order table: {reason}")]
    InvalidOrderTable { reason: String },

    /// The state left the representable range mid-run, typically because the
    /// explicit scheme is unstable at the given step size.
    #[error("{scheme} solution became non-finite at step {step} (t = {t})")]
    NonFiniteState { scheme: Scheme, step: usize, t: f64 },

    /// The log-ratio accuracy metric is only defined for errors in (0, 1).
    #[error("computational accuracy is undefined for error value {0}: need 0 < error < 1")]
    MetricDomain(f64),

    #[error("refinement levels must double: got {prev} followed by {next}")]
    LevelsNotDoubling { prev: u32, next: u32 },

    #[error("a convergence study needs at least 2 levels, got {0}")]
    TooFewLevels(u32),

    /// A solver failure annotated with the refinement level it occurred at.
    #[error("at refinement level N = {n}: {source}")]
    AtLevel {
        n: u32,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
