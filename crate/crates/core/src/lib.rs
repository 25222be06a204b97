//! Solvers and verification tools for a Duffing oscillator whose friction
//! term carries a fractional derivative of variable order q(t) ∈ (0, 1):
//!
//!   x'' + λ D^{q(t)} x + ω₀² x + b x³ = f(t),  x(0) = x0, x'(0) = y0.
//!
//! Two schemes are provided and cross-checked against each other:
//!
//! - [`efds_solve`] — an explicit finite-difference scheme that realizes the
//!   fractional term as a Grunwald-Letnikov memory sum over the whole
//!   history (first-order accurate, O(N²) work);
//! - [`abm_solve`] — a fractional Adams-Bashforth-Moulton predictor-corrector
//!   on the equivalent three-component system (one corrector application
//!   per step, no iteration).
//!
//! The [`verify`] module carries the manufactured problem with exact
//! solution x(t) = t³, the error metrics, Runge double-recalculation
//! estimates, and [`convergence_study`] for error/accuracy tables over
//! grid-doubling ladders.

mod abm;
mod efds;
mod error;
mod gamma;
mod model;
pub mod verify;

pub use abm::{abm_solve, abm_weights, AbmWeights};
pub use efds::{efds_solve, gl_coefficients, gl_derivative_value, GlCoefficients};
pub use error::{Error, Result};
pub use gamma::gamma;
pub use model::{
    ForcingSpec, GridSpec, OrderFunction, OscillatorParams, Scheme, Trajectory,
};
pub use verify::{convergence_study, ConvergenceReport, ProblemSpec, ReportRow, StudyMode};
