//! Shared problem fixtures for the benchmarks.

use fracduff_core::{ForcingSpec, OrderFunction, OscillatorParams};

/// The forced oscillator that settles onto a limit cycle:
/// λ = δ = ω = ω₀ = b = 1, rest initial conditions, q(t) = 0.8 - t/(2T).
pub fn limit_cycle_problem(t_end: f64) -> (OscillatorParams, OrderFunction, ForcingSpec) {
    let params = OscillatorParams {
        lambda: 1.0,
        omega0_sq: 1.0,
        b: 1.0,
        delta: 1.0,
        omega: 1.0,
        x0: 0.0,
        y0: 0.0,
        z0: 0.0,
    };
    let order = OrderFunction::Linear {
        intercept: 0.8,
        slope: -1.0 / (2.0 * t_end),
    };
    let forcing = ForcingSpec::Harmonic {
        delta: 1.0,
        omega: 1.0,
    };
    (params, order, forcing)
}

/// The manufactured verification problem with exact solution t³.
pub fn manufactured_problem(lambda: f64) -> (OscillatorParams, OrderFunction, ForcingSpec) {
    let params = OscillatorParams {
        lambda,
        omega0_sq: 1.0,
        b: 1.0,
        delta: 0.0,
        omega: 1.0,
        x0: 0.0,
        y0: 0.0,
        z0: 0.0,
    };
    let order = OrderFunction::Constant(0.5);
    let forcing = ForcingSpec::Manufactured {
        lambda,
        order: order.clone(),
    };
    (params, order, forcing)
}
