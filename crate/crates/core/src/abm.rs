//! Adams-Bashforth-Moulton predictor-corrector for the variable-order
//! oscillator.
//!
//! The second-order equation is rewritten as a chain of three components
//! whose fractional orders sum to 2:
//!
//!   D^{q(t)} x = z,    D^{1-q(t)} z = y,    D^1 y = f - λz - ω₀²x - bx³
//!
//! so z is the order-q(t) derivative of the displacement (the damping
//! variable the friction term multiplies) and y is the velocity. Each
//! component is advanced by one fractional Adams step: an explicit
//! rectangle-rule predictor with θ weights followed by a single
//! trapezoidal-type corrector application with ρ weights. Orders are
//! re-evaluated at every target node, so the weight vectors are rebuilt
//! each step and the total cost is O(N²) time, O(N) memory.

use crate::error::{Error, Result};
use crate::gamma::gamma_pos;
use crate::model::{ForcingSpec, GridSpec, OrderFunction, OscillatorParams, Scheme, Trajectory};

/// Predictor (θ) and corrector (ρ) weights for one step and one order.
///
/// For step index n and order q:
///   ρ[0]   = n^{q+1} - (n - q) (n+1)^q
///   ρ[j]   = (n-j+2)^{q+1} + (n-j)^{q+1} - 2 (n-j+1)^{q+1},  1 ≤ j ≤ n
///   ρ[n+1] = 1
///   θ[j]   = (n-j+1)^q - (n-j)^q,                            0 ≤ j ≤ n
///
/// All entries are nonnegative for q ∈ (0, 1] and θ telescopes to (n+1)^q.
#[derive(Debug, Clone, PartialEq)]
pub struct AbmWeights {
    pub order: f64,
    pub rho: Vec<f64>,
    pub theta: Vec<f64>,
}

/// Builds the weight vectors for step `n` at the given order.
pub fn abm_weights(n: usize, order: f64) -> AbmWeights {
    assert!(
        order > 0.0 && order <= 1.0,
        "ABM weights need 0 < q <= 1, got {order}"
    );
    // s^q for s = 0..n+1; s^{q+1} follows as s * s^q. 0^q = 0 for q > 0.
    let pw: Vec<f64> = (0..=n + 1).map(|s| (s as f64).powf(order)).collect();

    let mut theta = Vec::with_capacity(n + 1);
    for j in 0..=n {
        theta.push(pw[n - j + 1] - pw[n - j]);
    }

    let mut rho = Vec::with_capacity(n + 2);
    rho.push(n as f64 * pw[n] - (n as f64 - order) * pw[n + 1]);
    for j in 1..=n {
        let s = n - j;
        let outer = (s + 2) as f64 * pw[s + 2] + s as f64 * pw[s];
        rho.push(outer - 2.0 * (s + 1) as f64 * pw[s + 1]);
    }
    rho.push(1.0);

    AbmWeights { order, rho, theta }
}

/// Corrector history for nodes 0..n plus the cached right-hand side
/// f(t_j) - λ z_j - ω₀² x_j - b x_j³.
#[derive(Debug, Clone)]
struct AbmState {
    x: Vec<f64>,
    y: Vec<f64>,
    z: Vec<f64>,
    rhs: Vec<f64>,
}

pub(crate) fn rhs_value(params: &OscillatorParams, f: f64, x: f64, z: f64) -> f64 {
    f - params.lambda * z - params.omega0_sq * x - params.b * x.powi(3)
}

/// Sequential dot product; fixed summation order is the reference semantics.
fn weighted_sum(weights: &[f64], values: &[f64]) -> f64 {
    debug_assert_eq!(weights.len(), values.len());
    let mut sum = 0.0;
    for (w, v) in weights.iter().zip(values) {
        sum += w * v;
    }
    sum
}

struct StepWeights {
    x: AbmWeights,
    z: AbmWeights,
    y: AbmWeights,
}

impl StepWeights {
    fn build(n: usize, q: f64) -> Self {
        StepWeights {
            x: abm_weights(n, q),
            z: abm_weights(n, 1.0 - q),
            y: abm_weights(n, 1.0),
        }
    }
}

/// Rectangle-rule predictor for step n+1; returns (x_p, y_p, z_p).
fn predict(state: &AbmState, w: &StepWeights, params: &OscillatorParams, h: f64) -> (f64, f64, f64) {
    let x_p = params.x0
        + h.powf(w.x.order) / gamma_pos(w.x.order + 1.0) * weighted_sum(&w.x.theta, &state.z);
    let z_p = params.z0
        + h.powf(w.z.order) / gamma_pos(w.z.order + 1.0) * weighted_sum(&w.z.theta, &state.y);
    let y_p = params.y0
        + h.powf(w.y.order) / gamma_pos(w.y.order + 1.0) * weighted_sum(&w.y.theta, &state.rhs);
    (x_p, y_p, z_p)
}

/// One corrector application for step n+1; the predicted values stand in
/// for the unknown node with weight ρ[n+1] = 1. Returns (x, y, z) at n+1.
fn correct(
    state: &AbmState,
    w: &StepWeights,
    params: &OscillatorParams,
    h: f64,
    f_next: f64,
    predicted: (f64, f64, f64),
) -> (f64, f64, f64) {
    let (x_p, y_p, z_p) = predicted;
    let n = state.x.len() - 1;
    let rhs_p = rhs_value(params, f_next, x_p, z_p);
    let x_next = params.x0
        + h.powf(w.x.order) / gamma_pos(w.x.order + 2.0)
            * (z_p + weighted_sum(&w.x.rho[..=n], &state.z));
    let z_next = params.z0
        + h.powf(w.z.order) / gamma_pos(w.z.order + 2.0)
            * (y_p + weighted_sum(&w.z.rho[..=n], &state.y));
    let y_next = params.y0
        + h.powf(w.y.order) / gamma_pos(w.y.order + 2.0)
            * (rhs_p + weighted_sum(&w.y.rho[..=n], &state.rhs));
    (x_next, y_next, z_next)
}

fn solve_impl(
    params: &OscillatorParams,
    order: &OrderFunction,
    forcing: &ForcingSpec,
    grid: &GridSpec,
) -> Result<(Trajectory, Vec<f64>)> {
    params.validate()?;
    order.validate_on_grid(grid)?;

    let n_steps = grid.n_steps() as usize;
    let h = grid.h();
    let f: Vec<f64> = grid.nodes().map(|t| forcing.eval(t)).collect();

    let mut state = AbmState {
        x: Vec::with_capacity(n_steps + 1),
        y: Vec::with_capacity(n_steps + 1),
        z: Vec::with_capacity(n_steps + 1),
        rhs: Vec::with_capacity(n_steps + 1),
    };
    state.x.push(params.x0);
    state.y.push(params.y0);
    state.z.push(params.z0);
    state.rhs.push(rhs_value(params, f[0], params.x0, params.z0));

    for n in 0..n_steps {
        let t_next = grid.node(n as u32 + 1);
        let q = order.eval(t_next);
        let w = StepWeights::build(n, q);
        let predicted = predict(&state, &w, params, h);
        let (x_next, y_next, z_next) = correct(&state, &w, params, h, f[n + 1], predicted);

        if !(x_next.is_finite() && y_next.is_finite() && z_next.is_finite()) {
            return Err(Error::NonFiniteState {
                scheme: Scheme::Abm,
                step: n + 1,
                t: t_next,
            });
        }
        state.x.push(x_next);
        state.y.push(y_next);
        state.z.push(z_next);
        state.rhs.push(rhs_value(params, f[n + 1], x_next, z_next));
    }

    let traj = Trajectory {
        t: grid.nodes().collect(),
        x: state.x,
        y: state.y,
        aux: state.z,
        scheme: Scheme::Abm,
    };
    Ok((traj, state.rhs))
}

/// Runs the predictor-corrector over the grid; `aux` carries z.
pub fn abm_solve(
    params: &OscillatorParams,
    order: &OrderFunction,
    forcing: &ForcingSpec,
    grid: &GridSpec,
) -> Result<Trajectory> {
    solve_impl(params, order, forcing, grid).map(|(traj, _)| traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const GAMMA_3_HALVES: f64 = 0.886226925452758;

    fn params_zero_ic() -> OscillatorParams {
        OscillatorParams {
            lambda: 1.0,
            omega0_sq: 1.0,
            b: 1.0,
            delta: 0.0,
            omega: 1.0,
            x0: 0.0,
            y0: 0.0,
            z0: 0.0,
        }
    }

    #[test]
    fn weights_at_n_zero() {
        for q in [0.25, 0.5, 1.0] {
            let w = abm_weights(0, q);
            assert_eq!(w.theta, vec![1.0]);
            assert_relative_eq!(w.rho[0], q, max_relative = 1e-15);
            assert_eq!(w.rho[1], 1.0);
        }
    }

    #[test]
    fn weights_at_integer_order_are_trapezoidal() {
        let w = abm_weights(1, 1.0);
        assert_eq!(w.rho, vec![1.0, 2.0, 1.0]);
        for n in [2usize, 5, 9] {
            let w = abm_weights(n, 1.0);
            assert_relative_eq!(w.rho[0], 1.0, max_relative = 1e-12);
            for j in 1..=n {
                assert_relative_eq!(w.rho[j], 2.0, max_relative = 1e-12);
            }
            assert_eq!(w.rho[n + 1], 1.0);
        }
    }

    #[test]
    fn theta_last_entry_is_one() {
        for (n, q) in [(0usize, 0.3), (7, 0.9), (40, 0.5), (200, 1.0)] {
            let w = abm_weights(n, q);
            assert_eq!(w.theta[n], 1.0);
        }
    }

    #[test]
    fn weights_match_direct_formulas() {
        for (n, q) in [(3usize, 0.35), (17, 0.8), (64, 0.05)] {
            let w = abm_weights(n, q);
            let nf = n as f64;
            let rho0 = nf.powf(q + 1.0) - (nf - q) * (nf + 1.0).powf(q);
            assert_relative_eq!(w.rho[0], rho0, max_relative = 1e-11, epsilon = 1e-12);
            for j in 1..=n {
                let s = (n - j) as f64;
                let expected =
                    (s + 2.0).powf(q + 1.0) + s.powf(q + 1.0) - 2.0 * (s + 1.0).powf(q + 1.0);
                assert_relative_eq!(w.rho[j], expected, max_relative = 1e-10, epsilon = 1e-12);
            }
            for j in 0..=n {
                let s = (n - j) as f64;
                let expected = (s + 1.0).powf(q) - s.powf(q);
                assert_relative_eq!(w.theta[j], expected, max_relative = 1e-12, epsilon = 1e-15);
            }
        }
    }

    proptest! {
        #[test]
        fn weights_nonnegative_and_theta_telescopes(n in 0usize..256, q in 1e-6f64..=1.0) {
            let w = abm_weights(n, q);
            prop_assert!(w.rho.iter().all(|&v| v >= 0.0));
            prop_assert!(w.theta.iter().all(|&v| v >= 0.0));
            prop_assert_eq!(*w.rho.last().unwrap(), 1.0);
            let sum: f64 = w.theta.iter().sum();
            let expected = ((n + 1) as f64).powf(q);
            prop_assert!((sum - expected).abs() <= 1e-12 * expected);
        }
    }

    #[test]
    fn predictor_zero_history_returns_initial_values() {
        let mut params = params_zero_ic();
        params.x0 = 0.7;
        params.y0 = -0.2;
        params.z0 = 0.4;
        let state = AbmState {
            x: vec![0.0, 0.0],
            y: vec![0.0, 0.0],
            z: vec![0.0, 0.0],
            rhs: vec![0.0, 0.0],
        };
        let w = StepWeights::build(1, 0.6);
        let (x_p, y_p, z_p) = predict(&state, &w, &params, 0.1);
        assert_eq!((x_p, y_p, z_p), (0.7, -0.2, 0.4));
    }

    #[test]
    fn predictor_first_step_is_fractional_euler() {
        // n = 0: the order-1 component reduces to forward Euler on the cached
        // right-hand side, and the order-q component picks up the
        // h^q/Γ(q+1) prefactor.
        let mut params = params_zero_ic();
        params.x0 = 0.3;
        params.y0 = 0.5;
        params.z0 = -0.8;
        params.lambda = 0.2;
        let h = 0.25;
        let f0 = 1.1;
        let rhs0 = rhs_value(&params, f0, params.x0, params.z0);
        let state = AbmState {
            x: vec![params.x0],
            y: vec![params.y0],
            z: vec![params.z0],
            rhs: vec![rhs0],
        };
        let w = StepWeights::build(0, 0.5);
        let (x_p, y_p, z_p) = predict(&state, &w, &params, h);
        assert_relative_eq!(y_p, params.y0 + h * rhs0, max_relative = 1e-15);
        assert_relative_eq!(
            x_p,
            params.x0 + h.sqrt() / GAMMA_3_HALVES * params.z0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            z_p,
            params.z0 + h.sqrt() / GAMMA_3_HALVES * params.y0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn corrector_with_empty_sums_returns_initial_values() {
        let mut params = params_zero_ic();
        params.x0 = 0.25;
        params.y0 = -1.5;
        params.z0 = 2.0;
        let state = AbmState {
            x: vec![0.0],
            y: vec![0.0],
            z: vec![0.0],
            rhs: vec![0.0],
        };
        let w = StepWeights::build(0, 0.4);
        let out = correct(&state, &w, &params, 0.1, 0.0, (0.0, 0.0, 0.0));
        assert_eq!(out, (params.x0, params.y0, params.z0));
    }

    #[test]
    fn corrector_order_one_component_is_composite_trapezoid() {
        // With order 1 the ρ weights collapse to (1, 2, ..., 2, 1), so the
        // y component must equal y0 + h/2 (rhs_p + rhs_0 + 2 Σ_{j=1}^n rhs_j).
        let params = params_zero_ic();
        let h = 0.2;
        for n in 0usize..=8 {
            let rhs: Vec<f64> = (0..=n).map(|j| (j as f64 * 0.7).sin() + 0.3).collect();
            let state = AbmState {
                x: vec![0.0; n + 1],
                y: vec![0.0; n + 1],
                z: vec![0.0; n + 1],
                rhs: rhs.clone(),
            };
            let w = StepWeights::build(n, 0.5);
            let predicted = (0.0, 0.0, 0.0);
            let f_next = 0.9;
            let (_, y_next, _) = correct(&state, &w, &params, h, f_next, predicted);
            let rhs_p = rhs_value(&params, f_next, 0.0, 0.0);
            let mut hand = rhs_p + rhs[0];
            for r in &rhs[1..] {
                hand += 2.0 * r;
            }
            hand *= h / 2.0;
            assert_relative_eq!(y_next, hand, max_relative = 1e-13);
        }
    }

    #[test]
    fn zero_problem_stays_at_zero() {
        let grid = GridSpec::new(5.0, 100).unwrap();
        let traj = abm_solve(
            &params_zero_ic(),
            &OrderFunction::Constant(0.5),
            &ForcingSpec::None,
            &grid,
        )
        .unwrap();
        assert!(traj.x.iter().all(|&v| v == 0.0));
        assert!(traj.y.iter().all(|&v| v == 0.0));
        assert!(traj.aux.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rhs_cache_is_consistent_with_trajectory() {
        let params = OscillatorParams {
            lambda: 0.7,
            omega0_sq: 1.2,
            b: 0.9,
            delta: 0.8,
            omega: 2.0,
            x0: 0.1,
            y0: -0.3,
            z0: 0.0,
        };
        let grid = GridSpec::new(2.0, 50).unwrap();
        let order = OrderFunction::Linear {
            intercept: 0.7,
            slope: -0.1,
        };
        let forcing = ForcingSpec::Harmonic {
            delta: 0.8,
            omega: 2.0,
        };
        let (traj, rhs) = solve_impl(&params, &order, &forcing, &grid).unwrap();
        assert_eq!(rhs.len(), traj.len());
        for (j, &cached) in rhs.iter().enumerate() {
            let recomputed = rhs_value(&params, forcing.eval(traj.t[j]), traj.x[j], traj.aux[j]);
            assert_relative_eq!(cached, recomputed, max_relative = 1e-15, epsilon = 1e-300);
        }
    }

    #[test]
    fn velocity_component_tracks_displacement_slope() {
        // y is the velocity: central differences of x should approach y.
        let params = OscillatorParams {
            lambda: 0.5,
            omega0_sq: 1.0,
            b: 1.0,
            delta: 1.0,
            omega: 1.0,
            x0: 0.0,
            y0: 0.0,
            z0: 0.0,
        };
        let grid = GridSpec::new(2.0, 2000).unwrap();
        let order = OrderFunction::Constant(0.5);
        let forcing = ForcingSpec::Harmonic {
            delta: 1.0,
            omega: 1.0,
        };
        let traj = abm_solve(&params, &order, &forcing, &grid).unwrap();
        let h = grid.h();
        let mut worst = 0.0f64;
        for k in 1..traj.len() - 1 {
            let slope = (traj.x[k + 1] - traj.x[k - 1]) / (2.0 * h);
            worst = worst.max((slope - traj.y[k]).abs());
        }
        assert!(worst < 5e-3, "velocity drifted from dx/dt: {worst}");
    }

    #[test]
    fn determinism() {
        let params = params_zero_ic();
        let grid = GridSpec::new(2.0, 64).unwrap();
        let order = OrderFunction::Linear {
            intercept: 0.8,
            slope: -0.25,
        };
        let forcing = ForcingSpec::Harmonic {
            delta: 1.0,
            omega: 1.0,
        };
        let a = abm_solve(&params, &order, &forcing, &grid).unwrap();
        let b = abm_solve(&params, &order, &forcing, &grid).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn blowup_reports_step_index() {
        let mut params = params_zero_ic();
        params.x0 = 1e155;
        let grid = GridSpec::new(1.0, 100).unwrap();
        let err = abm_solve(
            &params,
            &OrderFunction::Constant(0.5),
            &ForcingSpec::None,
            &grid,
        )
        .unwrap_err();
        match err {
            Error::NonFiniteState { scheme, step, .. } => {
                assert_eq!(scheme, Scheme::Abm);
                assert_eq!(step, 1);
            }
            other => panic!("unexpected error: {other}"),
        }
    }
}
