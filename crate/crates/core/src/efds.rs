//! Grunwald-Letnikov coefficients and the explicit finite-difference scheme.
//!
//! The fractional derivative is approximated by the weighted memory sum
//!
//!   D^{q_k} x ≈ h^{-q_k} Σ_{j=0}^{k-1} c_j^{(q_k)} x_{k-j}
//!
//! with c_0 = 1 and c_j = (1 - (1+q_k)/j) c_{j-1}. Because q_k is re-read
//! from the order function at every node, the coefficient vector is
//! regenerated whenever q_k changes; for a constant order it is extended by
//! one term per step instead, which produces bit-identical values at O(N)
//! total cost.

use crate::error::{Error, Result};
use crate::model::{ForcingSpec, GridSpec, OrderFunction, OscillatorParams, Scheme, Trajectory};

/// Grunwald-Letnikov weights for one fractional order.
#[derive(Debug, Clone, PartialEq)]
pub struct GlCoefficients {
    /// The order the weights were generated for.
    pub order: f64,
    /// c[j] for j = 0..count-1; c[0] = 1 exactly.
    pub c: Vec<f64>,
}

/// Generates `count` coefficients for the given order via the recurrence.
pub fn gl_coefficients(order: f64, count: usize) -> GlCoefficients {
    assert!(
        order > 0.0 && order < 1.0,
        "GL coefficients need 0 < q < 1, got {order}"
    );
    assert!(count >= 1, "need at least one coefficient");
    let mut c = Vec::with_capacity(count);
    c.push(1.0);
    extend_coefficients(&mut c, order, count);
    GlCoefficients { order, c }
}

/// Extends an existing coefficient vector in place up to `count` entries.
fn extend_coefficients(c: &mut Vec<f64>, order: f64, count: usize) {
    while c.len() < count {
        let j = c.len() as f64;
        let prev = c[c.len() - 1];
        c.push((1.0 - (1.0 + order) / j) * prev);
    }
}

/// Evaluates the memory sum h^{-q} Σ_j c_j x_{k-j}.
///
/// `history` holds x_k, x_{k-1}, ..., x_1 (newest first); the coefficient
/// vector must be at least that long. Summation is sequential in j, which
/// is the reference order for reproducibility.
pub fn gl_derivative_value(history: &[f64], coeffs: &GlCoefficients, h: f64) -> f64 {
    assert!(
        coeffs.c.len() >= history.len(),
        "coefficient vector shorter than history: {} < {}",
        coeffs.c.len(),
        history.len()
    );
    let mut sum = 0.0;
    for (c, x) in coeffs.c.iter().zip(history) {
        sum += c * x;
    }
    h.powf(-coeffs.order) * sum
}

/// Runs the explicit finite-difference scheme over the grid.
///
/// Per step k = 1..N, in order: x_k = h y_{k-1} + x_{k-1}; then
/// q_k = q(t_k) and the memory sum over x_k..x_1 (the freshly computed x_k
/// enters as the j = 0 term); then
///
///   y_k = y_{k-1} + h (-ω₀² x_{k-1} - b x_{k-1}³ + f(t_{k-1}) - λ w_k)
///
/// where w_k is the memory-sum value, also stored in `aux`. O(N²) time,
/// O(N) memory. A non-finite state aborts with the step index.
pub fn efds_solve(
    params: &OscillatorParams,
    order: &OrderFunction,
    forcing: &ForcingSpec,
    grid: &GridSpec,
) -> Result<Trajectory> {
    params.validate()?;
    order.validate_on_grid(grid)?;

    let n = grid.n_steps() as usize;
    let h = grid.h();
    let mut t = Vec::with_capacity(n + 1);
    let mut x = Vec::with_capacity(n + 1);
    let mut y = Vec::with_capacity(n + 1);
    let mut aux = Vec::with_capacity(n + 1);
    t.push(0.0);
    x.push(params.x0);
    y.push(params.y0);
    aux.push(0.0);

    let mut coeffs = vec![1.0];
    let mut coeff_order = f64::NAN;

    for k in 1..=n {
        let t_k = grid.node(k as u32);
        let x_k = h * y[k - 1] + x[k - 1];
        x.push(x_k);

        let q_k = order.eval(t_k);
        if q_k != coeff_order {
            coeffs.clear();
            coeffs.push(1.0);
            coeff_order = q_k;
        }
        extend_coefficients(&mut coeffs, q_k, k);

        // Σ_{i=0}^{k-1} c_i x_{k-i}, newest first
        let mut sum = 0.0;
        for i in 0..k {
            sum += coeffs[i] * x[k - i];
        }
        let w = h.powf(-q_k) * sum;

        let f_prev = forcing.eval(grid.node(k as u32 - 1));
        let y_k = y[k - 1]
            + h * (-params.omega0_sq * x[k - 1] - params.b * x[k - 1].powi(3) + f_prev
                - params.lambda * w);
        y.push(y_k);
        aux.push(w);
        t.push(t_k);

        if !(x_k.is_finite() && y_k.is_finite()) {
            return Err(Error::NonFiniteState {
                scheme: Scheme::Efds,
                step: k,
                t: t_k,
            });
        }
    }

    Ok(Trajectory {
        t,
        x,
        y,
        aux,
        scheme: Scheme::Efds,
    })
}
