//! Problem definition: oscillator coefficients, the variable fractional
//! order q(t), the external forcing, the uniform time grid, and the
//! trajectory container shared by both schemes.

use crate::error::{Error, Result};
use crate::verify;

/// Physical coefficients and initial conditions of the oscillator
///
///   x'' + λ D^{q(t)} x + ω₀² x + b x³ = f(t),  x(0) = x0, x'(0) = y0.
///
/// `z0` seeds the auxiliary variable of the predictor-corrector system
/// (the value of the order-q(t) derivative of x at t = 0); it is 0 for any
/// solution that starts at rest at the origin and stays the sensible
/// default otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    /// Friction coefficient λ.
    pub lambda: f64,
    /// Natural frequency squared ω₀².
    pub omega0_sq: f64,
    /// Isochronism (cubic stiffness) coefficient b.
    pub b: f64,
    /// Forcing amplitude δ.
    pub delta: f64,
    /// Forcing frequency ω.
    pub omega: f64,
    /// Initial displacement x(0).
    pub x0: f64,
    /// Initial velocity x'(0).
    pub y0: f64,
    /// Initial value of the predictor-corrector auxiliary variable.
    pub z0: f64,
}

impl OscillatorParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("lambda", self.lambda),
            ("omega0_sq", self.omega0_sq),
            ("b", self.b),
            ("delta", self.delta),
            ("omega", self.omega),
            ("x0", self.x0),
            ("y0", self.y0),
            ("z0", self.z0),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        if self.omega0_sq < 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega0_sq",
                value: self.omega0_sq,
            });
        }
        Ok(())
    }
}

/// The variable fractional order q(t), constrained to (0, 1) on the grid.
#[derive(Debug, Clone, PartialEq)]
pub enum OrderFunction {
    /// q(t) = a.
    Constant(f64),
    /// q(t) = intercept + slope * t.
    Linear { intercept: f64, slope: f64 },
    /// Piecewise-linear interpolation through (node, value) pairs, clamped
    /// to the end values outside the tabulated range.
    Tabulated { nodes: Vec<f64>, values: Vec<f64> },
}

impl OrderFunction {
    /// Builds a tabulated order function, checking the table shape.
    pub fn tabulated(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::InvalidOrderTable {
                reason: format!(
                    "{} nodes but {} values",
                    nodes.len(),
                    values.len()
                ),
            });
        }
        if nodes.len() < 2 {
            return Err(Error::InvalidOrderTable {
                reason: "need at least 2 rows".into(),
            });
        }
        if nodes.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidOrderTable {
                reason: "non-finite entry".into(),
            });
        }
        for pair in nodes.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::InvalidOrderTable {
                    reason: format!("nodes not strictly increasing at t = {}", pair[1]),
                });
            }
        }
        Ok(OrderFunction::Tabulated { nodes, values })
    }

    /// Evaluates q(t) without range checking.
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            OrderFunction::Constant(a) => *a,
            OrderFunction::Linear { intercept, slope } => intercept + slope * t,
            OrderFunction::Tabulated { nodes, values } => {
                if t <= nodes[0] {
                    return values[0];
                }
                if t >= nodes[nodes.len() - 1] {
                    return values[values.len() - 1];
                }
                // partition_point returns the first index with node > t
                let hi = nodes.partition_point(|&n| n <= t);
                let lo = hi - 1;
                let frac = (t - nodes[lo]) / (nodes[hi] - nodes[lo]);
                values[lo] + frac * (values[hi] - values[lo])
            }
        }
    }

    /// Evaluates q(t) and rejects values outside (0, 1), naming the node.
    pub fn eval_checked(&self, t: f64) -> Result<f64> {
        let q = self.eval(t);
        if q > 0.0 && q < 1.0 {
            Ok(q)
        } else {
            Err(Error::OrderOutOfRange { t, q })
        }
    }

    /// Fail-fast validation over every node of the grid.
    pub fn validate_on_grid(&self, grid: &GridSpec) -> Result<()> {
        for k in 0..=grid.n_steps() {
            self.eval_checked(grid.node(k))?;
        }
        Ok(())
    }
}

/// External forcing f(t).
#[derive(Debug, Clone, PartialEq)]
pub enum ForcingSpec {
    /// f(t) = 0.
    None,
    /// f(t) = δ cos(ω t).
    Harmonic { delta: f64, omega: f64 },
    /// The verification forcing that makes x(t) = t³ the exact solution of
    /// the model with ω₀ = b = 1; see [`verify::manufactured_forcing`].
    Manufactured { lambda: f64, order: OrderFunction },
}

impl ForcingSpec {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            ForcingSpec::None => 0.0,
            ForcingSpec::Harmonic { delta, omega } => delta * (omega * t).cos(),
            ForcingSpec::Manufactured { lambda, order } => {
                verify::manufactured_forcing(t, *lambda, order)
            }
        }
    }
}

/// Uniform time grid over [0, T]: N steps of size h = T/N, nodes t_k = k h.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    t_end: f64,
    n_steps: u32,
    h: f64,
}

impl GridSpec {
    pub fn new(t_end: f64, n_steps: u32) -> Result<Self> {
        if !t_end.is_finite() || t_end <= 0.0 {
            return Err(Error::InvalidGrid {
                reason: format!("horizon T = {t_end} must be positive and finite"),
            });
        }
        if n_steps < 1 {
            return Err(Error::InvalidGrid {
                reason: "need at least one step".into(),
            });
        }
        let h = t_end / n_steps as f64;
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::InvalidGrid {
                reason: format!("step h = {h} must be positive and finite"),
            });
        }
        Ok(GridSpec { t_end, n_steps, h })
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_steps(&self) -> u32 {
        self.n_steps
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// t_k = k h.
    pub fn node(&self, k: u32) -> f64 {
        k as f64 * self.h
    }

    /// All N+1 nodes, in order.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n_steps).map(|k| self.node(k))
    }
}

/// Which scheme produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Explicit finite-difference scheme with the Grunwald-Letnikov memory sum.
    Efds,
    /// Adams-Bashforth-Moulton predictor-corrector.
    Abm,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Efds => "efds",
            Scheme::Abm => "abm",
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-node time series of the state variables produced by a solver.
///
/// `aux` holds the scheme's auxiliary variable: the Grunwald-Letnikov
/// derivative value w for the explicit scheme, the fractional-derivative
/// state z for the predictor-corrector.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub aux: Vec<f64>,
    pub scheme: Scheme,
}

impl Trajectory {
    /// Number of nodes (N + 1).
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}
