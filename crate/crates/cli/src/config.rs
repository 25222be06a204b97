//! Flag parsing and resolution into solver inputs.
//!
//! Flags fully determine a run (no config files, no randomness). The order
//! function uses a compact textual grammar:
//!
//!   const:<a>            q(t) = a
//!   linear:<a>:<slope>   q(t) = a + slope·t
//!   table:<path>         piecewise-linear through a CSV of `t,q` rows
//!
//! so a slope is grid-independent and never coupled to the horizon.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracduff_core::{ForcingSpec, GridSpec, OrderFunction, OscillatorParams, StudyMode};

use crate::CliError;

#[derive(Parser, Debug, PartialEq)]
#[command(
    name = "fracduff",
    about = "Duffing oscillator with a variable-order fractional friction term: \
             explicit finite-difference and Adams-Bashforth-Moulton solvers, \
             convergence studies, SVG plots",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, PartialEq)]
pub enum Command {
    /// Run one or both solvers and write trajectory CSV files.
    Simulate(SimulateArgs),
    /// Run a grid-doubling convergence study and write a table CSV.
    Converge(ConvergeArgs),
    /// Render a trajectory CSV to a deterministic SVG plot.
    Plot(PlotArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Efds,
    Abm,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ForcingKind {
    /// f(t) = 0.
    None,
    /// f(t) = δ cos(ωt) from --delta and --omega.
    Harmonic,
    /// The verification forcing that makes x(t) = t³ exact (ω₀ = b = 1).
    Manufactured,
}

/// Initial-condition presets for the manufactured verification runs:
/// `consistent` matches the t³ reference exactly; `paper` is the published
/// control-parameter set (0.01, 0.03), which does not.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum IcMode {
    Paper,
    Consistent,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Errors against the exact cubic solution.
    Exact,
    /// Runge double-recalculation errors.
    Runge,
}

impl From<ModeArg> for StudyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => StudyMode::ExactSolution,
            ModeArg::Runge => StudyMode::RungeRule,
        }
    }
}

/// Physics and grid flags shared by `simulate` and `converge`.
#[derive(Args, Clone, Debug, PartialEq)]
pub struct PhysicsArgs {
    /// Friction coefficient λ.
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Natural frequency squared ω₀².
    #[arg(long = "omega0-sq", default_value_t = 1.0)]
    pub omega0_sq: f64,
    /// Cubic stiffness coefficient b.
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// Forcing amplitude δ (harmonic forcing only).
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Forcing frequency ω (harmonic forcing only).
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Initial displacement x(0).
    #[arg(long, default_value_t = 0.0)]
    pub x0: f64,
    /// Initial velocity x'(0).
    #[arg(long, default_value_t = 0.0)]
    pub y0: f64,
    /// Initial value of the predictor-corrector auxiliary variable.
    #[arg(long, default_value_t = 0.0)]
    pub z0: f64,
    /// Simulation horizon T.
    #[arg(long = "T", default_value_t = 1.0)]
    pub t_end: f64,
    /// Number of grid steps N (h = T/N).
    #[arg(long = "N", default_value_t = 100)]
    pub n_steps: u32,
    /// Order function: const:<a> | linear:<a>:<slope> | table:<path>.
    #[arg(long, default_value = "const:0.5")]
    pub order: String,
    #[arg(long, value_enum, default_value_t = ForcingKind::None)]
    pub forcing: ForcingKind,
    /// Overrides --x0/--y0 with a verification preset.
    #[arg(long = "ic-mode", value_enum)]
    pub ic_mode: Option<IcMode>,
}

#[derive(Args, Clone, Debug, PartialEq)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long, value_enum, default_value_t = SchemeArg::Both)]
    pub scheme: SchemeArg,
    /// Output directory for the CSV files.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Clone, Debug, PartialEq)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Coarsest step count; each level doubles it.
    #[arg(long = "n-start", default_value_t = 10)]
    pub n_start: u32,
    /// Number of refinement levels (at least 2).
    #[arg(long, default_value_t = 8)]
    pub levels: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Output directory for convergence.csv.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    /// x versus t.
    Oscillogram,
    /// y versus x.
    Phase,
    /// Two trajectories (x vs t), optionally with the exact cubic.
    Overlay,
}

#[derive(Args, Clone, Debug, PartialEq)]
pub struct PlotArgs {
    #[arg(long, value_enum)]
    pub kind: PlotKind,
    /// Trajectory CSV to plot.
    #[arg(long)]
    pub input: PathBuf,
    /// Second trajectory CSV (overlay only).
    #[arg(long)]
    pub input2: Option<PathBuf>,
    /// Add the exact t³ curve to an overlay.
    #[arg(long = "with-exact-cubic", default_value_t = false)]
    pub with_exact_cubic: bool,
    /// Output SVG path.
    #[arg(long)]
    pub out: PathBuf,
}

/// Fully resolved problem inputs shared by the run commands.
#[derive(Debug, Clone)]
pub struct ResolvedProblem {
    pub params: OscillatorParams,
    pub order: OrderFunction,
    pub forcing: ForcingSpec,
    pub grid: GridSpec,
}

impl PhysicsArgs {
    /// Validates the flags and builds the solver inputs. Rejections here are
    /// configuration errors: nothing has been computed yet.
    pub fn resolve(&self) -> Result<ResolvedProblem, CliError> {
        let (x0, y0) = match self.ic_mode {
            Some(IcMode::Paper) => (0.01, 0.03),
            Some(IcMode::Consistent) => (0.0, 0.0),
            None => (self.x0, self.y0),
        };
        let params = OscillatorParams {
            lambda: self.lambda,
            omega0_sq: self.omega0_sq,
            b: self.b,
            delta: self.delta,
            omega: self.omega,
            x0,
            y0,
            z0: self.z0,
        };
        params.validate().map_err(CliError::config)?;
        let order = parse_order_spec(&self.order)?;
        let grid = GridSpec::new(self.t_end, self.n_steps).map_err(CliError::config)?;
        order.validate_on_grid(&grid).map_err(CliError::config)?;
        let forcing = match self.forcing {
            ForcingKind::None => ForcingSpec::None,
            ForcingKind::Harmonic => ForcingSpec::Harmonic {
                delta: self.delta,
                omega: self.omega,
            },
            ForcingKind::Manufactured => ForcingSpec::Manufactured {
                lambda: self.lambda,
                order: order.clone(),
            },
        };
        Ok(ResolvedProblem {
            params,
            order,
            forcing,
            grid,
        })
    }

    /// Renders the flags back out; parsing the result reproduces this config.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![
            format!("--lambda={}", self.lambda),
            format!("--omega0-sq={}", self.omega0_sq),
            format!("--b={}", self.b),
            format!("--delta={}", self.delta),
            format!("--omega={}", self.omega),
            format!("--x0={}", self.x0),
            format!("--y0={}", self.y0),
            format!("--z0={}", self.z0),
            format!("--T={}", self.t_end),
            format!("--N={}", self.n_steps),
            format!("--order={}", self.order),
            format!("--forcing={}", variant_name(self.forcing)),
        ];
        if let Some(mode) = self.ic_mode {
            args.push(format!(
                "--ic-mode={}",
                match mode {
                    IcMode::Paper => "paper",
                    IcMode::Consistent => "consistent",
                }
            ));
        }
        args
    }
}

fn variant_name(kind: ForcingKind) -> &'static str {
    match kind {
        ForcingKind::None => "none",
        ForcingKind::Harmonic => "harmonic",
        ForcingKind::Manufactured => "manufactured",
    }
}

impl SimulateArgs {
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec!["simulate".to_string()];
        args.extend(self.physics.to_args());
        args.push(format!(
            "--scheme={}",
            match self.scheme {
                SchemeArg::Efds => "efds",
                SchemeArg::Abm => "abm",
                SchemeArg::Both => "both",
            }
        ));
        args.push(format!("--out={}", self.out.display()));
        args
    }
}

impl ConvergeArgs {
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec!["converge".to_string()];
        args.extend(self.physics.to_args());
        args.push(format!("--n-start={}", self.n_start));
        args.push(format!("--levels={}", self.levels));
        args.push(format!(
            "--mode={}",
            match self.mode {
                ModeArg::Exact => "exact",
                ModeArg::Runge => "runge",
            }
        ));
        args.push(format!("--out={}", self.out.display()));
        args
    }
}

/// Parses the order-function grammar.
pub fn parse_order_spec(spec: &str) -> Result<OrderFunction, CliError> {
    let mut parts = spec.splitn(3, ':');
    let kind = parts.next().unwrap_or_default();
    match kind {
        "const" => {
            let a = parse_float(parts.next(), spec)?;
            reject_extra(parts.next(), spec)?;
            Ok(OrderFunction::Constant(a))
        }
        "linear" => {
            let a = parse_float(parts.next(), spec)?;
            let slope = parse_float(parts.next(), spec)?;
            Ok(OrderFunction::Linear {
                intercept: a,
                slope,
            })
        }
        "table" => {
            let path = parts.next().filter(|p| !p.is_empty()).ok_or_else(|| {
                CliError::Config(format!("order spec `{spec}`: missing table path"))
            })?;
            load_order_table(Path::new(path))
        }
        _ => Err(CliError::Config(format!(
            "order spec `{spec}`: expected const:<a> | linear:<a>:<slope> | table:<path>"
        ))),
    }
}

fn parse_float(part: Option<&str>, spec: &str) -> Result<f64, CliError> {
    part.filter(|p| !p.is_empty())
        .and_then(|p| p.parse::<f64>().ok())
        .ok_or_else(|| CliError::Config(format!("order spec `{spec}`: malformed number")))
}

fn reject_extra(part: Option<&str>, spec: &str) -> Result<(), CliError> {
    match part {
        None => Ok(()),
        Some(_) => Err(CliError::Config(format!(
            "order spec `{spec}`: unexpected trailing field"
        ))),
    }
}

/// Loads a `t,q` table: header row, two comma-separated floats per line,
/// strictly increasing t.
pub fn load_order_table(path: &Path) -> Result<OrderFunction, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("order table {}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "t,q" => {}
        _ => {
            return Err(CliError::Config(format!(
                "order table {}: line 1: expected header `t,q`",
                path.display()
            )))
        }
    }
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (t, q) = match (fields.next(), fields.next(), fields.next()) {
            (Some(t), Some(q), None) => (t, q),
            _ => {
                return Err(CliError::Config(format!(
                    "order table {}: line {}: expected two fields `t,q`",
                    path.display(),
                    idx + 1
                )))
            }
        };
        let parse = |s: &str, name: &str| -> Result<f64, CliError> {
            s.trim().parse::<f64>().map_err(|_| {
                CliError::Config(format!(
                    "order table {}: line {}: malformed {name} `{s}`",
                    path.display(),
                    idx + 1
                ))
            })
        };
        nodes.push(parse(t, "t")?);
        values.push(parse(q, "q")?);
    }
    OrderFunction::tabulated(nodes, values).map_err(CliError::config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[test]
    fn order_grammar() {
        assert_eq!(
            parse_order_spec("const:0.5").unwrap(),
            OrderFunction::Constant(0.5)
        );
        assert_eq!(
            parse_order_spec("linear:0.8:-0.005").unwrap(),
            OrderFunction::Linear {
                intercept: 0.8,
                slope: -0.005
            }
        );
        assert!(parse_order_spec("const:").is_err());
        assert!(parse_order_spec("const:0.5:9").is_err());
        assert!(parse_order_spec("linear:0.8").is_err());
        assert!(parse_order_spec("spline:1:2").is_err());
        assert!(parse_order_spec("table:").is_err());
    }

    #[derive(Parser)]
    struct PhysicsOnly {
        #[command(flatten)]
        physics: PhysicsArgs,
    }

    #[test]
    fn ic_mode_overrides_initial_conditions() {
        let mut physics = PhysicsOnly::parse_from(["test"]).physics;
        physics.x0 = 9.0;
        physics.ic_mode = Some(IcMode::Paper);
        let resolved = physics.resolve().unwrap();
        assert_eq!(resolved.params.x0, 0.01);
        assert_eq!(resolved.params.y0, 0.03);
        physics.ic_mode = Some(IcMode::Consistent);
        let resolved = physics.resolve().unwrap();
        assert_eq!(resolved.params.x0, 0.0);
        assert_eq!(resolved.params.y0, 0.0);
    }

    #[test]
    fn physics_flags_round_trip() {
        let parsed = PhysicsOnly::parse_from([
            "test",
            "--lambda=0.1",
            "--omega0-sq=1",
            "--delta=0",
            "--T=1",
            "--N=1280",
            "--order=linear:0.8:-0.5",
            "--forcing=manufactured",
            "--ic-mode=paper",
        ]);
        let rendered = parsed.physics.to_args();
        let mut argv = vec!["test".to_string()];
        argv.extend(rendered);
        let reparsed = PhysicsOnly::parse_from(argv);
        assert_eq!(parsed.physics, reparsed.physics);
    }

    #[test]
    fn q_range_rejected_before_computation() {
        let mut physics = PhysicsOnly::parse_from(["test"]).physics;
        physics.order = "linear:0.8:-0.5".into();
        physics.t_end = 2.0;
        physics.n_steps = 10;
        let err = physics.resolve().unwrap_err();
        assert!(matches!(err, CliError::Config(_)), "got {err:?}");
    }
}
