use std::path::{Path, PathBuf};

use fracduff_core::verify::{convergence_study, exact_cubic, ProblemSpec};
use fracduff_core::{abm_solve, efds_solve, Scheme, Trajectory};

use crate::config::{
    ConvergeArgs, PlotArgs, PlotKind, ResolvedProblem, SchemeArg, SimulateArgs,
};
use crate::csvio::{
    convergence_csv, diff_csv, parse_trajectory_csv, trajectory_csv, write_atomic, SeriesData,
};
use crate::svg::{color_for, render, Series};
use crate::CliError;

fn run_scheme(scheme: Scheme, problem: &ResolvedProblem) -> Result<Trajectory, CliError> {
    let result = match scheme {
        Scheme::Efds => efds_solve(
            &problem.params,
            &problem.order,
            &problem.forcing,
            &problem.grid,
        ),
        Scheme::Abm => abm_solve(
            &problem.params,
            &problem.order,
            &problem.forcing,
            &problem.grid,
        ),
    };
    result.map_err(CliError::from_solver)
}

fn write_trajectory(out_dir: &Path, traj: &Trajectory) -> Result<(), CliError> {
    let path = out_dir.join(format!("trajectory_{}.csv", traj.scheme));
    write_atomic(&path, &trajectory_csv(traj))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn ensure_out_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("creating {}: {e}", dir.display())))
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let problem = args.physics.resolve()?;
    ensure_out_dir(&args.out)?;
    match args.scheme {
        SchemeArg::Efds => write_trajectory(&args.out, &run_scheme(Scheme::Efds, &problem)?),
        SchemeArg::Abm => write_trajectory(&args.out, &run_scheme(Scheme::Abm, &problem)?),
        SchemeArg::Both => {
            // The two solvers are independent; run them concurrently.
            let (efds, abm) = std::thread::scope(|scope| {
                let efds = scope.spawn(|| run_scheme(Scheme::Efds, &problem));
                let abm = scope.spawn(|| run_scheme(Scheme::Abm, &problem));
                (efds.join().expect("solver thread"), abm.join().expect("solver thread"))
            });
            let efds = efds?;
            let abm = abm?;
            write_trajectory(&args.out, &efds)?;
            write_trajectory(&args.out, &abm)?;
            let diff_path = args.out.join("diff.csv");
            write_atomic(&diff_path, &diff_csv(&efds, &abm))?;
            eprintln!("wrote {}", diff_path.display());
            Ok(())
        }
    }
}

pub fn cmd_converge(args: &ConvergeArgs) -> Result<(), CliError> {
    let problem = args.physics.resolve()?;
    let spec = ProblemSpec {
        params: problem.params,
        order: problem.order,
        forcing: problem.forcing,
        t_end: problem.grid.t_end(),
    };
    let report = convergence_study(&spec, args.n_start, args.levels, args.mode.into())
        .map_err(CliError::config)?;
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    ensure_out_dir(&args.out)?;
    let path = args.out.join("convergence.csv");
    write_atomic(&path, &convergence_csv(&report))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

/// Legend label from the file name, stripping the writer's prefix:
/// `trajectory_efds.csv` plots as `efds`.
fn series_label(path: &Path) -> String {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("series");
    stem.strip_prefix("trajectory_").unwrap_or(stem).to_string()
}

fn load_series(path: &Path) -> Result<SeriesData, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    parse_trajectory_csv(&text, path)
}

pub fn cmd_plot(args: &PlotArgs) -> Result<(), CliError> {
    let data = load_series(&args.input)?;
    let label = series_label(&args.input);

    let (series, x_label, y_label) = match args.kind {
        PlotKind::Oscillogram => {
            let points = data.t.iter().copied().zip(data.x.iter().copied()).collect();
            (
                vec![Series {
                    color: color_for(&label, 0),
                    label,
                    points,
                }],
                "t",
                "x",
            )
        }
        PlotKind::Phase => {
            let points = data.x.iter().copied().zip(data.y.iter().copied()).collect();
            (
                vec![Series {
                    color: color_for(&label, 0),
                    label,
                    points,
                }],
                "x",
                "y",
            )
        }
        PlotKind::Overlay => {
            let second_path: &PathBuf = args.input2.as_ref().ok_or_else(|| {
                CliError::Config("overlay needs --input2 with a second trajectory".into())
            })?;
            let second = load_series(second_path)?;
            let second_label = series_label(second_path);
            let mut series = vec![
                Series {
                    color: color_for(&label, 0),
                    points: data.t.iter().copied().zip(data.x.iter().copied()).collect(),
                    label,
                },
                Series {
                    color: color_for(&second_label, 1),
                    points: second
                        .t
                        .iter()
                        .copied()
                        .zip(second.x.iter().copied())
                        .collect(),
                    label: second_label,
                },
            ];
            if args.with_exact_cubic {
                series.push(Series {
                    color: color_for("exact", 2),
                    label: "exact".to_string(),
                    points: data.t.iter().map(|&t| (t, exact_cubic(t))).collect(),
                });
            }
            (series, "t", "x")
        }
    };

    let svg = render(&series, x_label, y_label)?;
    write_atomic(&args.out, &svg)?;
    eprintln!("wrote {}", args.out.display());
    Ok(())
}
