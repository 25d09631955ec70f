use clap::{Args, Parser, Subcommand};
use minext::error::Error;
use minext::io::{spectral_from_str, GammaJson, SolveReportJson, StructureJson};
use minext::structure::{default_gamma_tol, gamma_set, support_structure};
use minext_cli::pipeline::{analyze, PipelineOptions};
use minext_cli::{plot, reproduce};
use std::path::PathBuf;
use std::process::ExitCode;

/// Minimal extrapolation of measures on the torus from finite Fourier data.
#[derive(Parser)]
#[command(name = "minext", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolveFlags {
    /// Input spectral JSON file.
    #[arg(short, long)]
    input: PathBuf,
    /// Grid points per axis (default: 64 for d = 1, 16 for d ≥ 2).
    #[arg(long)]
    grid: Option<usize>,
    /// Absolute feasibility tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Relative duality-gap tolerance.
    #[arg(long, default_value_t = 1e-8)]
    gap_tol: f64,
    #[arg(long, default_value_t = 200_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 0x5EED_0001)]
    seed: u64,
    /// Write the JSON output here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct AnalyzeFlags {
    #[command(flatten)]
    solve: SolveFlags,
    /// Prior total-variation norm of the generating measure.
    #[arg(long)]
    mu_norm: Option<f64>,
    /// Measure JSON files with known extrapolations (verified; their norms
    /// tighten the admissibility range).
    #[arg(long)]
    nu: Vec<PathBuf>,
    /// Positivity window center.
    #[arg(long)]
    center: Option<i64>,
    /// Positivity window half-width.
    #[arg(long)]
    halfwidth: Option<usize>,
    /// Include wall-clock timing in the report (breaks byte-for-byte
    /// reproducibility of the output).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the basis-pursuit solver and print the solve report.
    Solve(SolveFlags),
    /// Full pipeline: solve, ε, Γ, structure, uniqueness, positivity.
    Analyze(AnalyzeFlags),
    /// Compute Γ (solves first unless --epsilon is given).
    Gamma {
        #[command(flatten)]
        solve: SolveFlags,
        /// Use this ε instead of solving.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Compute the support structure from Γ.
    Structure {
        #[command(flatten)]
        solve: SolveFlags,
        /// Use this ε instead of solving.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Uniqueness verdict for the analyzed data.
    Unique(AnalyzeFlags),
    /// Positive-definite window analysis.
    Positivity(AnalyzeFlags),
    /// Re-run a scripted example and print its pass/fail table.
    Reproduce {
        /// One of e1..e6, cantor, twolines, figure1, or "all".
        id: String,
        /// Emit the rows as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Export CSV plot data from an analyze report.
    ExportPlot {
        /// Path to a report produced by `analyze`.
        #[arg(long)]
        report: PathBuf,
        /// Output directory for curve.csv, atoms.csv, support.csv.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1024)]
        resolution: usize,
    },
}

const EXIT_ASSERTION: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_NOT_CONVERGED: u8 = 3;

fn classify(err: &Error) -> u8 {
    match err {
        Error::NotConverged { .. } => EXIT_NOT_CONVERGED,
        _ => EXIT_BAD_INPUT,
    }
}

fn read_spectral(path: &PathBuf) -> Result<minext::Spectral64, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("reading {}: {e}", path.display())))?;
    spectral_from_str(&text)
}

fn emit(output: &Option<PathBuf>, body: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::InvalidParameter(format!("writing {}: {e}", path.display()))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn pipeline_options(flags: &AnalyzeFlags) -> Result<PipelineOptions, Error> {
    let mut extrapolations = Vec::new();
    for path in &flags.nu {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("reading {}: {e}", path.display())))?;
        extrapolations.push(minext::io::measure_from_str(&text)?);
    }
    Ok(PipelineOptions {
        grid: flags.solve.grid,
        feas_tol: flags.solve.tol,
        gap_tol: flags.solve.gap_tol,
        max_iterations: flags.solve.max_iter,
        seed: flags.solve.seed,
        mu_norm: flags.mu_norm,
        extrapolations,
        center: flags.center,
        halfwidth: flags.halfwidth,
        timing: flags.timing,
    })
}

fn solve_options(flags: &SolveFlags) -> minext::solver::SolverOptions<f64> {
    minext::solver::SolverOptions {
        max_iterations: flags.max_iter,
        feas_tol: flags.tol,
        gap_tol: flags.gap_tol,
        seed: flags.seed,
        ..minext::solver::SolverOptions::default()
    }
}

fn epsilon_and_gamma(
    flags: &SolveFlags,
    epsilon: Option<f64>,
) -> Result<(minext::Spectral64, f64, minext::structure::GammaSet<f64>), Error> {
    let data = read_spectral(&flags.input)?;
    let eps = match epsilon {
        Some(e) => e,
        None => {
            let grid = flags.grid.unwrap_or(if data.dim() == 1 { 64 } else { 16 });
            let (report, _) = minext::solver::solve_on_grid(&data, grid, &solve_options(flags))?;
            if !report.converged {
                return Err(Error::NotConverged {
                    iterations: report.iterations,
                    feas: report.feas_residual,
                    gap: report.gap,
                });
            }
            report.epsilon_grid
        }
    };
    let gamma = gamma_set(&data, eps, default_gamma_tol(eps, flags.gap_tol))?;
    Ok((data, eps, gamma))
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(flags) => {
            let data = read_spectral(&flags.input)?;
            let grid = flags.grid.unwrap_or(if data.dim() == 1 { 64 } else { 16 });
            let (report, _) = minext::solver::solve_on_grid(&data, grid, &solve_options(&flags))?;
            if !report.converged {
                return Err(Error::NotConverged {
                    iterations: report.iterations,
                    feas: report.feas_residual,
                    gap: report.gap,
                });
            }
            let json = serde_json::to_string_pretty(&SolveReportJson::from(&report))
                .expect("serializable");
            emit(&flags.output, &json)?;
            Ok(0)
        }
        Command::Analyze(flags) => {
            let data = read_spectral(&flags.solve.input)?;
            let report = analyze(&data, &pipeline_options(&flags)?)?;
            let json = serde_json::to_string_pretty(&report).expect("serializable");
            emit(&flags.solve.output, &json)?;
            Ok(0)
        }
        Command::Gamma { solve, epsilon } => {
            let (_, _, gamma) = epsilon_and_gamma(&solve, epsilon)?;
            let json =
                serde_json::to_string_pretty(&GammaJson::from(&gamma)).expect("serializable");
            emit(&solve.output, &json)?;
            Ok(0)
        }
        Command::Structure { solve, epsilon } => {
            let (data, _, gamma) = epsilon_and_gamma(&solve, epsilon)?;
            let structure = support_structure(&gamma, &data)?;
            let json = serde_json::to_string_pretty(&StructureJson::from(&structure))
                .expect("serializable");
            emit(&solve.output, &json)?;
            Ok(0)
        }
        Command::Unique(flags) => {
            let data = read_spectral(&flags.solve.input)?;
            let report = analyze(&data, &pipeline_options(&flags)?)?;
            let json = serde_json::to_string_pretty(&report.uniqueness).expect("serializable");
            emit(&flags.solve.output, &json)?;
            Ok(0)
        }
        Command::Positivity(flags) => {
            let data = read_spectral(&flags.solve.input)?;
            let report = analyze(&data, &pipeline_options(&flags)?)?;
            let json = serde_json::to_string_pretty(&report.positivity).expect("serializable");
            emit(&flags.solve.output, &json)?;
            Ok(0)
        }
        Command::Reproduce { id, json } => {
            let ids: Vec<&str> = if id == "all" {
                reproduce::EXAMPLE_IDS.to_vec()
            } else {
                vec![id.as_str()]
            };
            let mut all_pass = true;
            for id in ids {
                let rows = reproduce::run_example(id)?;
                if json {
                    println!("{}", serde_json::to_string_pretty(&rows).expect("serializable"));
                    all_pass &= rows.iter().all(|r| r.pass);
                } else {
                    let mut lock = std::io::stdout().lock();
                    all_pass &= reproduce::render_table(id, &rows, &mut lock)
                        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
                }
            }
            Ok(if all_pass { 0 } else { EXIT_ASSERTION })
        }
        Command::ExportPlot {
            report,
            out,
            resolution,
        } => {
            let text = std::fs::read_to_string(&report).map_err(|e| {
                Error::InvalidParameter(format!("reading {}: {e}", report.display()))
            })?;
            let parsed: minext_cli::pipeline::PipelineReport = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidParameter(format!("report JSON: {e}")))?;
            plot::export_plot(&parsed, &out, resolution)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(classify(&err))
        }
    }
}
