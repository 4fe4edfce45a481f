use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bicoord::applications::{
    build_market, build_svm_dual, svm_cap_active, svm_weights, verify_market_equilibrium, MarketModel, SvmDataset,
};
use bicoord::bench::{run_benchmark, BenchmarkSpec, Series};
use bicoord::io::{format_point, parse_point, ProblemFile};
use bicoord::{
    bcv_solve, check_feasibility, check_stationarity, denormalize_point, error_bound, mbc_solve,
    normalize_signs, project, write_trace_csv, Error, Floors, GeometricSchedule, Linesearch, PairStrategy, SignMap,
    SolveResult, SolverConfig, Termination, BALANCE_TOL,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bcv", version, about = "Bi-coordinate descent over a box and one linear equality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Bcv,
    Cgm,
    Mbc,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairArg {
    Max,
    Sweep,
}

#[derive(Clone, Copy, ValueEnum)]
enum LinesearchArg {
    Armijo,
    Graddiff,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Md,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file.
    Solve {
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "bcv")]
        method: MethodArg,
        #[arg(long, default_value_t = 0.1)]
        mu: f64,
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        #[arg(long, default_value_t = 0.5)]
        nu: f64,
        #[arg(long, default_value_t = 1.0)]
        delta0: f64,
        #[arg(long, default_value_t = 1.0)]
        eps0: f64,
        #[arg(long, default_value_t = 500)]
        max_iters: usize,
        #[arg(long, value_enum, default_value = "max")]
        pair: PairArg,
        #[arg(long, value_enum, default_value = "armijo")]
        linesearch: LinesearchArg,
        /// Write the per-step trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run the three-series benchmark.
    Bench {
        /// 1, 2, 3 or all.
        #[arg(long, default_value = "all")]
        series: String,
        #[arg(long, value_delimiter = ',', default_value = "5,10,20")]
        beta: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "10,20,50,100")]
        n: Vec<usize>,
        #[arg(long, value_enum, default_value = "md")]
        format: FormatArg,
    },
    /// Project a point onto the feasible set.
    Project {
        problem: PathBuf,
        /// Comma-separated values, or a file containing them.
        #[arg(long)]
        point: String,
    },
    /// Report feasibility, gap and stationarity of a point.
    Check {
        problem: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Train a linear SVM through its penalized dual.
    Svm {
        data: PathBuf,
        #[arg(long, default_value_t = 10.0)]
        tau: f64,
        #[arg(long, default_value_t = 2)]
        p: u8,
        #[arg(long, default_value_t = 1e3)]
        cap: f64,
        #[arg(long, default_value_t = 1e-3)]
        mu: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iters: usize,
    },
    /// Compute a market equilibrium from a scenario file.
    Market {
        scenario: PathBuf,
        #[arg(long, default_value_t = 1e-4)]
        mu: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iters: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver(Error::LinesearchFailure { .. }) => 4,
            CliError::Solver(_) | CliError::Io(_) | CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_problem(path: &Path) -> Result<bicoord::ProblemInstance, CliError> {
    Ok(ProblemFile::from_json(&read(path)?)?.build()?)
}

fn load_point(arg: &str) -> Result<Vec<f64>, CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() { read(path)? } else { arg.to_string() };
    Ok(parse_point(&text)?)
}

fn budget_check(r: &SolveResult) -> Result<(), CliError> {
    match r.termination {
        Termination::IterationBudget | Termination::StageBudget => Err(CliError::Budget(format!(
            "budget exhausted after {} iterations, gap {:e}",
            r.inner_iterations_total, r.error_bound
        ))),
        _ => Ok(()),
    }
}

fn print_result(r: &SolveResult, map: &SignMap) -> Result<(), CliError> {
    let x = denormalize_point(&r.point, map)?;
    println!("converged: {}", r.converged);
    println!("termination: {:?}", r.termination);
    println!("iterations: {}", r.inner_iterations_total);
    println!("stages: {}", r.stages_completed);
    println!("objective: {}", r.objective_value);
    println!("gap: {:e}", r.error_bound);
    if let Some(t) = r.final_tau {
        println!("tau: {t}");
    }
    println!("x: {}", format_point(&x));
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            problem,
            method,
            mu,
            sigma,
            theta,
            nu,
            delta0,
            eps0,
            max_iters,
            pair,
            linesearch,
            trace,
        } => {
            let raw = load_problem(&problem)?;
            let (p, map) = normalize_signs(&raw)?;
            let cfg = SolverConfig {
                sigma,
                theta,
                target_accuracy: mu,
                max_inner_iterations: max_iters,
                pair_strategy: match pair {
                    PairArg::Max => PairStrategy::MaxViolation,
                    PairArg::Sweep => PairStrategy::FirstFoundSweep,
                },
                linesearch: match linesearch {
                    LinesearchArg::Armijo => Linesearch::Armijo,
                    LinesearchArg::Graddiff => Linesearch::GradientDifference,
                },
                ..SolverConfig::default()
            };
            let floors = Floors {
                tau: if p.objective().smoothing().is_some() { mu } else { Floors::default().tau },
                ..Floors::default()
            };
            let r = match method {
                MethodArg::Bcv => bcv_solve(&GeometricSchedule::new(p, delta0, eps0, nu, floors)?, &cfg)?,
                MethodArg::Cgm => {
                    let s = GeometricSchedule::new(p, delta0, eps0, nu, floors)?;
                    bicoord::cgm_solve_staged(&s, &cfg, None)?
                }
                MethodArg::Mbc => mbc_solve(&p, &cfg)?,
            };
            if let Some(path) = trace {
                let file = fs::File::create(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                write_trace_csv(&r.trace, file).map_err(|e| CliError::Io(e.to_string()))?;
            }
            print_result(&r, &map)?;
            budget_check(&r)
        }
        Command::Bench { series, beta, n, format } => {
            let series = match series.as_str() {
                "all" => Series::ALL.to_vec(),
                s => vec![s
                    .parse::<u8>()
                    .ok()
                    .and_then(Series::from_number)
                    .ok_or_else(|| CliError::Usage(format!("unknown series `{s}`")))?],
            };
            let spec = BenchmarkSpec {
                series,
                betas: beta,
                ns: n,
                ..BenchmarkSpec::default()
            };
            let report = run_benchmark(&spec)?;
            match format {
                FormatArg::Md => print!("{}", report.to_markdown()),
                FormatArg::Csv => print!("{}", report.to_csv()),
            }
            Ok(())
        }
        Command::Project { problem, point } => {
            let p = load_problem(&problem)?;
            let (q, map) = normalize_signs(&p)?;
            let z = map.apply(&load_point(&point)?)?;
            let x = denormalize_point(&project(&z, &q)?, &map)?;
            println!("{}", format_point(&x));
            Ok(())
        }
        Command::Check { problem, point, tol } => {
            let p = load_problem(&problem)?;
            let (q, map) = normalize_signs(&p)?;
            let x = map.apply(&load_point(&point)?)?;
            let feas = check_feasibility(&x, &q, BALANCE_TOL);
            println!("balance_residual: {:e}", feas.balance_residual);
            println!("max_box_violation: {:e}", feas.max_box_violation);
            println!("feasible: {}", feas.feasible);
            if !feas.feasible {
                return Err(CliError::Usage("point is not feasible".into()));
            }
            let gap = error_bound(&q, &x)?;
            let rep = check_stationarity(&q, &x, tol)?;
            println!("gap: {gap:e}");
            println!("multiplier_interval: [{}, {}]", rep.multiplier_interval.0, rep.multiplier_interval.1);
            println!("worst_violation: {:e}", rep.worst_violation);
            println!("stationary: {}", rep.stationary);
            Ok(())
        }
        Command::Svm { data, tau, p, cap, mu, max_iters } => {
            let file = fs::File::open(&data).map_err(|e| CliError::Io(format!("{}: {e}", data.display())))?;
            let ds = SvmDataset::from_csv(file)?;
            let (inst, map) = build_svm_dual(&ds, tau, p, 1.0, cap)?;
            let cfg = SolverConfig {
                target_accuracy: mu,
                max_inner_iterations: max_iters,
                max_stages: 10_000,
                record_trace: false,
                ..SolverConfig::default()
            };
            let floors = Floors { tau: 1e-4, ..Floors::default() };
            let r = bcv_solve(&GeometricSchedule::new(inst, 1.0, 1.0, 0.5, floors)?, &cfg)?;
            let y = denormalize_point(&r.point, &map)?;
            let w = svm_weights(&ds, &y);
            let errors = ds
                .points()
                .iter()
                .zip(ds.labels())
                .filter(|(b, g)| *g * b.iter().zip(&w).map(|(u, v)| u * v).sum::<f64>() <= 0.0)
                .count();
            println!("converged: {}", r.converged);
            println!("iterations: {}", r.inner_iterations_total);
            println!("gap: {:e}", r.error_bound);
            println!("w: {}", format_point(&w));
            println!("training_errors: {errors}");
            if svm_cap_active(&y, cap) {
                eprintln!("warning: dual variables reach the cap {cap}; consider raising --cap");
            }
            budget_check(&r)
        }
        Command::Market { scenario, mu, max_iters } => {
            let model: MarketModel =
                serde_json::from_str(&read(&scenario)?).map_err(|e| CliError::Io(e.to_string()))?;
            let (inst, map) = build_market(&model)?;
            let cfg = SolverConfig {
                target_accuracy: mu,
                max_inner_iterations: max_iters,
                max_stages: 10_000,
                record_trace: false,
                ..SolverConfig::default()
            };
            let r = bcv_solve(&GeometricSchedule::with_defaults(inst)?, &cfg)?;
            let (x, y) = model.split(&denormalize_point(&r.point, &map)?);
            let rep = verify_market_equilibrium(&model, &x, &y, 1e-2);
            println!("iterations: {}", r.inner_iterations_total);
            println!("gap: {:e}", r.error_bound);
            println!("offers: {}", format_point(&x));
            println!("bids: {}", format_point(&y));
            println!("clearing_price: {}", rep.clearing_price);
            println!("price_interval: [{}, {}]", rep.price_interval.0, rep.price_interval.1);
            println!("equilibrium: {}", rep.equilibrium);
            budget_check(&r)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
