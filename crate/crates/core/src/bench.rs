//! Test-instance generators and the three-series benchmark.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::objective::{LogBarrier, Objective, Quadratic, SmoothedL1, Sum};
use crate::problem::{build_problem, BoxBounds, LinearEquality, ProblemInstance};
use crate::solvers::{bcv_solve, cgm_solve, cgm_solve_staged, mbc_solve, SolveResult, SolverConfig};
use crate::stages::{Floors, GeometricSchedule};

/// Initial smoothing parameter of series 3; the first stage runs at half of it.
pub const SERIES3_TAU0: f64 = 12.8;
/// Additive constant inside the logarithm of series 2 and 3.
pub const LOG_XI: f64 = 5.0;

/// Dense test matrix: `sin(i) cos(j)` above the diagonal (1-based, radians),
/// mirrored below, and a diagonal of one plus the off-diagonal column sum
/// of magnitudes.
pub fn test_matrix(n: usize) -> Vec<Vec<f64>> {
    let mut p = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = ((i + 1) as f64).sin() * ((j + 1) as f64).cos();
            p[i][j] = v;
            p[j][i] = v;
        }
    }
    for j in 0..n {
        let off: f64 = (0..n).filter(|&i| i != j).map(|i| p[i][j].abs()).sum();
        p[j][j] = off + 1.0;
    }
    p
}

/// `1 + beta/n + 0.5 sin(i)`.
pub fn test_upper_bounds(n: usize, beta: f64) -> Vec<f64> {
    (1..=n)
        .map(|i| 1.0 + beta / n as f64 + 0.5 * (i as f64).sin())
        .collect()
}

/// `2 + sin(i)`.
pub fn test_log_coefficients(n: usize) -> Vec<f64> {
    (1..=n).map(|i| 2.0 + (i as f64).sin()).collect()
}

fn test_problem(n: usize, beta: f64, objective: Arc<dyn Objective>) -> Result<ProblemInstance> {
    if !(beta > 0.0) {
        return Err(invalid("beta", "must be positive"));
    }
    build_problem(
        BoxBounds::new(vec![0.0; n], test_upper_bounds(n, beta))?,
        LinearEquality::new(vec![1.0; n], beta)?,
        objective,
    )
}

fn quadratic_part(n: usize) -> Result<Arc<dyn Objective>> {
    Ok(Arc::new(Quadratic::new(test_matrix(n), None)?))
}

fn log_part(n: usize) -> Arc<dyn Objective> {
    Arc::new(LogBarrier {
        c: test_log_coefficients(n),
        xi: LOG_XI,
    })
}

/// Series 1: `0.5 <Px, x>`.
pub fn gen_quadratic(n: usize, beta: f64) -> Result<ProblemInstance> {
    test_problem(n, beta, quadratic_part(n)?)
}

/// Series 2: `0.5 <Px, x> - ln(<c, x> + 5)`.
pub fn gen_convex_log(n: usize, beta: f64) -> Result<ProblemInstance> {
    let f = Sum::new(vec![quadratic_part(n)?, log_part(n)])?;
    test_problem(n, beta, Arc::new(f))
}

/// Series 3: series 2 plus `Σ sqrt(x_i^2 + tau^2)`.
pub fn gen_nonsmooth_l1(n: usize, beta: f64, tau: f64) -> Result<ProblemInstance> {
    if !(tau > 0.0) {
        return Err(invalid("tau", "must be positive"));
    }
    let f = Sum::new(vec![
        quadratic_part(n)?,
        log_part(n),
        Arc::new(SmoothedL1 { n, tau }),
    ])?;
    test_problem(n, beta, Arc::new(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    Quadratic,
    ConvexLog,
    NonsmoothL1,
}

impl Series {
    pub const ALL: [Series; 3] = [Series::Quadratic, Series::ConvexLog, Series::NonsmoothL1];

    pub fn number(self) -> u8 {
        match self {
            Series::Quadratic => 1,
            Series::ConvexLog => 2,
            Series::NonsmoothL1 => 3,
        }
    }

    pub fn from_number(k: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.number() == k)
    }

    pub fn title(self) -> &'static str {
        match self {
            Series::Quadratic => "quadratic",
            Series::ConvexLog => "quadratic + log",
            Series::NonsmoothL1 => "quadratic + log + l1 (smoothed)",
        }
    }

    /// Methods compared in the reference table for this series.
    pub fn methods(self) -> &'static [Method] {
        match self {
            Series::NonsmoothL1 => &[Method::Cgm, Method::Bcv],
            _ => &[Method::Cgm, Method::Bcv, Method::Mbc],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    Cgm,
    Bcv,
    Mbc,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Cgm => "CGM",
            Method::Bcv => "BCV",
            Method::Mbc => "MBC",
        }
    }
}

/// A value reported in the reference tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reported {
    /// Iterations needed to reach the accuracy.
    Iterations(u32),
    /// Gap after the iteration cap.
    Gap(f64),
    /// Gap and smoothing parameter after the iteration cap.
    GapTau(f64, f64),
    /// Gap after the cap exceeded 1.
    Large,
}

impl Reported {
    pub fn iterations(self) -> Option<u32> {
        match self {
            Reported::Iterations(k) => Some(k),
            _ => None,
        }
    }

    fn render(self, cap: usize) -> String {
        match self {
            Reported::Iterations(k) => k.to_string(),
            Reported::Gap(d) => format!("Δ_{cap} ≈ {d}"),
            Reported::GapTau(d, t) => format!("Δ_τ,{cap} ≈ {d}, τ={t}"),
            Reported::Large => "-".into(),
        }
    }
}

pub const REFERENCE_BETAS: [f64; 3] = [5.0, 10.0, 20.0];
pub const REFERENCE_NS: [usize; 4] = [10, 20, 50, 100];

use Reported::{Gap, GapTau, Iterations as It, Large};

// [beta][n] -> (CGM, BCV, MBC)
const QUADRATIC_REF: [[(Reported, Reported, Reported); 4]; 3] = [
    [(It(66), It(30), Gap(1.28)), (It(22), It(41), Gap(0.99)), (It(82), It(96), Gap(0.91)), (Gap(0.1), It(213), Gap(1.63))],
    [(It(55), It(40), Gap(5.13)), (It(103), It(54), Large), (It(90), It(145), Large), (Gap(0.48), It(299), Large)],
    [(Gap(0.14), It(62), Large), (Gap(0.23), It(80), Large), (Gap(0.21), It(191), Large), (Gap(1.07), It(405), Large)],
];

const CONVEX_LOG_REF: [[(Reported, Reported, Reported); 4]; 3] = [
    [(It(77), It(29), Gap(1.29)), (It(30), It(35), Large), (It(111), It(109), Large), (It(457), It(240), Large)],
    [(It(62), It(44), Gap(5.14)), (It(77), It(53), Large), (It(115), It(167), Large), (Gap(0.46), It(282), Large)],
    [(Gap(0.12), It(68), Large), (Gap(0.21), It(75), Large), (Gap(0.24), It(220), Large), (Gap(1.07), It(350), Large)],
];

// [beta][n] -> (CGM, BCV)
const NONSMOOTH_REF: [[(Reported, Reported); 4]; 3] = [
    [(It(154), It(57)), (It(43), It(52)), (It(103), It(85)), (It(300), It(234))],
    [(It(98), It(49)), (It(123), It(52)), (It(183), It(136)), (GapTau(0.81, 0.8), It(271))],
    [(GapTau(6.8, 6.4), It(66)), (GapTau(0.9, 0.8), It(67)), (GapTau(0.48, 0.2), It(197)), (GapTau(2.06, 1.6), It(468))],
];

/// Reference value for a cell, if the reference tables contain it.
pub fn reported(series: Series, beta: f64, n: usize, method: Method) -> Option<Reported> {
    let b = REFERENCE_BETAS.iter().position(|&v| v == beta)?;
    let k = REFERENCE_NS.iter().position(|&v| v == n)?;
    match series {
        Series::Quadratic | Series::ConvexLog => {
            let row = if series == Series::Quadratic { QUADRATIC_REF[b][k] } else { CONVEX_LOG_REF[b][k] };
            Some(match method {
                Method::Cgm => row.0,
                Method::Bcv => row.1,
                Method::Mbc => row.2,
            })
        }
        Series::NonsmoothL1 => match method {
            Method::Cgm => Some(NONSMOOTH_REF[b][k].0),
            Method::Bcv => Some(NONSMOOTH_REF[b][k].1),
            Method::Mbc => None,
        },
    }
}

/// One `(series, beta, n)` instance of the benchmark protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub series: Series,
    pub beta: f64,
    pub n: usize,
}

impl Cell {
    pub fn new(series: Series, beta: f64, n: usize) -> Self {
        Self { series, beta, n }
    }

    /// Base instance; for series 3 it carries the initial smoothing parameter.
    pub fn problem(&self) -> Result<ProblemInstance> {
        match self.series {
            Series::Quadratic => gen_quadratic(self.n, self.beta),
            Series::ConvexLog => gen_convex_log(self.n, self.beta),
            Series::NonsmoothL1 => gen_nonsmooth_l1(self.n, self.beta, SERIES3_TAU0),
        }
    }

    /// Stage schedule with `nu = 0.5`, unit initial tolerances and the
    /// smoothing floor at the accuracy `mu`.
    pub fn schedule(&self, mu: f64) -> Result<GeometricSchedule> {
        let floors = Floors {
            tau: mu,
            ..Floors::default()
        };
        GeometricSchedule::new(self.problem()?, 1.0, 1.0, 0.5, floors)
    }

    pub fn config(&self, mu: f64, cap: usize) -> SolverConfig {
        SolverConfig {
            target_accuracy: mu,
            max_inner_iterations: cap,
            ..SolverConfig::default()
        }
    }

    pub fn solve(&self, method: Method, mu: f64, cap: usize) -> Result<SolveResult> {
        let cfg = self.config(mu, cap);
        let schedule = self.schedule(mu)?;
        match (method, self.series) {
            (Method::Bcv, _) => bcv_solve(&schedule, &cfg),
            (Method::Cgm, Series::NonsmoothL1) => cgm_solve_staged(&schedule, &cfg, None),
            (Method::Cgm, _) => cgm_solve(&self.problem()?, &cfg),
            (Method::Mbc, Series::NonsmoothL1) => {
                // single smooth problem at the final smoothing level
                let f = self.problem()?.objective().with_smoothing(mu).expect("smoothed objective");
                mbc_solve(&self.problem()?.with_objective(f)?, &cfg)
            }
            (Method::Mbc, _) => mbc_solve(&self.problem()?, &cfg),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSpec {
    pub series: Vec<Series>,
    pub betas: Vec<f64>,
    pub ns: Vec<usize>,
    /// Methods to run; each series only runs those it is compared on.
    pub methods: Vec<Method>,
    pub mu: f64,
    pub cap: usize,
}

impl Default for BenchmarkSpec {
    fn default() -> Self {
        Self {
            series: Series::ALL.to_vec(),
            betas: REFERENCE_BETAS.to_vec(),
            ns: REFERENCE_NS.to_vec(),
            methods: vec![Method::Cgm, Method::Bcv, Method::Mbc],
            mu: 0.1,
            cap: 500,
        }
    }
}

impl BenchmarkSpec {
    pub fn validate(&self) -> Result<()> {
        if self.series.is_empty() || self.betas.is_empty() || self.ns.is_empty() || self.methods.is_empty() {
            return Err(invalid("spec", "series, betas, ns and methods must be nonempty"));
        }
        if !(self.mu > 0.0) {
            return Err(invalid("mu", "must be positive"));
        }
        if self.cap == 0 {
            return Err(invalid("cap", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellOutcome {
    pub series: Series,
    pub beta: f64,
    pub n: usize,
    pub method: Method,
    /// Solver failure message; the remaining fields are then meaningless.
    pub error: Option<String>,
    pub converged: bool,
    pub iterations: usize,
    pub final_gap: f64,
    pub final_tau: Option<f64>,
    pub reported: Option<Reported>,
}

impl CellOutcome {
    fn render(&self, cap: usize) -> String {
        if let Some(e) = &self.error {
            return format!("error: {e}");
        }
        if self.converged {
            return self.iterations.to_string();
        }
        match self.final_tau {
            Some(t) => format!("Δ_τ,{cap} ≈ {}, τ={}", round2(self.final_gap), round2(t)),
            None => format!("Δ_{cap} ≈ {}", round2(self.final_gap)),
        }
    }
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub spec: BenchmarkSpec,
    pub cells: Vec<CellOutcome>,
}

pub fn run_benchmark(spec: &BenchmarkSpec) -> Result<BenchmarkReport> {
    spec.validate()?;
    let mut cells = Vec::new();
    for &series in &spec.series {
        for &beta in &spec.betas {
            for &n in &spec.ns {
                let cell = Cell::new(series, beta, n);
                for &method in series.methods() {
                    if !spec.methods.contains(&method) {
                        continue;
                    }
                    let outcome = cell.solve(method, spec.mu, spec.cap);
                    let reported = reported(series, beta, n, method);
                    cells.push(match outcome {
                        Ok(r) => CellOutcome {
                            series,
                            beta,
                            n,
                            method,
                            error: None,
                            converged: r.converged,
                            iterations: r.inner_iterations_total,
                            final_gap: r.error_bound,
                            final_tau: r.final_tau,
                            reported,
                        },
                        Err(e) => CellOutcome {
                            series,
                            beta,
                            n,
                            method,
                            error: Some(e.to_string()),
                            converged: false,
                            iterations: 0,
                            final_gap: f64::NAN,
                            final_tau: None,
                            reported,
                        },
                    });
                }
            }
        }
    }
    Ok(BenchmarkReport { spec: spec.clone(), cells })
}

impl BenchmarkReport {
    pub fn get(&self, series: Series, beta: f64, n: usize, method: Method) -> Option<&CellOutcome> {
        self.cells
            .iter()
            .find(|c| c.series == series && c.beta == beta && c.n == n && c.method == method)
    }

    /// One table per series; each method column is followed by the
    /// reference value.
    pub fn to_markdown(&self) -> String {
        let cap = self.spec.cap;
        let mut out = String::new();
        for &series in &self.spec.series {
            let methods: Vec<Method> = series
                .methods()
                .iter()
                .copied()
                .filter(|m| self.spec.methods.contains(m))
                .collect();
            if methods.is_empty() {
                continue;
            }
            let _ = writeln!(out, "## Series {}: {}\n", series.number(), series.title());
            let mut header = String::from("| β | n |");
            let mut rule = String::from("|---|---|");
            for m in &methods {
                let _ = write!(header, " {0} | {0} (ref) |", m.name());
                rule.push_str("---|---|");
            }
            let _ = writeln!(out, "{header}\n{rule}");
            for &beta in &self.spec.betas {
                for &n in &self.spec.ns {
                    let mut line = format!("| {beta} | {n} |");
                    for &m in &methods {
                        let ours = self
                            .get(series, beta, n, m)
                            .map_or_else(String::new, |c| c.render(cap));
                        let theirs = reported(series, beta, n, m).map_or_else(String::new, |r| r.render(cap));
                        let _ = write!(line, " {ours} | {theirs} |");
                    }
                    let _ = writeln!(out, "{line}");
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "series", "beta", "n", "method", "converged", "iterations", "final_gap", "final_tau", "reference", "error",
        ])
        .expect("in-memory write");
        for c in &self.cells {
            w.write_record([
                c.series.number().to_string(),
                c.beta.to_string(),
                c.n.to_string(),
                c.method.name().to_string(),
                c.converged.to_string(),
                c.iterations.to_string(),
                format!("{:.6e}", c.final_gap),
                c.final_tau.map_or_else(String::new, |t| format!("{t:.6e}")),
                c.reported.map_or_else(String::new, |r| r.render(self.spec.cap)),
                c.error.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }
}
