use crate::diagnostics::error_bound;
use crate::error::{Error, Result};
use crate::geometry::{minimize_linear, project};
use crate::problem::ProblemInstance;
use crate::stages::{ConstantStage, Stage, StageProvider};

use super::linesearch::armijo_linesearch;
use super::pair::{PairSelector, Thresholds};
use super::{PairStrategy, SolveResult, SolverConfig, Termination, TraceEvent};

/// Conditional gradient method on a fixed problem.
pub fn cgm_solve(p: &ProblemInstance, cfg: &SolverConfig) -> Result<SolveResult> {
    let stages = ConstantStage::new(p.clone(), 1.0, 1.0)?;
    cgm_solve_staged(&stages, cfg, None)
}

/// Conditional gradient method over a stage sequence.
///
/// The stage index advances whenever the gap for the current stage
/// objective drops to the target while its smoothing parameter is still
/// above the floor. The stage tolerances `delta_l`, `eps_l` are unused.
pub fn cgm_solve_staged(
    stages: &dyn StageProvider,
    cfg: &SolverConfig,
    start: Option<&[f64]>,
) -> Result<SolveResult> {
    cfg.validate()?;
    let tau_floor = stages.floors().tau;
    let mut l = 1usize;
    let mut stage: Stage = stages.stage(l)?;
    let z0 = project(
        &start.map_or_else(|| stage.problem.uniform_point(), <[f64]>::to_vec),
        &stage.problem,
    )?;
    let mut x = z0.clone();
    let mut iterations = 0usize;

    let termination = loop {
        let p = &stage.problem;
        let f = p.objective();
        let g = f.gradient(&x);
        let (y, low) = minimize_linear(&g, p)?;
        let gap = g.iter().zip(&x).map(|(gi, xi)| gi * xi).sum::<f64>() - low;
        if gap <= cfg.target_accuracy {
            if stage.tau().is_none_or(|t| t <= tau_floor) {
                break Termination::Accuracy;
            }
            if stages.is_final(l) || l >= cfg.max_stages {
                break Termination::Floors;
            }
            l += 1;
            let next = stages.stage(l)?;
            x = super::restart_point(&x, &stage.problem, &next.problem, cfg.use_projection_restart)?;
            stage = next;
            continue;
        }
        if iterations >= cfg.max_inner_iterations {
            break Termination::IterationBudget;
        }
        let f0 = f.value(&x);
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..=cfg.max_backtracks {
            let trial = segment_point(&x, &y, step, p);
            if f.value(&trial) <= f0 - cfg.sigma * step * gap {
                accepted = Some(trial);
                break;
            }
            step *= cfg.theta;
        }
        x = accepted.ok_or(Error::LinesearchFailure {
            backtracks: cfg.max_backtracks,
            mu: -gap,
        })?;
        iterations += 1;
    };

    let p = &stage.problem;
    Ok(SolveResult {
        objective_value: p.objective().value(&x),
        error_bound: error_bound(p, &x)?,
        inner_iterations_total: iterations,
        stages_completed: l - 1,
        converged: termination == Termination::Accuracy,
        termination,
        final_tau: stage.tau(),
        final_stage: l,
        start: z0,
        trace: Vec::new(),
        point: x,
    })
}

/// `x + t (y - x)`, clamped to the box against rounding.
fn segment_point(x: &[f64], y: &[f64], t: f64, p: &ProblemInstance) -> Vec<f64> {
    x.iter()
        .zip(y)
        .enumerate()
        .map(|(i, (&xi, &yi))| (xi + t * (yi - xi)).clamp(p.lower()[i], p.upper()[i]))
        .collect()
}

/// Most-violated-pair descent without tolerances.
///
/// Every coordinate strictly above its lower bound may decrease, every
/// coordinate strictly below its upper bound may increase, and the pair
/// with the largest positive gap of scaled partials is moved by an Armijo
/// step starting from the largest feasible step.
pub fn mbc_solve(p: &ProblemInstance, cfg: &SolverConfig) -> Result<SolveResult> {
    mbc_solve_from(p, cfg, None)
}

pub fn mbc_solve_from(
    p: &ProblemInstance,
    cfg: &SolverConfig,
    start: Option<&[f64]>,
) -> Result<SolveResult> {
    cfg.validate()?;
    p.require_normalized()?;
    let z0 = project(&start.map_or_else(|| p.uniform_point(), <[f64]>::to_vec), p)?;
    let f = p.objective();
    let mut selector = PairSelector::new(PairStrategy::MaxViolation);
    let mut x = z0.clone();
    let mut trace = Vec::new();
    let mut k = 0usize;
    let termination = loop {
        if error_bound(p, &x)? <= cfg.target_accuracy {
            break Termination::Accuracy;
        }
        let Some(sel) = selector.select_with(&x, p, Thresholds::exact()) else {
            // no positive gap left: the point is stationary up to rounding
            break Termination::Floors;
        };
        if k >= cfg.max_inner_iterations {
            break Termination::IterationBudget;
        }
        let f_before = f.value(&x);
        let step = armijo_linesearch(p, &x, &sel, cfg)?;
        if cfg.record_trace {
            trace.push(TraceEvent {
                stage: 0,
                k,
                i: sel.i,
                j: sel.j,
                gamma: sel.gamma,
                lambda: step.lambda,
                mu: sel.mu,
                f_before,
                f_after: step.value,
                backtracks: step.backtracks,
            });
        }
        x = step.point;
        k += 1;
    };
    Ok(SolveResult {
        objective_value: f.value(&x),
        error_bound: error_bound(p, &x)?,
        inner_iterations_total: k,
        stages_completed: 0,
        converged: termination == Termination::Accuracy,
        termination,
        final_tau: f.smoothing(),
        final_stage: 0,
        start: z0,
        trace,
        point: x,
    })
}
