use crate::diagnostics::error_bound;
use crate::error::Result;
use crate::geometry::{check_feasibility, project, BALANCE_TOL};
use crate::problem::ProblemInstance;
use crate::stages::{Stage, StageProvider};

use super::linesearch::{armijo_linesearch, gradient_difference_linesearch};
use super::{Linesearch, PairSelector, SolveResult, SolverConfig, Termination, TraceEvent};

/// Runs BCV from the projection of `(beta / <a, e>) e` onto the stage-0 set.
pub fn bcv_solve(stages: &dyn StageProvider, cfg: &SolverConfig) -> Result<SolveResult> {
    bcv_solve_from(stages, cfg, None)
}

/// Runs BCV from the projection of `start` onto the stage-0 set.
pub fn bcv_solve_from(
    stages: &dyn StageProvider,
    cfg: &SolverConfig,
    start: Option<&[f64]>,
) -> Result<SolveResult> {
    cfg.validate()?;
    let stage0 = stages.stage(0)?;
    let z0 = match start {
        Some(s) => project(s, &stage0.problem)?,
        None => project(&stage0.problem.uniform_point(), &stage0.problem)?,
    };
    let tau_floor = stages.floors().tau;
    let accurate = |stage: &Stage, x: &[f64]| -> Result<bool> {
        if stage.tau().is_some_and(|t| t > tau_floor) {
            return Ok(false);
        }
        Ok(error_bound(&stage.problem, x)? <= cfg.target_accuracy)
    };

    let mut selector = PairSelector::new(cfg.pair_strategy);
    let mut trace = Vec::new();
    let mut total = 0usize;
    let mut stages_completed = 0usize;
    let mut z = z0.clone();
    let mut prev = stage0;
    let mut l = 1usize;

    let (stage, termination) = 'outer: loop {
        if l > cfg.max_stages {
            break (prev, Termination::StageBudget);
        }
        let stage = stages.stage(l)?;
        let mut x = restart_point(&z, &prev.problem, &stage.problem, cfg.use_projection_restart)?;
        let mut k = 0usize;
        loop {
            if cfg.check_every_step && accurate(&stage, &x)? {
                z = x;
                break 'outer (stage, Termination::Accuracy);
            }
            let Some(sel) = selector.select(&x, &stage) else {
                break;
            };
            if total >= cfg.max_inner_iterations {
                z = x;
                break 'outer (stage, Termination::IterationBudget);
            }
            let f_before = stage.problem.objective().value(&x);
            let step = match cfg.linesearch {
                Linesearch::Armijo => armijo_linesearch(&stage.problem, &x, &sel, cfg)?,
                Linesearch::GradientDifference => {
                    gradient_difference_linesearch(&stage.problem, &x, &sel, cfg)?
                }
            };
            if cfg.record_trace {
                trace.push(TraceEvent {
                    stage: l,
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
            total += 1;
        }
        z = x;
        stages_completed += 1;
        if accurate(&stage, &z)? {
            break (stage, Termination::Accuracy);
        }
        if stages.is_final(l) {
            break (stage, Termination::Floors);
        }
        prev = stage;
        l += 1;
    };

    let problem = &stage.problem;
    Ok(SolveResult {
        objective_value: problem.objective().value(&z),
        error_bound: error_bound(problem, &z)?,
        inner_iterations_total: total,
        stages_completed,
        converged: termination == Termination::Accuracy,
        termination,
        final_tau: stage.tau(),
        final_stage: stage.index,
        start: z0,
        trace,
        point: z,
    })
}

/// Start point of a new stage.
///
/// With `project_always`, `z` is projected onto the new set, but `z` itself
/// is kept when it is already feasible there with a lower objective value.
/// Otherwise `z` is reused whenever the feasible set is unchanged.
pub(crate) fn restart_point(
    z: &[f64],
    prev: &ProblemInstance,
    next: &ProblemInstance,
    project_always: bool,
) -> Result<Vec<f64>> {
    let z_feasible = check_feasibility(z, next, BALANCE_TOL).feasible;
    if !project_always && z_feasible && prev.same_feasible_set(next) {
        return Ok(z.to_vec());
    }
    let x = project(z, next)?;
    if z_feasible {
        let f = next.objective();
        if f.value(z) < f.value(&x) {
            return Ok(z.to_vec());
        }
    }
    Ok(x)
}
