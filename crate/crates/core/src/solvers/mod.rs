//! The bi-coordinate variations method (BCV) and two baselines.
//!
//! * [`bcv_solve`] runs the staged method: each stage holds a price-gap
//!   tolerance `delta_l` and a bound clearance `eps_l`; inside a stage we
//!   repeatedly pick a pair `(i, j)` whose scaled partials differ by at least
//!   `delta_l`, move mass from `i` to `j` along a linesearch, and restart
//!   with tighter tolerances once no such pair remains.
//! * [`cgm_solve`] is the conditional gradient (Frank-Wolfe) method with
//!   Armijo steps.
//! * [`mbc_solve`] moves along the most violated pair with no tolerances.

mod baselines;
mod bcv;
mod linesearch;
mod pair;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use baselines::{cgm_solve, cgm_solve_staged, mbc_solve, mbc_solve_from};
pub use bcv::{bcv_solve, bcv_solve_from};
pub use linesearch::{armijo_linesearch, gradient_difference_linesearch, LineStep};
pub use pair::{select_pair, PairSelection, PairSelector};

pub(crate) use bcv::restart_point;
pub(crate) use linesearch::step_point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairStrategy {
    /// Largest scaled partial among decreasable coordinates against the
    /// smallest among increasable ones.
    MaxViolation,
    /// Cyclic scan that stops at the first pair crossing the threshold.
    FirstFoundSweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Linesearch {
    /// Sufficient decrease of the objective value.
    Armijo,
    /// Sufficient decrease of the directional derivative, which needs only
    /// the two partials of the active pair per trial.
    GradientDifference,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub sigma: f64,
    pub theta: f64,
    pub max_backtracks: usize,
    pub pair_strategy: PairStrategy,
    pub linesearch: Linesearch,
    /// Cap on accepted steps, summed over all stages.
    pub max_inner_iterations: usize,
    pub max_stages: usize,
    /// Stop once the gap function is at most this value.
    pub target_accuracy: f64,
    pub use_projection_restart: bool,
    /// Evaluate the stopping test before every step rather than only at
    /// restarts. Costs one full gradient per step.
    pub check_every_step: bool,
    pub record_trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            sigma: 0.5,
            theta: 0.5,
            max_backtracks: 60,
            pair_strategy: PairStrategy::MaxViolation,
            linesearch: Linesearch::Armijo,
            max_inner_iterations: 500,
            max_stages: 200,
            target_accuracy: 0.1,
            use_projection_restart: true,
            check_every_step: true,
            record_trace: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(invalid("sigma", format!("must lie in (0, 1), got {}", self.sigma)));
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(invalid("theta", format!("must lie in (0, 1), got {}", self.theta)));
        }
        if self.max_backtracks == 0 || self.max_inner_iterations == 0 || self.max_stages == 0 {
            return Err(invalid("budgets", "must be positive"));
        }
        if !(self.target_accuracy >= 0.0) {
            return Err(invalid("target_accuracy", "must be non-negative"));
        }
        Ok(())
    }
}

/// One accepted pair transaction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub stage: usize,
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub gamma: f64,
    pub lambda: f64,
    pub mu: f64,
    pub f_before: f64,
    pub f_after: f64,
    pub backtracks: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    /// The gap function reached the target (and smoothing reached its floor).
    Accuracy,
    /// Tolerances reached their floors and the last stage found no pair.
    Floors,
    IterationBudget,
    StageBudget,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub point: Vec<f64>,
    pub objective_value: f64,
    /// Gap function at `point` for the final stage objective.
    pub error_bound: f64,
    pub inner_iterations_total: usize,
    pub stages_completed: usize,
    pub converged: bool,
    pub termination: Termination,
    /// Smoothing parameter of the final stage objective, if any.
    pub final_tau: Option<f64>,
    /// Index of the stage the solve ended in.
    pub final_stage: usize,
    /// The projected start point `z^0`.
    pub start: Vec<f64>,
    pub trace: Vec<TraceEvent>,
}
