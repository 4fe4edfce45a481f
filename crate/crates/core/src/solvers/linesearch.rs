use crate::error::{Error, Result};
use crate::problem::ProblemInstance;

use super::{PairSelection, SolverConfig};

/// An accepted step `x + lambda d`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineStep {
    pub lambda: f64,
    pub backtracks: usize,
    pub point: Vec<f64>,
    /// Objective value at `point`.
    pub value: f64,
}

/// `x + lambda d` with `d_i = -1/a_i`, `d_j = 1/a_j`.
///
/// Coordinates that the full step `gamma` drives onto a bound are set to
/// the bound exactly.
pub(crate) fn step_point(x: &[f64], p: &ProblemInstance, sel: &PairSelection, lambda: f64) -> Vec<f64> {
    let (i, j) = (sel.i, sel.j);
    let a = p.a();
    let mut y = x.to_vec();
    if lambda >= a[i] * (x[i] - p.lower()[i]) {
        y[i] = p.lower()[i];
    } else {
        y[i] = (x[i] - lambda / a[i]).max(p.lower()[i]);
    }
    if lambda >= a[j] * (p.upper()[j] - x[j]) {
        y[j] = p.upper()[j];
    } else {
        y[j] = (x[j] + lambda / a[j]).min(p.upper()[j]);
    }
    y
}

fn check_pair(sel: &PairSelection) -> Result<()> {
    if !(sel.mu < 0.0) || !(sel.gamma > 0.0) {
        return Err(Error::LinesearchFailure {
            backtracks: 0,
            mu: sel.mu,
        });
    }
    Ok(())
}

/// Smallest `m` with `f(x + θ^m γ d) <= f(x) + σ θ^m γ μ`.
pub fn armijo_linesearch(
    p: &ProblemInstance,
    x: &[f64],
    sel: &PairSelection,
    cfg: &SolverConfig,
) -> Result<LineStep> {
    check_pair(sel)?;
    let f = p.objective();
    let f0 = f.value(x);
    let mut step = sel.gamma;
    for m in 0..=cfg.max_backtracks {
        let y = step_point(x, p, sel, step);
        let fy = f.value(&y);
        if fy <= f0 + cfg.sigma * step * sel.mu {
            return Ok(LineStep {
                lambda: step,
                backtracks: m,
                point: y,
                value: fy,
            });
        }
        step *= cfg.theta;
    }
    Err(Error::LinesearchFailure {
        backtracks: cfg.max_backtracks,
        mu: sel.mu,
    })
}

/// Smallest `m` with `h_j(y) - h_i(y) <= σ θ^m γ (h_j(x) - h_i(x))` at
/// `y = x + θ^m γ d`; each trial evaluates two partials.
pub fn gradient_difference_linesearch(
    p: &ProblemInstance,
    x: &[f64],
    sel: &PairSelection,
    cfg: &SolverConfig,
) -> Result<LineStep> {
    check_pair(sel)?;
    let f = p.objective();
    let (i, j) = (sel.i, sel.j);
    let (ai, aj) = (p.a()[i], p.a()[j]);
    let mut step = sel.gamma;
    for m in 0..=cfg.max_backtracks {
        let y = step_point(x, p, sel, step);
        let gap = f.partial(j, &y) / aj - f.partial(i, &y) / ai;
        if gap <= cfg.sigma * step * sel.mu {
            let value = f.value(&y);
            return Ok(LineStep {
                lambda: step,
                backtracks: m,
                point: y,
                value,
            });
        }
        step *= cfg.theta;
    }
    Err(Error::LinesearchFailure {
        backtracks: cfg.max_backtracks,
        mu: sel.mu,
    })
}
