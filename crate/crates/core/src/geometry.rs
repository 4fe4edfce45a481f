//! Projection and linear minimization over `{x in box : <a, x> = beta}`.
//!
//! Both routines require `a > 0` (see [`crate::normalize_signs`]).

use crate::error::{check_len, Error, Result};
use crate::problem::ProblemInstance;

/// Relative tolerance used for balance checks throughout the crate.
pub const BALANCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    /// `<a, x> - beta`.
    pub balance_residual: f64,
    /// Largest amount by which a coordinate leaves its interval (0 if inside).
    pub max_box_violation: f64,
    pub feasible: bool,
}

pub fn check_feasibility(x: &[f64], p: &ProblemInstance, tol: f64) -> FeasibilityReport {
    let balance_residual = if x.len() == p.n() {
        p.balance(x) - p.beta()
    } else {
        f64::NAN
    };
    let max_box_violation = x
        .iter()
        .zip(p.lower().iter().zip(p.upper()))
        .map(|(&v, (&lo, &hi))| (lo - v).max(v - hi).max(0.0))
        .fold(0.0, f64::max);
    let feasible = balance_residual.abs() <= tol * p.beta().abs().max(1.0)
        && max_box_violation <= 0.0;
    FeasibilityReport {
        balance_residual,
        max_box_violation,
        feasible,
    }
}

/// Returns `Ok(())` if `x` passes [`check_feasibility`] at [`BALANCE_TOL`].
pub fn require_feasible(x: &[f64], p: &ProblemInstance) -> Result<()> {
    check_len(p.n(), x.len())?;
    let r = check_feasibility(x, p, BALANCE_TOL);
    if r.feasible {
        Ok(())
    } else {
        Err(Error::InfeasiblePoint {
            balance_residual: r.balance_residual,
            box_violation: r.max_box_violation,
        })
    }
}

fn clip(v: f64, lo: f64, hi: f64) -> f64 {
    v.max(lo).min(hi)
}

fn point_at(z: &[f64], p: &ProblemInstance, lambda: f64) -> Vec<f64> {
    (0..p.n())
        .map(|i| clip(z[i] + lambda * p.a()[i], p.lower()[i], p.upper()[i]))
        .collect()
}

/// Euclidean projection of `z` onto the feasible set.
///
/// The projection is `x(λ)_i = clip(z_i + λ a_i, lo_i, hi_i)` where `λ` solves
/// `<a, x(λ)> = beta`. The balance function is non-decreasing and piecewise
/// linear with breakpoints `(lo_i - z_i)/a_i` and `(hi_i - z_i)/a_i`; we sort
/// them, bracket `beta`, and interpolate on the linear piece.
pub fn project(z: &[f64], p: &ProblemInstance) -> Result<Vec<f64>> {
    check_len(p.n(), z.len())?;
    p.require_normalized()?;
    let n = p.n();
    let (a, lo, hi) = (p.a(), p.lower(), p.upper());
    let beta = p.beta();

    let mut breaks: Vec<f64> = (0..n)
        .flat_map(|i| [(lo[i] - z[i]) / a[i], (hi[i] - z[i]) / a[i]])
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let balance = |lambda: f64| -> f64 {
        (0..n)
            .map(|i| a[i] * clip(z[i] + lambda * a[i], lo[i], hi[i]))
            .sum()
    };

    // Below the first breakpoint every coordinate sits at its lower bound,
    // above the last at its upper bound.
    let first = breaks[0];
    let last = *breaks.last().unwrap();
    let (b_first, b_last) = (balance(first), balance(last));
    if beta <= b_first {
        return Ok(finish(point_at(z, p, first), p));
    }
    if beta >= b_last {
        return Ok(finish(point_at(z, p, last), p));
    }

    // largest k with balance(breaks[k]) <= beta
    let (mut lo_k, mut hi_k) = (0usize, breaks.len() - 1);
    while hi_k - lo_k > 1 {
        let mid = (lo_k + hi_k) / 2;
        if balance(breaks[mid]) <= beta {
            lo_k = mid;
        } else {
            hi_k = mid;
        }
    }
    let (t0, t1) = (breaks[lo_k], breaks[hi_k]);
    let (b0, b1) = (balance(t0), balance(t1));
    let lambda = if b1 > b0 {
        let t = t0 + (beta - b0) * (t1 - t0) / (b1 - b0);
        t.clamp(t0, t1)
    } else {
        t0
    };
    let mut x = point_at(z, p, lambda);
    let resid = p.balance(&x) - beta;
    if resid.abs() > BALANCE_TOL * beta.abs().max(1.0) {
        x = point_at(z, p, bisect(balance, beta, t0, t1));
    }
    Ok(finish(x, p))
}

fn bisect(balance: impl Fn(f64) -> f64, beta: f64, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > 1e-12 * (1.0 + lo.abs().max(hi.abs())) {
        let mid = 0.5 * (lo + hi);
        if balance(mid) < beta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Absorbs the rounding residual into a coordinate with room to move.
fn finish(mut x: Vec<f64>, p: &ProblemInstance) -> Vec<f64> {
    let resid = p.balance(&x) - p.beta();
    if resid == 0.0 {
        return x;
    }
    for i in 0..x.len() {
        let target = x[i] - resid / p.a()[i];
        if target >= p.lower()[i] && target <= p.upper()[i] {
            x[i] = target;
            break;
        }
    }
    x
}

/// Minimizes `<c, y>` over the feasible set (continuous knapsack).
///
/// Starting from the lower bounds, coordinates are raised to their upper
/// bounds in increasing order of `c_i / a_i` (ties by lowest index) until the
/// budget `beta - <a, lower>` is used up.
pub fn minimize_linear(c: &[f64], p: &ProblemInstance) -> Result<(Vec<f64>, f64)> {
    check_len(p.n(), c.len())?;
    p.require_normalized()?;
    let (a, lo, hi) = (p.a(), p.lower(), p.upper());
    let mut order: Vec<usize> = (0..p.n()).collect();
    order.sort_by(|&i, &j| (c[i] / a[i]).total_cmp(&(c[j] / a[j])).then(i.cmp(&j)));

    let mut y = lo.to_vec();
    let mut budget = p.beta() - p.balance(lo);
    for &i in &order {
        if budget <= 0.0 {
            break;
        }
        let room = a[i] * (hi[i] - lo[i]);
        if room <= budget {
            y[i] = hi[i];
            budget -= room;
        } else {
            y[i] = lo[i] + budget / a[i];
            budget = 0.0;
        }
    }
    let value = c.iter().zip(&y).map(|(ci, yi)| ci * yi).sum();
    Ok((y, value))
}
