//! Accuracy measures and trace auditing.

use std::io::Write;

use serde::Serialize;

use crate::error::{check_len, Result};
use crate::geometry::{check_feasibility, minimize_linear, require_feasible, BALANCE_TOL};
use crate::problem::ProblemInstance;
use crate::solvers::{restart_point, step_point, Linesearch, PairSelection, SolverConfig, TraceEvent};
use crate::stages::StageProvider;

/// Gap function `max_{y in D} <f'(x), x - y>`.
///
/// Non-negative on the feasible set and zero exactly at stationary points.
pub fn error_bound(p: &ProblemInstance, x: &[f64]) -> Result<f64> {
    require_feasible(x, p)?;
    let g = p.objective().gradient(x);
    let (_, low) = minimize_linear(&g, p)?;
    let at_x: f64 = g.iter().zip(x).map(|(gi, xi)| gi * xi).sum();
    Ok((at_x - low).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundStatus {
    AtLower,
    Interior,
    AtUpper,
}

/// Result of the multiplier test for the balance constraint.
///
/// With `h_i = g_i / a_i`, a point is stationary iff some `λ` satisfies
/// `h_i >= λ` at lower bounds, `h_i = λ` in the interior, and `h_i <= λ`
/// at upper bounds. Equivalently no pair with `i` above its lower bound and
/// `j` below its upper bound has `h_i > h_j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationarityReport {
    /// `[max h over coordinates off their lower bound, min h over
    /// coordinates off their upper bound]`; empty (lo > hi) when violated.
    pub multiplier_interval: (f64, f64),
    /// A representative multiplier: the interval midpoint, or the finite
    /// endpoint when the other is unbounded.
    pub multiplier: f64,
    /// `max(0, max h_i - min h_j)` over admissible pairs `i != j`.
    pub worst_violation: f64,
    pub stationary: bool,
    pub per_coordinate_status: Vec<BoundStatus>,
}

/// Uses `tol` both as the violation tolerance and the boundary distance.
pub fn check_stationarity(p: &ProblemInstance, x: &[f64], tol: f64) -> Result<StationarityReport> {
    check_stationarity_with(p, x, tol, tol)
}

pub fn check_stationarity_with(
    p: &ProblemInstance,
    x: &[f64],
    tol: f64,
    boundary_tol: f64,
) -> Result<StationarityReport> {
    check_len(p.n(), x.len())?;
    let g = p.objective().gradient(x);
    let h: Vec<f64> = g.iter().zip(p.a()).map(|(g, a)| g / a).collect();
    let status: Vec<BoundStatus> = (0..p.n())
        .map(|s| {
            if x[s] - p.lower()[s] <= boundary_tol {
                BoundStatus::AtLower
            } else if p.upper()[s] - x[s] <= boundary_tol {
                BoundStatus::AtUpper
            } else {
                BoundStatus::Interior
            }
        })
        .collect();
    Ok(stationarity_from_prices(&h, &status, tol))
}

pub(crate) fn stationarity_from_prices(h: &[f64], status: &[BoundStatus], tol: f64) -> StationarityReport {
    // top two of h over "may decrease", bottom two over "may increase"
    let mut top: [Option<(usize, f64)>; 2] = [None, None];
    let mut bottom: [Option<(usize, f64)>; 2] = [None, None];
    for (s, (&hs, st)) in h.iter().zip(status).enumerate() {
        if *st != BoundStatus::AtLower {
            if top[0].is_none_or(|(_, v)| hs > v) {
                top[1] = top[0];
                top[0] = Some((s, hs));
            } else if top[1].is_none_or(|(_, v)| hs > v) {
                top[1] = Some((s, hs));
            }
        }
        if *st != BoundStatus::AtUpper {
            if bottom[0].is_none_or(|(_, v)| hs < v) {
                bottom[1] = bottom[0];
                bottom[0] = Some((s, hs));
            } else if bottom[1].is_none_or(|(_, v)| hs < v) {
                bottom[1] = Some((s, hs));
            }
        }
    }
    let lo = top[0].map_or(f64::NEG_INFINITY, |(_, v)| v);
    let hi = bottom[0].map_or(f64::INFINITY, |(_, v)| v);
    let gap = |a: Option<(usize, f64)>, b: Option<(usize, f64)>| match (a, b) {
        (Some((i, hi)), Some((j, hj))) if i != j => hi - hj,
        _ => f64::NEG_INFINITY,
    };
    let worst = gap(top[0], bottom[0])
        .max(gap(top[1], bottom[0]))
        .max(gap(top[0], bottom[1]))
        .max(0.0);
    let multiplier = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => lo,
        (false, true) => hi,
        (false, false) => 0.0,
    };
    StationarityReport {
        multiplier_interval: (lo, hi),
        multiplier,
        worst_violation: worst,
        stationary: worst <= tol,
        per_coordinate_status: status.to_vec(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditFailure {
    /// Position of the offending event in the trace.
    pub event: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub events_checked: usize,
    pub failure: Option<AuditFailure>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Replays a BCV trace from `start` and re-verifies every step.
///
/// For each event the iterate is rebuilt from the previous one, and the
/// audit checks `i != j`, `gamma >= eps_l`, `mu <= -delta_l`, that the
/// recorded pair data match the replayed point, the sufficient decrease
/// `f_after <= f_before + sigma lambda mu` (strict decrease for the
/// gradient-difference rule), and feasibility of the new iterate.
pub fn audit_trace(
    trace: &[TraceEvent],
    start: &[f64],
    cfg: &SolverConfig,
    stages: &dyn StageProvider,
) -> Result<AuditReport> {
    let fail = |event: usize, reason: String| {
        Ok(AuditReport {
            events_checked: event,
            failure: Some(AuditFailure { event, reason }),
        })
    };
    let mut prev = stages.stage(0)?;
    let mut x = start.to_vec();
    let mut current = 0usize;
    for (idx, ev) in trace.iter().enumerate() {
        if ev.stage != current {
            if ev.stage < current {
                return fail(idx, format!("stage went backwards ({current} -> {})", ev.stage));
            }
            // stages without steps only move the point through restarts
            for l in current.max(1)..=ev.stage {
                let next = stages.stage(l)?;
                if l > current {
                    x = restart_point(&x, &prev.problem, &next.problem, cfg.use_projection_restart)?;
                }
                prev = next;
            }
            current = ev.stage;
        }
        let stage = &prev;
        let p = &stage.problem;
        let f = p.objective();
        let scale = 1e-12 * (1.0 + ev.f_before.abs());
        if ev.i == ev.j {
            return fail(idx, "i == j".into());
        }
        if ev.gamma < stage.epsilon * (1.0 - 1e-12) {
            return fail(idx, format!("gamma {} < eps {}", ev.gamma, stage.epsilon));
        }
        if ev.mu > -stage.delta * (1.0 - 1e-12) {
            return fail(idx, format!("mu {} > -delta {}", ev.mu, -stage.delta));
        }
        let f_x = f.value(&x);
        if (f_x - ev.f_before).abs() > 1e-9 * (1.0 + f_x.abs()) {
            return fail(idx, format!("f_before {} but replay gives {f_x}", ev.f_before));
        }
        let (ai, aj) = (p.a()[ev.i], p.a()[ev.j]);
        let mu = f.partial(ev.j, &x) / aj - f.partial(ev.i, &x) / ai;
        if (mu - ev.mu).abs() > 1e-9 * (1.0 + mu.abs()) {
            return fail(idx, format!("mu {} but replay gives {mu}", ev.mu));
        }
        let gamma = (ai * (x[ev.i] - p.lower()[ev.i])).min(aj * (p.upper()[ev.j] - x[ev.j]));
        if (gamma - ev.gamma).abs() > 1e-9 * (1.0 + gamma.abs()) || ev.lambda > ev.gamma {
            return fail(idx, format!("step {} / gamma {} inconsistent with replay {gamma}", ev.lambda, ev.gamma));
        }
        let decrease_ok = match cfg.linesearch {
            Linesearch::Armijo => {
                ev.f_after <= ev.f_before + cfg.sigma * ev.lambda * ev.mu + scale
                    && ev.f_after <= ev.f_before - cfg.sigma * ev.lambda * stage.delta + scale
            }
            Linesearch::GradientDifference => ev.f_after < ev.f_before + scale,
        };
        if !decrease_ok {
            return fail(idx, format!("insufficient decrease {} -> {}", ev.f_before, ev.f_after));
        }
        let sel = PairSelection {
            i: ev.i,
            j: ev.j,
            gamma: ev.gamma,
            mu: ev.mu,
        };
        x = step_point(&x, p, &sel, ev.lambda);
        let r = check_feasibility(&x, p, BALANCE_TOL);
        if !r.feasible {
            return fail(
                idx,
                format!(
                    "iterate infeasible (balance {:e}, box {:e})",
                    r.balance_residual, r.max_box_violation
                ),
            );
        }
        let f_new = f.value(&x);
        if (f_new - ev.f_after).abs() > 1e-9 * (1.0 + f_new.abs()) {
            return fail(idx, format!("f_after {} but replay gives {f_new}", ev.f_after));
        }
    }
    Ok(AuditReport {
        events_checked: trace.len(),
        failure: None,
    })
}

/// Writes the trace as CSV with columns
/// `stage,k,i,j,gamma,lambda,mu,f_before,f_after,backtracks`.
pub fn write_trace_csv<W: Write>(trace: &[TraceEvent], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if trace.is_empty() {
        w.write_record([
            "stage", "k", "i", "j", "gamma", "lambda", "mu", "f_before", "f_after", "backtracks",
        ])?;
    }
    for ev in trace {
        w.serialize(ev)?;
    }
    w.flush()
}
