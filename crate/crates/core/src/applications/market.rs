use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diagnostics::BoundStatus;
use crate::error::{invalid, Result};
use crate::objective::SeparableQuadratic;
use crate::problem::{build_problem, normalize_signs, BoxBounds, LinearEquality, ProblemInstance, SignMap};

/// A market participant with affine price function `p + q t` on `[0, cap]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Agent {
    pub p: f64,
    pub q: f64,
    pub cap: f64,
}

impl Agent {
    pub fn price(&self, volume: f64) -> f64 {
        self.p + self.q * volume
    }
}

/// Two-sided market: traders offer `x_i`, buyers bid `y_j`, and
/// `Σ x_i - Σ y_j = b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarketModel {
    pub traders: Vec<Agent>,
    #[serde(default)]
    pub buyers: Vec<Agent>,
    pub b: f64,
}

impl MarketModel {
    pub fn validate(&self) -> Result<()> {
        for a in self.traders.iter().chain(&self.buyers) {
            if !(a.cap > 0.0) || !a.cap.is_finite() {
                return Err(invalid("cap", "capacities must be positive and finite"));
            }
        }
        if self.traders.iter().any(|t| t.q < 0.0) {
            return Err(invalid("q", "trader price slopes must be non-negative"));
        }
        if self.buyers.iter().any(|t| t.q > 0.0) {
            return Err(invalid("q", "buyer price slopes must be non-positive"));
        }
        Ok(())
    }

    /// Splits a merged point `(x, -y)` into offers and bids.
    pub fn split(&self, u: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let m = self.traders.len();
        (u[..m].to_vec(), u[m..].iter().map(|v| -v).collect())
    }
}

/// Merges bids into the variable vector as `x_{m+j} = -y_j`.
///
/// The balance becomes `Σ_k x_k = b` over box `[0, cap_i]` for traders and
/// `[-cap_j, 0]` for buyers, and the objective is the price potential
/// `Σ ∫_0^{x_i} g_i - Σ ∫_0^{y_j} h_j`, whose gradient is the vector of
/// agent prices.
pub fn build_market(model: &MarketModel) -> Result<(ProblemInstance, SignMap)> {
    model.validate()?;
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut linear = Vec::new();
    let mut curvature = Vec::new();
    for t in &model.traders {
        lower.push(0.0);
        upper.push(t.cap);
        linear.push(t.p);
        curvature.push(t.q);
    }
    for b in &model.buyers {
        lower.push(-b.cap);
        upper.push(0.0);
        linear.push(b.p);
        curvature.push(-b.q);
    }
    let n = lower.len();
    let raw = build_problem(
        BoxBounds::new(lower, upper)?,
        LinearEquality::new(vec![1.0; n], model.b)?,
        Arc::new(SeparableQuadratic { linear, curvature }),
    )?;
    normalize_signs(&raw)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarketReport {
    /// Range of prices consistent with every agent's optimality condition;
    /// empty (lo > hi) when no clearing price exists.
    pub price_interval: (f64, f64),
    pub clearing_price: f64,
    pub worst_violation: f64,
    pub balance_residual: f64,
    pub feasible: bool,
    pub equilibrium: bool,
}

/// Checks the equilibrium conditions for offers `x` and bids `y`.
///
/// Traders: price `>= λ` at zero volume, `= λ` inside, `<= λ` at capacity.
/// Buyers: price `<= λ` at zero volume, `= λ` inside, `>= λ` at capacity.
/// Volumes within `tol` of a bound count as on the bound.
pub fn verify_market_equilibrium(model: &MarketModel, x: &[f64], y: &[f64], tol: f64) -> MarketReport {
    let classify = |v: f64, cap: f64| {
        if v <= tol {
            BoundStatus::AtLower
        } else if cap - v <= tol {
            BoundStatus::AtUpper
        } else {
            BoundStatus::Interior
        }
    };
    // λ >= floor_k and λ <= ceil_k for each agent
    let mut floor = f64::NEG_INFINITY;
    let mut ceil = f64::INFINITY;
    let mut box_ok = x.len() == model.traders.len() && y.len() == model.buyers.len();
    for (t, &v) in model.traders.iter().zip(x) {
        box_ok &= v >= -tol && v <= t.cap + tol;
        let g = t.price(v);
        match classify(v, t.cap) {
            BoundStatus::AtLower => ceil = ceil.min(g),
            BoundStatus::Interior => {
                floor = floor.max(g);
                ceil = ceil.min(g);
            }
            BoundStatus::AtUpper => floor = floor.max(g),
        }
    }
    for (b, &v) in model.buyers.iter().zip(y) {
        box_ok &= v >= -tol && v <= b.cap + tol;
        let h = b.price(v);
        match classify(v, b.cap) {
            BoundStatus::AtLower => floor = floor.max(h),
            BoundStatus::Interior => {
                floor = floor.max(h);
                ceil = ceil.min(h);
            }
            BoundStatus::AtUpper => ceil = ceil.min(h),
        }
    }
    let balance_residual = x.iter().sum::<f64>() - y.iter().sum::<f64>() - model.b;
    let feasible = box_ok && balance_residual.abs() <= tol;
    let worst_violation = if floor.is_finite() && ceil.is_finite() {
        (floor - ceil).max(0.0)
    } else {
        0.0
    };
    let clearing_price = match (floor.is_finite(), ceil.is_finite()) {
        (true, true) => 0.5 * (floor + ceil),
        (true, false) => floor,
        (false, true) => ceil,
        (false, false) => f64::NAN,
    };
    MarketReport {
        price_interval: (floor, ceil),
        clearing_price,
        worst_violation,
        balance_residual,
        feasible,
        equilibrium: feasible && worst_violation <= tol,
    }
}
