//! Objective oracles.
//!
//! Solvers in this crate only touch the objective through [`Objective`]:
//! a value, single partial derivatives, and (optionally faster) full
//! gradients. Oracles must be re-entrant; none of the shipped ones keep
//! mutable state.

use std::fmt::Debug;
use std::sync::Arc;

use crate::smoothing::abs_sqrt;

/// A differentiable cost function on `R^n`.
pub trait Objective: Debug + Send + Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    /// `∂f/∂x_i` at `x`.
    fn partial(&self, i: usize, x: &[f64]) -> f64;

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim()).map(|i| self.partial(i, x)).collect()
    }

    /// Current smoothing parameter, if this is a smoothed surrogate.
    fn smoothing(&self) -> Option<f64> {
        None
    }

    /// The same surrogate with a different smoothing parameter.
    fn with_smoothing(&self, _tau: f64) -> Option<Arc<dyn Objective>> {
        None
    }
}

/// `0.5 <Px, x> + <q, x>` with a dense symmetric `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratic {
    n: usize,
    matrix: Vec<f64>,
    linear: Vec<f64>,
}

impl Quadratic {
    /// `rows` must be square and symmetric; `linear` defaults to zero.
    pub fn new(rows: Vec<Vec<f64>>, linear: Option<Vec<f64>>) -> crate::Result<Self> {
        let n = rows.len();
        let mut matrix = Vec::with_capacity(n * n);
        for row in &rows {
            crate::error::check_len(n, row.len())?;
            matrix.extend_from_slice(row);
        }
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (matrix[i * n + j], matrix[j * n + i]);
                if (a - b).abs() > 1e-12 * (1.0 + a.abs().max(b.abs())) {
                    return Err(crate::error::invalid(
                        "matrix",
                        format!("not symmetric at ({i}, {j})"),
                    ));
                }
            }
        }
        let linear = linear.unwrap_or_else(|| vec![0.0; n]);
        crate::error::check_len(n, linear.len())?;
        Ok(Self { n, matrix, linear })
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.matrix[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Objective for Quadratic {
    fn dim(&self) -> usize {
        self.n
    }

    fn value(&self, x: &[f64]) -> f64 {
        (0..self.n)
            .map(|i| x[i] * (0.5 * dot(self.row(i), x) + self.linear[i]))
            .sum()
    }

    fn partial(&self, i: usize, x: &[f64]) -> f64 {
        dot(self.row(i), x) + self.linear[i]
    }
}

/// `-ln(<c, x> + xi)`; `+inf` outside its domain.
#[derive(Debug, Clone, PartialEq)]
pub struct LogBarrier {
    pub c: Vec<f64>,
    pub xi: f64,
}

impl Objective for LogBarrier {
    fn dim(&self) -> usize {
        self.c.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let s = dot(&self.c, x) + self.xi;
        if s > 0.0 {
            -s.ln()
        } else {
            f64::INFINITY
        }
    }

    fn partial(&self, i: usize, x: &[f64]) -> f64 {
        -self.c[i] / (dot(&self.c, x) + self.xi)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let s = dot(&self.c, x) + self.xi;
        self.c.iter().map(|c| -c / s).collect()
    }
}

/// `Σ sqrt(x_i^2 + tau^2)`, the smoothed l1 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedL1 {
    pub n: usize,
    pub tau: f64,
}

impl Objective for SmoothedL1 {
    fn dim(&self) -> usize {
        self.n
    }

    fn value(&self, x: &[f64]) -> f64 {
        let eps = self.tau * self.tau;
        x.iter().map(|&t| abs_sqrt(t, eps).0).sum()
    }

    fn partial(&self, i: usize, x: &[f64]) -> f64 {
        abs_sqrt(x[i], self.tau * self.tau).1
    }

    fn smoothing(&self) -> Option<f64> {
        Some(self.tau)
    }

    fn with_smoothing(&self, tau: f64) -> Option<Arc<dyn Objective>> {
        Some(Arc::new(Self { n: self.n, tau }))
    }
}

/// `Σ (linear_i x_i + curvature_i x_i^2 / 2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableQuadratic {
    pub linear: Vec<f64>,
    pub curvature: Vec<f64>,
}

impl Objective for SeparableQuadratic {
    fn dim(&self) -> usize {
        self.linear.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(self.linear.iter().zip(&self.curvature))
            .map(|(&t, (l, q))| l * t + 0.5 * q * t * t)
            .sum()
    }

    fn partial(&self, i: usize, x: &[f64]) -> f64 {
        self.linear[i] + self.curvature[i] * x[i]
    }
}

/// `<c, x>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Linear {
    pub c: Vec<f64>,
}

impl Objective for Linear {
    fn dim(&self) -> usize {
        self.c.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        dot(&self.c, x)
    }

    fn partial(&self, i: usize, _x: &[f64]) -> f64 {
        self.c[i]
    }
}

/// Sum of objectives of equal dimension.
///
/// The smoothing parameter is the first smoothed term's; rescheduling it
/// rebuilds every smoothed term with the new value.
#[derive(Debug, Clone)]
pub struct Sum {
    terms: Vec<Arc<dyn Objective>>,
}

impl Sum {
    pub fn new(terms: Vec<Arc<dyn Objective>>) -> crate::Result<Self> {
        let n = terms.first().map(|t| t.dim()).unwrap_or(0);
        for t in &terms {
            crate::error::check_len(n, t.dim())?;
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[Arc<dyn Objective>] {
        &self.terms
    }
}

impl Objective for Sum {
    fn dim(&self) -> usize {
        self.terms.first().map(|t| t.dim()).unwrap_or(0)
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.value(x)).sum()
    }

    fn partial(&self, i: usize, x: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.partial(i, x)).sum()
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.dim()];
        for t in &self.terms {
            for (gi, ti) in g.iter_mut().zip(t.gradient(x)) {
                *gi += ti;
            }
        }
        g
    }

    fn smoothing(&self) -> Option<f64> {
        self.terms.iter().find_map(|t| t.smoothing())
    }

    fn with_smoothing(&self, tau: f64) -> Option<Arc<dyn Objective>> {
        self.smoothing()?;
        let terms = self
            .terms
            .iter()
            .map(|t| t.with_smoothing(tau).unwrap_or_else(|| t.clone()))
            .collect();
        Some(Arc::new(Self { terms }))
    }
}

/// `f(S y)` for a diagonal sign matrix `S`.
#[derive(Debug, Clone)]
pub struct SignFlipped {
    inner: Arc<dyn Objective>,
    signs: Vec<f64>,
}

impl SignFlipped {
    pub fn new(inner: Arc<dyn Objective>, signs: Vec<f64>) -> Self {
        Self { inner, signs }
    }

    fn map(&self, y: &[f64]) -> Vec<f64> {
        y.iter().zip(&self.signs).map(|(v, s)| v * s).collect()
    }
}

impl Objective for SignFlipped {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn value(&self, y: &[f64]) -> f64 {
        self.inner.value(&self.map(y))
    }

    fn partial(&self, i: usize, y: &[f64]) -> f64 {
        self.signs[i] * self.inner.partial(i, &self.map(y))
    }

    fn gradient(&self, y: &[f64]) -> Vec<f64> {
        let g = self.inner.gradient(&self.map(y));
        g.into_iter().zip(&self.signs).map(|(v, s)| v * s).collect()
    }

    fn smoothing(&self) -> Option<f64> {
        self.inner.smoothing()
    }

    fn with_smoothing(&self, tau: f64) -> Option<Arc<dyn Objective>> {
        let inner = self.inner.with_smoothing(tau)?;
        Some(Arc::new(Self {
            inner,
            signs: self.signs.clone(),
        }))
    }
}

/// Central finite-difference gradient, used as a test oracle.
pub fn finite_difference_gradient(f: &dyn Objective, x: &[f64], h: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    (0..x.len())
        .map(|i| {
            y[i] = x[i] + h;
            let up = f.value(&y);
            y[i] = x[i] - h;
            let down = f.value(&y);
            y[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}
