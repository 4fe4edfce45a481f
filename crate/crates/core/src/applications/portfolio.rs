use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{check_len, invalid, Result};
use crate::objective::Objective;
use crate::problem::{build_problem, BoxBounds, LinearEquality, ProblemInstance};

use super::{check_power, penalty};

#[derive(Debug, Clone, PartialEq)]
pub struct PortfolioData {
    pub covariance: Vec<Vec<f64>>,
    pub means: Vec<f64>,
    /// Desired expected return `w`.
    pub target: f64,
    pub tau: f64,
    pub p: u8,
    /// Plus-function smoothing, used when `p = 1`.
    pub smooth_eps: f64,
}

impl PortfolioData {
    pub fn validate(&self) -> Result<()> {
        let n = self.means.len();
        check_len(n, self.covariance.len())?;
        for row in &self.covariance {
            check_len(n, row.len())?;
        }
        if !(self.tau > 0.0) {
            return Err(invalid("tau", "must be positive"));
        }
        check_power(self.p, self.smooth_eps)?;
        let c = DMatrix::from_fn(n, n, |i, j| self.covariance[i][j]);
        if (&c - c.transpose()).amax() > 1e-12 * (1.0 + c.amax()) {
            return Err(invalid("covariance", "not symmetric"));
        }
        if n > 0 {
            let min_eig = SymmetricEigen::new(c).eigenvalues.min();
            if min_eig < -1e-8 {
                return Err(invalid(
                    "covariance",
                    format!("not positive semidefinite (smallest eigenvalue {min_eig:e})"),
                ));
            }
        }
        Ok(())
    }
}

/// `Σ c_ij x_i x_j + (tau/p) (w - <m, x>)_+^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PortfolioObjective {
    data: PortfolioData,
}

impl PortfolioObjective {
    pub fn new(data: PortfolioData) -> Result<Self> {
        data.validate()?;
        Ok(Self { data })
    }

    pub fn data(&self) -> &PortfolioData {
        &self.data
    }

    fn shortfall(&self, x: &[f64]) -> (f64, f64) {
        let t = self.data.target - dot(&self.data.means, x);
        penalty(t, self.data.p, self.data.smooth_eps)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Objective for PortfolioObjective {
    fn dim(&self) -> usize {
        self.data.means.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let var: f64 = self
            .data
            .covariance
            .iter()
            .zip(x)
            .map(|(row, xi)| xi * dot(row, x))
            .sum();
        var + self.data.tau * self.shortfall(x).0
    }

    fn partial(&self, i: usize, x: &[f64]) -> f64 {
        let (_, slope) = self.shortfall(x);
        2.0 * dot(&self.data.covariance[i], x) - self.data.tau * slope * self.data.means[i]
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let (_, slope) = self.shortfall(x);
        self.data
            .covariance
            .iter()
            .zip(&self.data.means)
            .map(|(row, m)| 2.0 * dot(row, x) - self.data.tau * slope * m)
            .collect()
    }

    fn smoothing(&self) -> Option<f64> {
        (self.data.p == 1).then_some(self.data.smooth_eps)
    }

    fn with_smoothing(&self, eps: f64) -> Option<Arc<dyn Objective>> {
        (self.data.p == 1).then(|| {
            let mut data = self.data.clone();
            data.smooth_eps = eps;
            Arc::new(Self { data }) as Arc<dyn Objective>
        })
    }
}

/// Shares `x` on the simplex `Σ x_i = 1`, `0 <= x_i <= 1`.
pub fn build_portfolio(data: &PortfolioData) -> Result<ProblemInstance> {
    let n = data.means.len();
    let objective = PortfolioObjective::new(data.clone())?;
    build_problem(
        BoxBounds::new(vec![0.0; n], vec![1.0; n])?,
        LinearEquality::new(vec![1.0; n], 1.0)?,
        Arc::new(objective),
    )
}
