//! JSON problem files and point vectors.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::applications::{PortfolioData, PortfolioObjective, SvmDualObjective};
use crate::error::{check_len, Error, Result};
use crate::objective::{LogBarrier, Objective, Quadratic, SeparableQuadratic, SmoothedL1, Sum};
use crate::problem::{build_problem, BoxBounds, LinearEquality, ProblemInstance};

/// Serialized form of a problem instance.
///
/// ```json
/// {"n": 2, "a": [1, 1], "beta": 1, "lower": [0, 0], "upper": [1, 1],
///  "objective": {"kind": "quadratic", "params": {"matrix": [[1, 0], [0, 1]]}}}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub n: usize,
    pub a: Vec<f64>,
    pub beta: f64,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub objective: ObjectiveSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum ObjectiveSpec {
    Quadratic {
        matrix: Vec<Vec<f64>>,
        #[serde(default)]
        linear: Option<Vec<f64>>,
    },
    QuadraticLog {
        matrix: Vec<Vec<f64>>,
        #[serde(default)]
        linear: Option<Vec<f64>>,
        c: Vec<f64>,
        xi: f64,
    },
    QuadraticLogL1 {
        matrix: Vec<Vec<f64>>,
        #[serde(default)]
        linear: Option<Vec<f64>>,
        c: Vec<f64>,
        xi: f64,
        tau: f64,
    },
    SvmDual {
        /// Signed observations `gamma_i b^i`, one row per variable.
        rows: Vec<Vec<f64>>,
        tau: f64,
        p: u8,
        #[serde(default = "default_smooth_eps")]
        smooth_eps: f64,
    },
    Portfolio {
        covariance: Vec<Vec<f64>>,
        means: Vec<f64>,
        target: f64,
        tau: f64,
        p: u8,
        #[serde(default = "default_smooth_eps")]
        smooth_eps: f64,
    },
    Market {
        linear: Vec<f64>,
        curvature: Vec<f64>,
    },
}

fn default_smooth_eps() -> f64 {
    1e-4
}

impl ObjectiveSpec {
    pub fn build(&self) -> Result<Arc<dyn Objective>> {
        Ok(match self {
            Self::Quadratic { matrix, linear } => Arc::new(Quadratic::new(matrix.clone(), linear.clone())?),
            Self::QuadraticLog { matrix, linear, c, xi } => {
                let q = Quadratic::new(matrix.clone(), linear.clone())?;
                check_len(q.dim(), c.len())?;
                Arc::new(Sum::new(vec![
                    Arc::new(q),
                    Arc::new(LogBarrier { c: c.clone(), xi: *xi }),
                ])?)
            }
            Self::QuadraticLogL1 { matrix, linear, c, xi, tau } => {
                if !(*tau > 0.0) {
                    return Err(crate::error::invalid("tau", "must be positive"));
                }
                let q = Quadratic::new(matrix.clone(), linear.clone())?;
                let n = q.dim();
                check_len(n, c.len())?;
                Arc::new(Sum::new(vec![
                    Arc::new(q),
                    Arc::new(LogBarrier { c: c.clone(), xi: *xi }),
                    Arc::new(SmoothedL1 { n, tau: *tau }),
                ])?)
            }
            Self::SvmDual { rows, tau, p, smooth_eps } => {
                Arc::new(SvmDualObjective::new(rows.clone(), *tau, *p, *smooth_eps)?)
            }
            Self::Portfolio { covariance, means, target, tau, p, smooth_eps } => {
                Arc::new(PortfolioObjective::new(PortfolioData {
                    covariance: covariance.clone(),
                    means: means.clone(),
                    target: *target,
                    tau: *tau,
                    p: *p,
                    smooth_eps: *smooth_eps,
                })?)
            }
            Self::Market { linear, curvature } => {
                check_len(linear.len(), curvature.len())?;
                Arc::new(SeparableQuadratic {
                    linear: linear.clone(),
                    curvature: curvature.clone(),
                })
            }
        })
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidData(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    /// Builds the instance as written; coefficients may have either sign.
    pub fn build(&self) -> Result<ProblemInstance> {
        check_len(self.n, self.a.len())?;
        let objective = self.objective.build()?;
        check_len(self.n, objective.dim())?;
        build_problem(
            BoxBounds::new(self.lower.clone(), self.upper.clone())?,
            LinearEquality::new(self.a.clone(), self.beta)?,
            objective,
        )
    }
}

/// Parses a comma- or whitespace-separated list of numbers.
pub fn parse_point(text: &str) -> Result<Vec<f64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|e| Error::InvalidData(format!("`{s}`: {e}")))
        })
        .collect()
}

pub fn format_point(x: &[f64]) -> String {
    x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}
