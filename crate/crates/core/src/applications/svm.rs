use std::io::Read;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::objective::Objective;
use crate::problem::{build_problem, normalize_signs, BoxBounds, LinearEquality, ProblemInstance, SignMap};

use super::{check_power, penalty};

pub const DEFAULT_SVM_CAP: f64 = 1e3;

/// Labelled observations for a linear two-class SVM.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmDataset {
    points: Vec<Vec<f64>>,
    labels: Vec<f64>,
}

impl SvmDataset {
    pub fn new(points: Vec<Vec<f64>>, labels: Vec<f64>) -> Result<Self> {
        crate::error::check_len(points.len(), labels.len())?;
        let m = points.first().map_or(0, Vec::len);
        if m == 0 {
            return Err(Error::InvalidData("no features".into()));
        }
        if let Some(r) = points.iter().position(|p| p.len() != m) {
            return Err(Error::InvalidData(format!("row {r} has a different feature count")));
        }
        if let Some(r) = labels.iter().position(|&g| g != 1.0 && g != -1.0) {
            return Err(Error::InvalidData(format!("label of row {r} is not +1/-1")));
        }
        if !(labels.contains(&1.0) && labels.contains(&-1.0)) {
            return Err(Error::InvalidData("both classes must be present".into()));
        }
        Ok(Self { points, labels })
    }

    /// One observation per row: label (`+1`/`-1`) then features. A header
    /// row is skipped if its first field does not parse as a number.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for (r, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::InvalidData(e.to_string()))?;
            let fields: Vec<&str> = rec.iter().filter(|s| !s.is_empty()).collect();
            if fields.is_empty() {
                continue;
            }
            let parsed: std::result::Result<Vec<f64>, _> = fields.iter().map(|s| s.parse::<f64>()).collect();
            match parsed {
                Ok(v) if v.len() >= 2 => {
                    labels.push(v[0]);
                    points.push(v[1..].to_vec());
                }
                Ok(_) => return Err(Error::InvalidData(format!("row {r} has no features"))),
                Err(_) if r == 0 => continue,
                Err(e) => return Err(Error::InvalidData(format!("row {r}: {e}"))),
            }
        }
        Self::new(points, labels)
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn features(&self) -> usize {
        self.points[0].len()
    }

    /// Rows `a_i = gamma_i b^i`.
    pub fn signed_rows(&self) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .zip(&self.labels)
            .map(|(b, g)| b.iter().map(|v| g * v).collect())
            .collect()
    }
}

/// Penalized dual of the 1-norm SVM:
/// `(tau/p) Σ_j [(s_j - 1)_+^p + (-s_j - 1)_+^p] - Σ_i y_i`, `s_j = Σ_i a_ij y_i`.
///
/// For `p = 1` the plus function is smoothed with parameter `eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmDualObjective {
    rows: Vec<Vec<f64>>,
    tau: f64,
    power: u8,
    eps: f64,
}

impl SvmDualObjective {
    pub fn new(rows: Vec<Vec<f64>>, tau: f64, power: u8, eps: f64) -> Result<Self> {
        if !(tau > 0.0) {
            return Err(invalid("tau", "must be positive"));
        }
        check_power(power, eps)?;
        let m = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().position(|row| row.len() != m) {
            return Err(Error::InvalidData(format!("row {r} has a different feature count")));
        }
        Ok(Self { rows, tau, power, eps })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn power(&self) -> u8 {
        self.power
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    fn sums(&self, y: &[f64]) -> Vec<f64> {
        let m = self.rows.first().map_or(0, Vec::len);
        let mut s = vec![0.0; m];
        for (row, &yi) in self.rows.iter().zip(y) {
            for (sj, a) in s.iter_mut().zip(row) {
                *sj += a * yi;
            }
        }
        s
    }

    /// Derivative of the penalty with respect to each `s_j`.
    fn penalty_slopes(&self, s: &[f64]) -> Vec<f64> {
        s.iter()
            .map(|&sj| {
                let (_, up) = penalty(sj - 1.0, self.power, self.eps);
                let (_, down) = penalty(-sj - 1.0, self.power, self.eps);
                self.tau * (up - down)
            })
            .collect()
    }
}

impl Objective for SvmDualObjective {
    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn value(&self, y: &[f64]) -> f64 {
        let pen: f64 = self
            .sums(y)
            .iter()
            .map(|&sj| {
                penalty(sj - 1.0, self.power, self.eps).0 + penalty(-sj - 1.0, self.power, self.eps).0
            })
            .sum();
        self.tau * pen - y.iter().sum::<f64>()
    }

    fn partial(&self, i: usize, y: &[f64]) -> f64 {
        let w = self.penalty_slopes(&self.sums(y));
        self.rows[i].iter().zip(&w).map(|(a, w)| a * w).sum::<f64>() - 1.0
    }

    fn gradient(&self, y: &[f64]) -> Vec<f64> {
        let w = self.penalty_slopes(&self.sums(y));
        self.rows
            .iter()
            .map(|row| row.iter().zip(&w).map(|(a, w)| a * w).sum::<f64>() - 1.0)
            .collect()
    }

    fn smoothing(&self) -> Option<f64> {
        (self.power == 1).then_some(self.eps)
    }

    fn with_smoothing(&self, eps: f64) -> Option<Arc<dyn Objective>> {
        (self.power == 1).then(|| Arc::new(Self { eps, ..self.clone() }) as Arc<dyn Objective>)
    }
}

/// Builds the sign-normalized penalized dual.
///
/// Variables are the dual weights `y_i in [0, cap]` with balance
/// `Σ gamma_i y_i = 0`; the returned map converts solver points back to `y`.
pub fn build_svm_dual(
    data: &SvmDataset,
    tau: f64,
    p: u8,
    smooth_eps: f64,
    upper_cap: f64,
) -> Result<(ProblemInstance, SignMap)> {
    if !(upper_cap > 0.0) || !upper_cap.is_finite() {
        return Err(invalid("upper_cap", "must be positive and finite"));
    }
    let objective = SvmDualObjective::new(data.signed_rows(), tau, p, smooth_eps)?;
    let n = data.len();
    let raw = build_problem(
        BoxBounds::new(vec![0.0; n], vec![upper_cap; n])?,
        LinearEquality::new(data.labels().to_vec(), 0.0)?,
        Arc::new(objective),
    )?;
    normalize_signs(&raw)
}

/// `w_j = Σ_i y_i gamma_i b^i_j`.
pub fn svm_weights(data: &SvmDataset, y: &[f64]) -> Vec<f64> {
    let mut w = vec![0.0; data.features()];
    for (row, &yi) in data.signed_rows().iter().zip(y) {
        for (wj, a) in w.iter_mut().zip(row) {
            *wj += yi * a;
        }
    }
    w
}

/// True if some dual weight is within `1e-6` of the cap.
pub fn svm_cap_active(y: &[f64], cap: f64) -> bool {
    y.iter().any(|&v| v >= cap - 1e-6)
}
