use crate::problem::ProblemInstance;
use crate::stages::Stage;

use super::PairStrategy;

/// A descent pair: decrease coordinate `i`, increase coordinate `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSelection {
    pub i: usize,
    pub j: usize,
    /// Largest step along `d` that keeps both coordinates in their box.
    pub gamma: f64,
    /// Directional derivative `<f'(x), d> = h_j - h_i`.
    pub mu: f64,
}

/// Eligibility rule for pairs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Thresholds {
    pub delta: f64,
    pub epsilon: f64,
    /// Exact-bound mode: `i` eligible if `x_i > lo_i`, pair if `h_i > h_j`.
    pub strict: bool,
}

impl Thresholds {
    pub fn for_stage(stage: &Stage) -> Self {
        Self {
            delta: stage.delta,
            epsilon: stage.epsilon,
            strict: false,
        }
    }

    pub fn exact() -> Self {
        Self {
            delta: 0.0,
            epsilon: 0.0,
            strict: true,
        }
    }

    fn can_decrease(&self, p: &ProblemInstance, x: &[f64], s: usize) -> bool {
        if self.strict {
            x[s] > p.lower()[s]
        } else {
            x[s] >= p.lower()[s] + self.epsilon / p.a()[s]
        }
    }

    fn can_increase(&self, p: &ProblemInstance, x: &[f64], s: usize) -> bool {
        if self.strict {
            x[s] < p.upper()[s]
        } else {
            x[s] <= p.upper()[s] - self.epsilon / p.a()[s]
        }
    }

    fn violated(&self, gap: f64) -> bool {
        if self.strict {
            gap > 0.0
        } else {
            gap >= self.delta
        }
    }
}

fn make_pair(p: &ProblemInstance, x: &[f64], i: usize, j: usize, hi: f64, hj: f64) -> PairSelection {
    let a = p.a();
    let gamma = (a[i] * (x[i] - p.lower()[i])).min(a[j] * (p.upper()[j] - x[j]));
    PairSelection {
        i,
        j,
        gamma,
        mu: hj - hi,
    }
}

/// Stateful pair picker; the sweep strategy resumes where it stopped.
#[derive(Debug, Clone)]
pub struct PairSelector {
    strategy: PairStrategy,
    cursor: usize,
}

impl PairSelector {
    pub fn new(strategy: PairStrategy) -> Self {
        Self { strategy, cursor: 0 }
    }

    pub fn strategy(&self) -> PairStrategy {
        self.strategy
    }

    /// Returns `None` when no eligible pair satisfies the threshold, which
    /// is the restart signal.
    pub fn select(&mut self, x: &[f64], stage: &Stage) -> Option<PairSelection> {
        self.select_with(x, &stage.problem, Thresholds::for_stage(stage))
    }

    pub(crate) fn select_with(
        &mut self,
        x: &[f64],
        p: &ProblemInstance,
        t: Thresholds,
    ) -> Option<PairSelection> {
        match self.strategy {
            PairStrategy::MaxViolation => max_violation(x, p, t),
            PairStrategy::FirstFoundSweep => {
                let (pair, next) = sweep(x, p, t, self.cursor);
                self.cursor = next;
                pair
            }
        }
    }
}

/// Stateless selection (the sweep starts at coordinate 0).
pub fn select_pair(x: &[f64], stage: &Stage, strategy: PairStrategy) -> Option<PairSelection> {
    PairSelector::new(strategy).select(x, stage)
}

fn max_violation(x: &[f64], p: &ProblemInstance, t: Thresholds) -> Option<PairSelection> {
    let g = p.objective().gradient(x);
    let a = p.a();
    let mut best_i: Option<(usize, f64)> = None;
    let mut best_j: Option<(usize, f64)> = None;
    for s in 0..p.n() {
        let h = g[s] / a[s];
        if t.can_decrease(p, x, s) && best_i.is_none_or(|(_, v)| h > v) {
            best_i = Some((s, h));
        }
        if t.can_increase(p, x, s) && best_j.is_none_or(|(_, v)| h < v) {
            best_j = Some((s, h));
        }
    }
    let ((i, hi), (j, hj)) = (best_i?, best_j?);
    if i != j && t.violated(hi - hj) {
        Some(make_pair(p, x, i, j, hi, hj))
    } else {
        None
    }
}

/// One cyclic pass starting at `start`; returns the pair and the next cursor.
fn sweep(
    x: &[f64],
    p: &ProblemInstance,
    t: Thresholds,
    start: usize,
) -> (Option<PairSelection>, usize) {
    let n = p.n();
    let f = p.objective();
    let a = p.a();
    let mut best_i: Option<(usize, f64)> = None;
    let mut best_j: Option<(usize, f64)> = None;
    for step in 0..n {
        let s = (start + step) % n;
        let dec = t.can_decrease(p, x, s);
        let inc = t.can_increase(p, x, s);
        if !dec && !inc {
            continue;
        }
        let h = f.partial(s, x) / a[s];
        if dec && best_i.is_none_or(|(_, v)| h > v) {
            best_i = Some((s, h));
        }
        if inc && best_j.is_none_or(|(_, v)| h < v) {
            best_j = Some((s, h));
        }
        if let (Some((i, hi)), Some((j, hj))) = (best_i, best_j) {
            if i != j && t.violated(hi - hj) {
                return (Some(make_pair(p, x, i, j, hi, hj)), (s + 1) % n);
            }
        }
    }
    (None, start)
}
