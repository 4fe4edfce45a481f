//! Sequences of approximate problems.
//!
//! Stage `l` carries the approximation `(D_l, f_l)` together with the pair
//! tolerances `delta_l` (price gap) and `eps_l` (bound clearance). Solvers
//! pull stages on demand, so a provider can produce data that changes from
//! stage to stage.

use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::problem::ProblemInstance;

#[derive(Debug, Clone)]
pub struct Stage {
    pub index: usize,
    pub problem: ProblemInstance,
    pub delta: f64,
    pub epsilon: f64,
}

impl Stage {
    pub fn new(index: usize, problem: ProblemInstance, delta: f64, epsilon: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(invalid("delta", format!("must be positive, got {delta}")));
        }
        if !(epsilon > 0.0) {
            return Err(invalid("epsilon", format!("must be positive, got {epsilon}")));
        }
        problem.require_normalized()?;
        Ok(Self {
            index,
            problem,
            delta,
            epsilon,
        })
    }

    /// Smoothing parameter of this stage's objective, if any.
    pub fn tau(&self) -> Option<f64> {
        self.problem.objective().smoothing()
    }
}

/// Lower limits for the stage tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Floors {
    pub delta: f64,
    pub epsilon: f64,
    pub tau: f64,
}

impl Default for Floors {
    fn default() -> Self {
        Self {
            delta: 1e-6,
            epsilon: 1e-6,
            tau: 1e-6,
        }
    }
}

pub trait StageProvider: Send + Sync {
    fn stage(&self, l: usize) -> Result<Stage>;

    fn floors(&self) -> Floors;

    /// True when every stage after `l` is identical to stage `l`.
    fn is_final(&self, _l: usize) -> bool {
        false
    }
}

/// Fixed problem data with geometrically shrinking tolerances.
///
/// `delta_l = max(delta_min, nu^l delta0)`, likewise for `eps_l`, and when
/// the objective is a smoothed surrogate with parameter `tau0`,
/// `tau_l = max(tau_min, nu^l tau0)`.
#[derive(Debug, Clone)]
pub struct GeometricSchedule {
    base: ProblemInstance,
    delta0: f64,
    eps0: f64,
    nu: f64,
    floors: Floors,
}

pub fn make_geometric_schedule(
    base: ProblemInstance,
    delta0: f64,
    eps0: f64,
    nu: f64,
    floors: Floors,
) -> Result<GeometricSchedule> {
    GeometricSchedule::new(base, delta0, eps0, nu, floors)
}

impl GeometricSchedule {
    pub fn new(
        base: ProblemInstance,
        delta0: f64,
        eps0: f64,
        nu: f64,
        floors: Floors,
    ) -> Result<Self> {
        if !(nu > 0.0 && nu < 1.0) {
            return Err(invalid("nu", format!("must lie in (0, 1), got {nu}")));
        }
        if !(delta0 > 0.0) || !(eps0 > 0.0) {
            return Err(invalid("delta0/eps0", "must be positive"));
        }
        if !(floors.delta > 0.0 && floors.epsilon > 0.0 && floors.tau > 0.0) {
            return Err(invalid("floors", "must be positive"));
        }
        base.require_normalized()?;
        Ok(Self {
            base,
            delta0,
            eps0,
            nu,
            floors,
        })
    }

    /// Defaults: `delta0 = eps0 = 1`, `nu = 0.5`, floors `1e-6`.
    pub fn with_defaults(base: ProblemInstance) -> Result<Self> {
        Self::new(base, 1.0, 1.0, 0.5, Floors::default())
    }

    pub fn base(&self) -> &ProblemInstance {
        &self.base
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    fn shrink(&self, start: f64, floor: f64, l: usize) -> f64 {
        // iterate instead of powi so that clamped values are reached exactly
        let mut v = start;
        for _ in 0..l {
            if v <= floor {
                break;
            }
            v *= self.nu;
        }
        v.max(floor)
    }

    pub fn delta(&self, l: usize) -> f64 {
        self.shrink(self.delta0, self.floors.delta, l)
    }

    pub fn epsilon(&self, l: usize) -> f64 {
        self.shrink(self.eps0, self.floors.epsilon, l)
    }

    /// Smoothing parameter at stage `l`, if the base objective has one.
    pub fn tau(&self, l: usize) -> Option<f64> {
        let tau0 = self.base.objective().smoothing()?;
        Some(self.shrink(tau0, self.floors.tau, l))
    }
}

impl StageProvider for GeometricSchedule {
    fn stage(&self, l: usize) -> Result<Stage> {
        let problem = match self.tau(l) {
            Some(tau) => {
                let f = self
                    .base
                    .objective()
                    .with_smoothing(tau)
                    .expect("smoothing objective must support rescheduling");
                self.base.with_objective(f)?
            }
            None => self.base.clone(),
        };
        Stage::new(l, problem, self.delta(l), self.epsilon(l))
    }

    fn floors(&self) -> Floors {
        self.floors
    }

    fn is_final(&self, l: usize) -> bool {
        self.delta(l) <= self.floors.delta
            && self.epsilon(l) <= self.floors.epsilon
            && self.tau(l).is_none_or(|t| t <= self.floors.tau)
    }
}

/// Stages built by a user closure returning the approximate problem for
/// index `l`; tolerances follow the same geometric rule as
/// [`GeometricSchedule`].
pub struct FnStages<F> {
    build: F,
    delta0: f64,
    eps0: f64,
    nu: f64,
    floors: Floors,
}

impl<F> FnStages<F>
where
    F: Fn(usize) -> Result<ProblemInstance> + Send + Sync,
{
    pub fn new(build: F, delta0: f64, eps0: f64, nu: f64, floors: Floors) -> Result<Self> {
        if !(nu > 0.0 && nu < 1.0) {
            return Err(invalid("nu", format!("must lie in (0, 1), got {nu}")));
        }
        if !(delta0 > 0.0) || !(eps0 > 0.0) {
            return Err(invalid("delta0/eps0", "must be positive"));
        }
        Ok(Self {
            build,
            delta0,
            eps0,
            nu,
            floors,
        })
    }
}

impl<F> StageProvider for FnStages<F>
where
    F: Fn(usize) -> Result<ProblemInstance> + Send + Sync,
{
    fn stage(&self, l: usize) -> Result<Stage> {
        let k = l.min(i32::MAX as usize) as i32;
        let delta = (self.delta0 * self.nu.powi(k)).max(self.floors.delta);
        let epsilon = (self.eps0 * self.nu.powi(k)).max(self.floors.epsilon);
        Stage::new(l, (self.build)(l)?, delta, epsilon)
    }

    fn floors(&self) -> Floors {
        self.floors
    }
}

/// A single fixed stage repeated forever.
#[derive(Debug, Clone)]
pub struct ConstantStage {
    problem: ProblemInstance,
    delta: f64,
    epsilon: f64,
}

impl ConstantStage {
    pub fn new(problem: ProblemInstance, delta: f64, epsilon: f64) -> Result<Self> {
        Stage::new(0, problem.clone(), delta, epsilon)?;
        Ok(Self {
            problem,
            delta,
            epsilon,
        })
    }
}

impl StageProvider for ConstantStage {
    fn stage(&self, l: usize) -> Result<Stage> {
        Stage::new(l, self.problem.clone(), self.delta, self.epsilon)
    }

    fn floors(&self) -> Floors {
        Floors {
            delta: self.delta,
            epsilon: self.epsilon,
            tau: self.problem.objective().smoothing().unwrap_or(f64::MIN_POSITIVE),
        }
    }

    fn is_final(&self, _l: usize) -> bool {
        true
    }
}

impl<T: StageProvider + ?Sized> StageProvider for Arc<T> {
    fn stage(&self, l: usize) -> Result<Stage> {
        (**self).stage(l)
    }

    fn floors(&self) -> Floors {
        (**self).floors()
    }

    fn is_final(&self, l: usize) -> bool {
        (**self).is_final(l)
    }
}
