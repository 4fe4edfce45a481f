//! Pair selection rules and linesearch variants, with oracle call counts.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use bicoord::bench::gen_convex_log;
use bicoord::{bcv_solve, GeometricSchedule, Linesearch, Objective, PairStrategy, SolverConfig};

/// Counts single partial derivative evaluations.
#[derive(Debug)]
struct Counted {
    inner: Arc<dyn Objective>,
    partials: AtomicUsize,
}

impl Objective for Counted {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn value(&self, x: &[f64]) -> f64 {
        self.inner.value(x)
    }
    fn partial(&self, i: usize, x: &[f64]) -> f64 {
        self.partials.fetch_add(1, Ordering::Relaxed);
        self.inner.partial(i, x)
    }
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        self.partials.fetch_add(self.dim(), Ordering::Relaxed);
        self.inner.gradient(x)
    }
}

fn main() -> bicoord::Result<()> {
    let base = gen_convex_log(50, 10.0)?;
    for strategy in [PairStrategy::MaxViolation, PairStrategy::FirstFoundSweep] {
        for linesearch in [Linesearch::Armijo, Linesearch::GradientDifference] {
            let counted = Arc::new(Counted {
                inner: base.objective().clone(),
                partials: AtomicUsize::new(0),
            });
            let p = base.with_objective(counted.clone())?;
            let cfg = SolverConfig {
                pair_strategy: strategy,
                linesearch,
                // stopping test only at restarts, so the counts reflect the method
                check_every_step: false,
                max_inner_iterations: 5_000,
                ..SolverConfig::default()
            };
            let r = bcv_solve(&GeometricSchedule::with_defaults(p)?, &cfg)?;
            println!(
                "{strategy:?}/{linesearch:?}: {} steps, gap {:.3}, {} partials",
                r.inner_iterations_total,
                r.error_bound,
                counted.partials.load(Ordering::Relaxed)
            );
        }
    }
    Ok(())
}
