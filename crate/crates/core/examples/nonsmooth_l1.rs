//! Non-smooth cost handled by a shrinking smoothing parameter.
//!
//! Each stage replaces `|x_i|` by `sqrt(x_i^2 + tau_l^2)` with
//! `tau_l = max(0.1, tau_0 / 2^l)`; the run stops once the gap of the
//! current surrogate is below 0.1 and `tau` has reached its floor.

use bicoord::bench::{gen_nonsmooth_l1, SERIES3_TAU0};
use bicoord::{bcv_solve, Floors, GeometricSchedule, SolverConfig, StageProvider};

fn main() -> bicoord::Result<()> {
    let base = gen_nonsmooth_l1(20, 10.0, SERIES3_TAU0)?;
    let floors = Floors {
        tau: 0.1,
        ..Floors::default()
    };
    let schedule = GeometricSchedule::new(base, 1.0, 1.0, 0.5, floors)?;
    let r = bcv_solve(&schedule, &SolverConfig::default())?;

    println!("stage  tau      delta      steps");
    for l in 1..=r.final_stage {
        let steps = r.trace.iter().filter(|e| e.stage == l).count();
        let s = schedule.stage(l)?;
        println!("{l:>5}  {:<7}  {:<9}  {steps}", s.tau().unwrap(), s.delta);
    }
    println!(
        "converged {} after {} steps, gap {:.4}, tau {}",
        r.converged,
        r.inner_iterations_total,
        r.error_bound,
        r.final_tau.unwrap()
    );
    Ok(())
}
