//! Problem data that changes from stage to stage.
//!
//! The upper bounds and the right-hand side drift toward their limits,
//! `upper_l = 1 + 2^-l` and `beta_l = 1.5 + 2^-l`. Every stage starts from
//! the projection of the previous end point onto the new set.

use std::sync::Arc;

use bicoord::{
    bcv_solve, build_problem, check_stationarity, BoxBounds, Floors, FnStages, LinearEquality, Objective,
    Quadratic, SolverConfig, StageProvider,
};

fn main() -> bicoord::Result<()> {
    let f: Arc<dyn Objective> = Arc::new(Quadratic::new(
        vec![vec![2.0, 0.5, 0.0], vec![0.5, 1.0, 0.0], vec![0.0, 0.0, 4.0]],
        Some(vec![-1.0, 0.0, -3.0]),
    )?);
    let stages = FnStages::new(
        move |l| {
            let drift = 0.5f64.powi(l as i32);
            build_problem(
                BoxBounds::new(vec![0.0; 3], vec![1.0 + drift; 3])?,
                LinearEquality::new(vec![1.0; 3], 1.5 + drift)?,
                f.clone(),
            )
        },
        1.0,
        1.0,
        0.5,
        Floors::default(),
    )?;
    let cfg = SolverConfig {
        target_accuracy: 1e-6,
        max_stages: 60,
        ..SolverConfig::default()
    };
    let r = bcv_solve(&stages, &cfg)?;
    let last = stages.stage(r.final_stage)?;
    println!(
        "stage {}: x = {:.5?}, beta_l = {:.6}, gap {:.2e}",
        r.final_stage,
        r.point,
        last.problem.beta(),
        r.error_bound
    );
    let rep = check_stationarity(&last.problem, &r.point, 1e-3)?;
    println!("multiplier {:.4}, stationary: {}", rep.multiplier, rep.stationary);
    Ok(())
}
