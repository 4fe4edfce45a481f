//! Negative constraint coefficients.

use std::sync::Arc;

use bicoord::{
    bcv_solve, build_problem, denormalize_point, normalize_signs, BoxBounds, GeometricSchedule, LinearEquality,
    Quadratic, SolverConfig,
};

fn main() -> bicoord::Result<()> {
    // x_1 - 2 x_2 = 4 with x_2 in [-3, -1]
    let raw = build_problem(
        BoxBounds::new(vec![0.0, -3.0], vec![1.0, -1.0])?,
        LinearEquality::new(vec![1.0, -2.0], 4.0)?,
        Arc::new(Quadratic::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]], None)?),
    )?;
    let (p, map) = normalize_signs(&raw)?;
    println!("normalized a = {:?}, box {:?} x {:?}", p.a(), p.lower(), p.upper());

    let cfg = SolverConfig {
        target_accuracy: 1e-8,
        ..SolverConfig::default()
    };
    let r = bcv_solve(&GeometricSchedule::with_defaults(p)?, &cfg)?;
    let x = denormalize_point(&r.point, &map)?;
    println!("x = {x:.6?}, <a, x> = {:.6}", x[0] - 2.0 * x[1]);
    Ok(())
}
