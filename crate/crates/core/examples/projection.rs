//! Exact geometry of `{x : <a, x> = beta, lower <= x <= upper}`.

use std::sync::Arc;

use bicoord::{
    build_problem, check_feasibility, minimize_linear, project, BoxBounds, Linear, LinearEquality, BALANCE_TOL,
};

fn main() -> bicoord::Result<()> {
    let p = build_problem(
        BoxBounds::new(vec![0.0, 0.0, 0.0], vec![1.0, 2.0, 1.0])?,
        LinearEquality::new(vec![1.0, 2.0, 1.0], 2.0)?,
        Arc::new(Linear { c: vec![0.0; 3] }),
    )?;

    for z in [[2.0, 0.0, 0.0], [0.0, 5.0, -1.0], [0.3, 0.4, 0.9]] {
        let x = project(&z, &p)?;
        let r = check_feasibility(&x, &p, BALANCE_TOL);
        println!("project({z:?}) = {x:.6?}  residual {:e}", r.balance_residual);
    }

    // cheapest per unit of a first: c / a = (3, 0.5, 1)
    let (x, value) = minimize_linear(&[3.0, 1.0, 1.0], &p)?;
    println!("argmin <c, x> = {x:?}, value {value}");
    Ok(())
}
