//! Mean-variance allocation with a penalty for missing the return target.

use bicoord::applications::{build_portfolio, PortfolioData};
use bicoord::{bcv_solve, GeometricSchedule, SolverConfig};

fn main() -> bicoord::Result<()> {
    let means = vec![0.12, 0.08, 0.05, 0.03];
    let covariance = vec![
        vec![0.10, 0.02, 0.01, 0.00],
        vec![0.02, 0.05, 0.01, 0.00],
        vec![0.01, 0.01, 0.02, 0.00],
        vec![0.00, 0.00, 0.00, 0.01],
    ];
    let cfg = SolverConfig {
        target_accuracy: 1e-6,
        max_inner_iterations: 100_000,
        max_stages: 10_000,
        record_trace: false,
        ..SolverConfig::default()
    };
    for target in [0.04, 0.07, 0.10] {
        let data = PortfolioData {
            covariance: covariance.clone(),
            means: means.clone(),
            target,
            tau: 1e3,
            p: 2,
            smooth_eps: 1e-4,
        };
        let r = bcv_solve(&GeometricSchedule::with_defaults(build_portfolio(&data)?)?, &cfg)?;
        let ret: f64 = r.point.iter().zip(&means).map(|(x, m)| x * m).sum();
        println!("target {target:.2}: weights {:.3?}, expected return {ret:.4}", r.point);
    }
    Ok(())
}
