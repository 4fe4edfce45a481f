//! Linear classifier from the penalized SVM dual.

use bicoord::applications::{build_svm_dual, svm_cap_active, svm_weights, SvmDataset};
use bicoord::{bcv_solve, denormalize_point, Floors, GeometricSchedule, SolverConfig};

fn main() -> bicoord::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/svm.csv");
    let data = SvmDataset::from_csv(std::fs::File::open(path).expect("example data"))?;

    let cap = 1e3;
    let (p, map) = build_svm_dual(&data, 10.0, 2, 1.0, cap)?;
    let cfg = SolverConfig {
        target_accuracy: 1e-4,
        max_inner_iterations: 50_000,
        max_stages: 10_000,
        record_trace: false,
        ..SolverConfig::default()
    };
    let r = bcv_solve(&GeometricSchedule::new(p, 1.0, 1.0, 0.5, Floors::default())?, &cfg)?;
    let y = denormalize_point(&r.point, &map)?;
    let w = svm_weights(&data, &y);

    let errors = data
        .points()
        .iter()
        .zip(data.labels())
        .filter(|(b, g)| *g * (w[0] * b[0] + w[1] * b[1]) <= 0.0)
        .count();
    println!("{} steps, gap {:.2e}, {:?}", r.inner_iterations_total, r.error_bound, r.termination);
    println!("w = ({:.4}, {:.4}), training errors: {errors}/{}", w[0], w[1], data.len());
    if svm_cap_active(&y, cap) {
        println!("warning: some dual weight sits at the cap");
    }
    Ok(())
}
