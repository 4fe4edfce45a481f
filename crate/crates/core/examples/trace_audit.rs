//! Replays a solve step by step and exports its trace.

use bicoord::bench::gen_quadratic;
use bicoord::{audit_trace, bcv_solve, write_trace_csv, GeometricSchedule, SolverConfig};

fn main() -> bicoord::Result<()> {
    let schedule = GeometricSchedule::with_defaults(gen_quadratic(10, 5.0)?)?;
    let cfg = SolverConfig::default();
    let r = bcv_solve(&schedule, &cfg)?;

    let report = audit_trace(&r.trace, &r.start, &cfg, &schedule)?;
    println!("{} steps checked, passed: {}", report.events_checked, report.passed());

    // a tampered record is caught at the edited step
    let mut forged = r.trace.clone();
    forged[3].f_after += 1.0;
    let bad = audit_trace(&forged, &r.start, &cfg, &schedule)?;
    println!("tampered trace: {:?}", bad.failure);

    write_trace_csv(&r.trace[..5], std::io::stdout()).expect("stdout");
    Ok(())
}
