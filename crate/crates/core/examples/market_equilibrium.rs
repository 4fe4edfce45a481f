//! Market clearing with affine offer and bid prices.

use bicoord::applications::{build_market, verify_market_equilibrium, MarketModel};
use bicoord::{bcv_solve, denormalize_point, GeometricSchedule, SolverConfig};

fn main() -> bicoord::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/market.json");
    let text = std::fs::read_to_string(path).expect("example data");
    let model: MarketModel = serde_json::from_str(&text).expect("valid scenario");

    let (p, map) = build_market(&model)?;
    let cfg = SolverConfig {
        target_accuracy: 1e-6,
        max_inner_iterations: 100_000,
        max_stages: 10_000,
        record_trace: false,
        ..SolverConfig::default()
    };
    let r = bcv_solve(&GeometricSchedule::with_defaults(p)?, &cfg)?;
    let (x, y) = model.split(&denormalize_point(&r.point, &map)?);
    let report = verify_market_equilibrium(&model, &x, &y, 1e-3);

    for (t, v) in model.traders.iter().zip(&x) {
        println!("trader offers {v:.4} at price {:.4}", t.price(*v));
    }
    for (b, v) in model.buyers.iter().zip(&y) {
        println!("buyer bids    {v:.4} at price {:.4}", b.price(*v));
    }
    println!(
        "clearing price {:.4}, admissible [{:.4}, {:.4}], equilibrium: {}",
        report.clearing_price, report.price_interval.0, report.price_interval.1, report.equilibrium
    );
    Ok(())
}
