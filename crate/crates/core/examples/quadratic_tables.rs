//! Runs the benchmark and prints the tables next to the reference values.
//!
//! ```text
//! cargo run --release --example quadratic_tables -- 1 2 3
//! ```

use bicoord::bench::{run_benchmark, BenchmarkSpec, Series};

fn main() -> bicoord::Result<()> {
    let series: Vec<Series> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok().and_then(Series::from_number))
        .collect();
    let spec = BenchmarkSpec {
        series: if series.is_empty() { vec![Series::Quadratic] } else { series },
        ..BenchmarkSpec::default()
    };
    let report = run_benchmark(&spec)?;
    print!("{}", report.to_markdown());
    Ok(())
}
