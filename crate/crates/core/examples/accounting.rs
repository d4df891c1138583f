//! Monte Carlo tally of marker verdicts among photons detected at D.
//!
//! `cargo run --release --example accounting -- 1000000 42`

use std::time::Instant;

use nested_mzi::discrimination::{expected_fractions, monte_carlo_accounting, PovmMode};
use nested_mzi::NestedMziConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let trials: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200_000);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(42);

    let theta = f64::asin(0.1);
    let config = NestedMziConfig::default().with_equal_markers(theta);
    let start = Instant::now();
    let tally = monte_carlo_accounting(&config, PovmMode::BasisCheck, trials, seed)?;
    println!(
        "{trials} photons, {} at D ({:.5}), {:.2?}",
        tally.detections_at_d,
        tally.detection_fraction(),
        start.elapsed()
    );

    let expected = expected_fractions(theta);
    println!("{:<20}{:<20}{:<20}{:>9}  {:>8}  {:>8}", "A", "B", "C", "count", "observed", "expected");
    for row in &tally.counts {
        let combo = [row.a, row.b, row.c];
        println!(
            "{:<20}{:<20}{:<20}{:>9}  {:>8.5}  {:>8.5}",
            row.a.name(),
            row.b.name(),
            row.c.name(),
            row.count,
            row.fraction,
            expected[&combo]
        );
    }
    println!("photons flagged on two paths: {}", tally.multi_conclusive());

    let idp = monte_carlo_accounting(&config, PovmMode::OptimalIdp, trials, seed)?;
    println!("optimal-idp: photons flagged on two paths: {}", idp.multi_conclusive());
    Ok(())
}
