//! Scan a phase on each path and watch what happens at D.

use nested_mzi::analysis::{phase_scan, scan_spread};
use nested_mzi::qcore::ModeLabel;
use nested_mzi::NestedMziConfig;

fn main() -> nested_mzi::Result<()> {
    let config = NestedMziConfig::default();
    for path in ModeLabel::PATHS {
        let scan = phase_scan(&config, path, 100)?;
        println!("phase on {path}: P(D) spread = {:.3e}", scan_spread(&scan));
    }

    // Only A's phase matters: the A and B wave packets stop cancelling.
    println!("\n  phi      P(D)     (5 - 4 cos phi)/9");
    for point in phase_scan(&config, ModeLabel::A, 8)? {
        println!(
            "{:6.3}  {:.6}  {:.6}",
            point.phi,
            point.p_d,
            (5.0 - 4.0 * point.phi.cos()) / 9.0
        );
    }
    Ok(())
}
