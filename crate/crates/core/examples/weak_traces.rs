//! Weak markers on A, B and C: the trace each one carries given a click at D.

use nested_mzi::analysis::weak_trace_report;
use nested_mzi::qcore::ModeLabel;
use nested_mzi::NestedMziConfig;

fn main() -> nested_mzi::Result<()> {
    for epsilon in [0.1, 0.05, 0.01] {
        let config = NestedMziConfig::default().with_equal_markers(f64::asin(epsilon));
        let report = weak_trace_report(&config, ModeLabel::D)?;
        println!("epsilon = {epsilon}, P(D) = {:.6}", report.port_probability);
        for (location, trace) in &report.markers {
            println!(
                "  {location}: P(excited) = {:.8}  fidelity to ground = {:.10}",
                trace.excitation_probability, trace.fidelity_to_ground
            );
        }
        let s2 = epsilon * epsilon;
        println!("  closed form s^2/(1+2s^2) = {:.8}", s2 / (1.0 + 2.0 * s2));
    }
    Ok(())
}
