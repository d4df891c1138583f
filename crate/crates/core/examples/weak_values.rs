//! Weak values of the path projectors, post-selected at D.

use nested_mzi::analysis::weak_value_report;
use nested_mzi::qcore::ModeLabel;
use nested_mzi::NestedMziConfig;

fn main() -> nested_mzi::Result<()> {
    let report = weak_value_report(&NestedMziConfig::default(), ModeLabel::D)?;
    for slice in &report.slices {
        let values: Vec<String> = slice
            .values
            .iter()
            .map(|(seg, w)| format!("{seg}: {:+.3}{:+.3}i", w.re, w.im))
            .collect();
        println!(
            "{:>19}  {}   (sum {:.3})",
            slice.stage.to_string(),
            values.join("  "),
            slice.sum.re
        );
    }
    Ok(())
}
