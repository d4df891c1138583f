//! Block every path but one.

use nested_mzi::analysis::solo_path_probability;
use nested_mzi::interferometer::port_probabilities;
use nested_mzi::qcore::{ModeLabel, Port};
use nested_mzi::NestedMziConfig;

fn main() -> nested_mzi::Result<()> {
    let open = port_probabilities(&NestedMziConfig::default())?[&Port::D];
    println!("all paths open: P(D) = {open:.12}");
    for path in ModeLabel::PATHS {
        println!("only {path} open:  P(D) = {:.12}", solo_path_probability(path)?);
    }
    Ok(())
}
