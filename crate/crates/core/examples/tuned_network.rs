//! Evolve the tuned nested interferometer and print every stage.

use nested_mzi::interferometer::{build_nested_mzi, is_tuned};
use nested_mzi::qcore::{ModeLabel, Port};
use nested_mzi::NestedMziConfig;

fn main() -> nested_mzi::Result<()> {
    let config = NestedMziConfig::default();
    let network = build_nested_mzi(&config)?;
    println!(
        "{} splitters, {} couplings, {} blocks; tuned = {}",
        network.splitter_count(),
        network.coupling_count(),
        network.block_count(),
        is_tuned(&config)?
    );

    let result = network.evolve()?;
    for snap in &result.snapshots {
        let occupied: Vec<String> = ModeLabel::ALL
            .iter()
            .filter(|&&m| snap.state.mode_probability(m) > 1e-15)
            .map(|&m| format!("{m}={:.4}", snap.state.mode_probability(m)))
            .collect();
        println!("{:>19}: {}", snap.stage.to_string(), occupied.join(" "));
    }
    for port in [Port::D, Port::O2, Port::O3, Port::Sink] {
        println!("P({port:?}) = {:.12}", result.port_probability(port));
    }
    Ok(())
}
