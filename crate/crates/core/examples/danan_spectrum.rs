//! Vibrating-mirror experiment: each checkpoint mirror wobbles at its own
//! frequency and the quad-cell signal at D shows which ones the photons
//! "saw".

use nested_mzi::danan::{power_spectrum, simulate_quadcell_signal, VibrationConfig};
use nested_mzi::NestedMziConfig;

fn show(title: &str, config: &NestedMziConfig, vib: &VibrationConfig) -> nested_mzi::Result<()> {
    let signal = simulate_quadcell_signal(config, vib)?;
    let spectrum = power_spectrum(&signal, vib)?;
    println!("{title} (noise floor {:.2e})", spectrum.noise_floor(vib));
    for (mirror, power) in &spectrum.peaks {
        println!("  {mirror} @ {:>4} Hz: {power:.3e}", vib.mirrors[mirror].frequency);
    }
    Ok(())
}

fn main() -> nested_mzi::Result<()> {
    let vib = VibrationConfig::default();
    show("tuned", &NestedMziConfig::default(), &vib)?;
    let detuned = NestedMziConfig {
        t3: 0.45,
        ..Default::default()
    };
    show("BS3 detuned to T = 0.45", &detuned, &vib)?;
    Ok(())
}
