//! The two discrimination measurements for a marker that may have been
//! rotated by theta.

use nested_mzi::discrimination::{build_discrimination_povm, PovmMode};

fn main() -> nested_mzi::Result<()> {
    for mode in [PovmMode::BasisCheck, PovmMode::OptimalIdp] {
        println!("{mode:?}");
        for epsilon in [0.5, 0.1, 0.01] {
            let povm = build_discrimination_povm(f64::asin(epsilon), mode)?;
            povm.validate()?;
            let (false_present, false_absent) = povm.cross_errors();
            println!(
                "  epsilon {epsilon:<4}  P(inconclusive) = {:.6}  completeness {:.1e}  errors ({:.1e}, {:.1e})",
                povm.average_inconclusive(),
                povm.completeness_error(),
                false_present,
                false_absent
            );
        }
    }
    Ok(())
}
