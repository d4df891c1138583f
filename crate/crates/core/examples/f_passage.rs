//! Every photon found at F has flipped exactly one of the A/B markers.

use nested_mzi::analysis::f_passage_check;

fn main() -> nested_mzi::Result<()> {
    for epsilon in [0.3, 0.1, 0.01] {
        let r = f_passage_check(f64::asin(epsilon))?;
        println!(
            "epsilon {epsilon:<5} P(F) = {:.3e} (s^2/3 = {:.3e})  P(no mark | F) = {:.1e}  P(one mark | F) = {:.12}",
            r.p_f,
            epsilon * epsilon / 3.0,
            r.p_both_ground_given_f.unwrap_or(f64::NAN),
            r.p_exactly_one_excited_given_f.unwrap_or(f64::NAN),
        );
    }
    // Without markers F stays dark, so there is nothing to condition on.
    let dark = f_passage_check(0.0)?;
    println!("theta = 0: P(F) = {:.1e}, conditional = {:?}", dark.p_f, dark.p_both_ground_given_f);
    Ok(())
}
