//! A perfect which-path marker on C alongside weak markers on A and B.

use nested_mzi::analysis::conclusive_branch_traces;

fn main() -> nested_mzi::Result<()> {
    let report = conclusive_branch_traces(f64::asin(0.1))?;
    println!("P(D) = {:.6}", report.p_d);
    println!("P(C marker flipped | D) = {:.6}", report.p_c_conclusive_given_d);
    if let Some(b) = report.conclusive {
        println!("C flipped  ({:.4}): p_A = {:.2e}, p_B = {:.2e}", b.probability, b.p_a, b.p_b);
    }
    if let Some(b) = report.inconclusive {
        println!("C ground   ({:.4}): p_A = {:.4}, p_B = {:.4}", b.probability, b.p_a, b.p_b);
    }
    Ok(())
}
