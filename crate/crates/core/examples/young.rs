//! Which of the two Young bounds is sharper, and where the answer flips.

use cbs_means::function::FunctionSpec;
use cbs_means::young::{critical_y, rgh_refined_chain, young_integral_gap, young_pair};

fn main() -> cbs_means::Result<()> {
    for (x, y, p) in [(5.0, 130.0, 4.0), (0.2, 0.5, 4.0), (0.5, 1.3, 4.0), (0.5, 1.4, 4.0)] {
        let c = young_pair(x, y, p)?;
        println!(
            "x = {x:<4} y = {y:<5} p = {p}: standard {:.5}, swapped {:.5}, winner {:?} ({:?})",
            c.rhs_standard, c.rhs_swapped, c.winner, c.case_id
        );
    }
    println!("crossover at x = 0.5, p = 4: y = {:.10}", critical_y(0.5, 4.0, 1e-13)?);

    let f: FunctionSpec = "poly:0,1,1".parse()?;
    for b in [0.5, 3.0, 6.0] {
        println!("integral Young gap for t + t^2 on [0, 1] with b = {b}: {:.8}", young_integral_gap(&f, 1.0, b)?);
    }

    let r = rgh_refined_chain(&[1.0, 2.0, 3.0], &[3.0, 1.0, 0.5], 3.0)?;
    println!("refined Holder chain: {:.6} <= {:.6} <= {}", r.left, r.middle, r.right);
    Ok(())
}
