//! Mean-based refinements of the discrete Cauchy-Bunyakovsky inequality,
//! the CDE condition check and the reversed chain for time-like vectors.

use cbs_means::cbs_discrete::{cbs_chain, cde_check, log_grid_pairs, lorentz_chain};
use cbs_means::MeanSpec;

fn main() -> cbs_means::Result<()> {
    let x = [1.0, 2.0, 3.0, 5.0];
    let y = [4.0, 1.0, 2.0, 0.5];
    for s in ["min", "power:-2", "power:0", "power:2", "wgeom:0.75,0.25", "log", "max"] {
        let m: MeanSpec = s.parse()?;
        let r = cbs_chain(&x, &y, &m)?;
        println!("{s:<16} {:.6} <= {:.6} <= {:.6}  ordered {}", r.left, r.middle, r.right, r.ordered);
    }

    let grid = log_grid_pairs(1e-2, 1e2, 30);
    for s in ["power:2", "gini:2,1"] {
        let rep = cde_check(&s.parse()?, &grid)?;
        println!("CDE conditions for {s}: ok = {}, {} violations", rep.ok, rep.violations.len());
    }

    let m: MeanSpec = "power:1".parse()?;
    let r = lorentz_chain(3.0, &[1.0, 1.0], 4.0, &[1.0, 2.0], &m)?;
    println!("time-like: {:.6} >= {:.6} >= {:.6}", r.left, r.middle, r.right);
    Ok(())
}
