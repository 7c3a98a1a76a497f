//! Elementary two-sided bounds for K(x), x the modulus.

use cbs_means::elliptic::{bounds_csv, bounds_grid};

fn main() -> cbs_means::Result<()> {
    let rows = bounds_grid(0.1, 0.9, 0.2)?;
    println!("{:>5} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}", "x", "L0", "L1", "L2", "K", "G2", "G1", "G0");
    for r in &rows {
        print!("{:>5.2}", r.x);
        for v in r.chain() {
            print!(" {v:>9.6}");
        }
        println!();
    }
    println!("\n{}", bounds_csv(&rows[..1]));
    Ok(())
}
