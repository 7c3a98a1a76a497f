//! Support sizes of a vector and of its discrete Fourier transform.

use cbs_means::cbs_discrete::{dft_uncertainty, DFT_ZERO_TOL};
use num_complex::Complex64;

fn main() -> cbs_means::Result<()> {
    let comb = |n: usize, step: usize| -> Vec<Complex64> {
        (0..n).map(|k| Complex64::new(if k % step == 0 { 1.0 } else { 0.0 }, 0.0)).collect()
    };
    for (name, v) in [("delta", comb(12, 12)), ("constant", comb(12, 1)), ("comb 3", comb(12, 3)), ("comb 4", comb(12, 4))] {
        let r = dft_uncertainty(&v, DFT_ZERO_TOL)?;
        println!("{name:<9} n = {}  A = {:>2}  B = {:>2}  A*B = {:>3}  equality {}", r.n, r.a_count, r.b_count, r.product, r.equality);
    }

    let mut worst = usize::MAX;
    for mask in 1u32..(1 << 10) {
        let v: Vec<Complex64> = (0..10).map(|k| Complex64::new(((mask >> k) & 1) as f64, 0.0)).collect();
        worst = worst.min(dft_uncertainty(&v, DFT_ZERO_TOL)?.product);
    }
    println!("smallest A*B over all 0/1 vectors of length 10: {worst}");
    Ok(())
}
