//! Arithmetic-geometric mean, a general iterated pair, and K through the AGM.

use std::f64::consts::FRAC_PI_2;

use cbs_means::elliptic::{elliptic_k, KMethod};
use cbs_means::iterated::{agm, iterate_means};

fn main() -> cbs_means::Result<()> {
    let (x0, y0) = (24.0, 6.0);
    println!("agm({x0}, {y0}) = {:.15}", agm(x0, y0, 1e-15)?);

    let (h, a) = ("power:-1".parse()?, "power:1".parse()?);
    let r = iterate_means(&h, &a, x0, y0, 1e-15)?;
    println!("harmonic/arithmetic limit = {:.15} after {} steps (sqrt(x0 y0) = {})", r.value, r.iterations, (x0 * y0).sqrt());

    let ratio: f64 = y0 / x0;
    let k = elliptic_k((1.0 - ratio * ratio).sqrt(), KMethod::Quadrature)?;
    println!("(pi/2) x0 / K(sqrt(1 - (y0/x0)^2)) = {:.15}", FRAC_PI_2 * x0 / k);
    Ok(())
}
