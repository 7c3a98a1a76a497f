//! Iteration of a pair of means and the arithmetic-geometric mean.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::means::{eval_mean, MeanSpec};

/// Hard cap on the number of iteration steps.
pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationResult {
    pub value: f64,
    pub iterations: usize,
    /// `|x_n - y_n| / max(x_n, y_n)` at exit.
    pub final_gap: f64,
}

fn gap(x: f64, y: f64) -> f64 {
    let hi = x.max(y);
    if hi == 0.0 {
        0.0
    } else {
        (x - y).abs() / hi
    }
}

fn check_start(x0: f64, y0: f64, tol: f64) -> Result<()> {
    if !(x0 > 0.0 && y0 > 0.0 && x0.is_finite() && y0.is_finite()) {
        return Err(Error::domain(format!(
            "iteration needs positive finite starting values, got ({x0}, {y0})"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::param(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Runs `x_{k+1} = M(x_k, y_k)`, `y_{k+1} = N(x_k, y_k)` until the relative
/// gap drops to `tol`, returning the midpoint of the final pair.
pub fn iterate_means(
    m: &MeanSpec,
    n: &MeanSpec,
    x0: f64,
    y0: f64,
    tol: f64,
) -> Result<IterationResult> {
    check_start(x0, y0, tol)?;
    let (mut x, mut y) = (x0, y0);
    for k in 0..=MAX_ITERATIONS {
        let g = gap(x, y);
        if g <= tol {
            return Ok(IterationResult {
                value: 0.5 * (x + y),
                iterations: k,
                final_gap: g,
            });
        }
        if k == MAX_ITERATIONS {
            break;
        }
        let nx = eval_mean(m, x, y)?;
        let ny = eval_mean(n, x, y)?;
        x = nx;
        y = ny;
    }
    Err(Error::NonConvergence(format!(
        "{m} / {n} from ({x0}, {y0}): gap {} after {MAX_ITERATIONS} steps",
        gap(x, y)
    )))
}

/// Arithmetic-geometric mean of `x` and `y`. Tolerances below two ulps
/// are raised to two ulps, where the iteration stalls.
pub fn agm(x: f64, y: f64, tol: f64) -> Result<f64> {
    check_start(x, y, tol)?;
    let tol = tol.max(2.0 * f64::EPSILON);
    let (mut a, mut b) = if x >= y { (x, y) } else { (y, x) };
    for _ in 0..MAX_ITERATIONS {
        if a - b <= tol * a {
            return Ok(0.5 * (a + b));
        }
        let next = 0.5 * (a + b);
        b = a.sqrt() * b.sqrt();
        a = next;
    }
    Err(Error::NonConvergence(format!("agm({x}, {y}) at tol {tol}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{log_uniform, rng};

    fn m(s: &str) -> MeanSpec {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_pair_jumps_in_one_step() {
        let r = iterate_means(&m("power:1"), &m("power:1"), 3.0, 7.0, 1e-14).unwrap();
        assert_eq!(r.value, 5.0);
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn equal_start_needs_no_steps() {
        let r = iterate_means(&m("power:2"), &m("min"), 2.5, 2.5, 1e-14).unwrap();
        assert_eq!((r.value, r.iterations), (2.5, 0));
    }

    #[test]
    fn arithmetic_geometric_pair_is_agm() {
        let r = iterate_means(&m("power:1"), &m("power:0"), 1.0, 2.0, 1e-15).unwrap();
        let a = agm(1.0, 2.0, 1e-16).unwrap();
        assert!((r.value - a).abs() < 1e-12 * a);
        assert!(r.final_gap <= 1e-15);
    }

    #[test]
    fn agm_values() {
        assert_eq!(agm(1.0, 1.0, 1e-15).unwrap(), 1.0);
        let v = agm(24.0, 6.0, 1e-16).unwrap();
        assert!((v - 13.458171481725615).abs() < 1e-10);
        assert_eq!(agm(6.0, 24.0, 1e-16).unwrap(), v);
        assert!(agm(0.0, 1.0, 1e-15).is_err());
        assert!(agm(-1.0, 1.0, 1e-15).is_err());
    }

    #[test]
    fn agm_between_geometric_and_arithmetic() {
        let mut r = rng(17);
        for _ in 0..1000 {
            let x = log_uniform(&mut r, 1e-3, 1e3);
            let y = log_uniform(&mut r, 1e-3, 1e3);
            let a = agm(x, y, 1e-15).unwrap();
            let g = (x * y).sqrt();
            let ar = 0.5 * (x + y);
            assert!(g * (1.0 - 1e-14) <= a && a <= ar * (1.0 + 1e-14));
        }
    }

    #[test]
    fn agm_is_homogeneous() {
        let base = agm(3.0, 0.2, 1e-16).unwrap();
        for l in [1e-3, 0.7, 12.0, 1e5] {
            let v = agm(3.0 * l, 0.2 * l, 1e-16).unwrap();
            assert!((v - l * base).abs() <= 1e-14 * v);
        }
    }

    #[test]
    fn result_stays_in_range() {
        let r = iterate_means(&m("power:3"), &m("log"), 0.4, 9.0, 1e-13).unwrap();
        assert!(0.4 <= r.value && r.value <= 9.0);
        assert!(r.iterations <= MAX_ITERATIONS);
    }

    #[test]
    fn min_max_pair_never_converges() {
        let e = iterate_means(&m("min"), &m("max"), 1.0, 2.0, 1e-10).unwrap_err();
        assert!(matches!(e, Error::NonConvergence(_)));
    }
}
