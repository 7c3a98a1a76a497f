//! Complete elliptic integral of the first kind and its elementary
//! two-sided bounds.
//!
//! The argument `x` is the modulus: `K(x) = ∫₀¹ dt / √((1 - t²)(1 - x²t²))`.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iterated::agm;
use crate::quadrature::{try_integrate, Tolerance};

/// Relative tolerance of the bound chain.
pub const CHAIN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KMethod {
    Agm,
    Quadrature,
}

fn check_modulus(x: f64) -> Result<()> {
    if (0.0..1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain(format!("modulus must lie in [0, 1), got {x}")))
    }
}

/// `K(x)` for `0 <= x < 1`.
///
/// `Agm` uses `π / (2 agm(1, √(1 - x²)))`. `Quadrature` integrates
/// `dθ / √(1 - x² sin²θ)` over `[0, π/2]`, the form obtained with
/// `t = sin θ`.
pub fn elliptic_k(x: f64, method: KMethod) -> Result<f64> {
    check_modulus(x)?;
    match method {
        KMethod::Agm => {
            let kp = ((1.0 - x) * (1.0 + x)).sqrt();
            Ok(FRAC_PI_2 / agm(1.0, kp, 1e-16)?)
        }
        KMethod::Quadrature => {
            let x2 = x * x;
            let r = try_integrate(
                |th: f64| {
                    let s = th.sin();
                    Ok(1.0 / (1.0 - x2 * s * s).sqrt())
                },
                0.0,
                FRAC_PI_2,
                Tolerance { abs: 1e-14, rel: 1e-14 },
            )?;
            Ok(r.value)
        }
    }
}

/// Elementary bounds at one modulus with the reference `K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsReport {
    pub x: f64,
    #[serde(rename = "L0")]
    pub l0: f64,
    #[serde(rename = "L1")]
    pub l1: f64,
    #[serde(rename = "L2")]
    pub l2: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "G2")]
    pub g2: f64,
    #[serde(rename = "G1")]
    pub g1: f64,
    #[serde(rename = "G0")]
    pub g0: f64,
    pub chain_ok: bool,
    /// Largest `(v_i - v_{i+1}) / K` over adjacent links, clamped at 0.
    pub max_violation: f64,
}

impl BoundsReport {
    /// `[L0, L1, L2, K, G2, G1, G0]`
    pub fn chain(&self) -> [f64; 7] {
        [self.l0, self.l1, self.l2, self.k, self.g2, self.g1, self.g0]
    }
}

/// `(1/√p) ln((2√p + b) / c)` computed as `(ln1p(2√p + b - 1) - ln c) / √p`.
fn log_term(p: f64, b: f64, c: f64) -> f64 {
    let r = p.sqrt();
    ((2.0 * r + b - 1.0).ln_1p() - c.ln()) / r
}

/// Lower bound for `∫₀¹ dt / ((1 + t) S)`, `S = √((1 - t)(1 - xt))`.
fn l0(x: f64) -> f64 {
    log_term(2.0 * (x + 1.0), x + 3.0, 1.0 - x)
}

fn g0(x: f64) -> f64 {
    log_term(2.0 * x * (x + 1.0), 3.0 * x + 1.0, 1.0 - x)
}

fn l1(x: f64) -> f64 {
    // 2/√P · ln((√P + 2x + 2)/(1 - x)) = log_term(P/4 ...) rescaled
    let p = (x + 3.0) * (3.0 * x + 1.0);
    let r = p.sqrt();
    2.0 * ((r + 2.0 * x + 1.0).ln_1p() - (1.0 - x).ln()) / r
}

/// Two-root term of the refined lower bound; `s = ±√5`.
fn sqrt5_term(x: f64, s: f64) -> f64 {
    let p = (x + 4.0 + s) * (0.5 * (7.0 + s) * x + 0.5 * (3.0 + s));
    let b = 0.5 * (9.0 + s) * x + 0.5 * (11.0 + 3.0 * s);
    let c = 0.5 * (5.0 + s) * (1.0 - x);
    log_term(p, b, c)
}

fn l2(x: f64) -> f64 {
    let s5 = 5f64.sqrt();
    let c_plus = (s5 + 1.0) / (2.0 * s5);
    let c_minus = (s5 - 1.0) / (2.0 * s5);
    2.5 * (c_plus * sqrt5_term(x, s5) + c_minus * sqrt5_term(x, -s5))
}

/// Evaluates the six bounds at `x` and checks
/// `L0 <= L1 <= L2 <= K <= G2 <= G1 <= G0` within relative [`CHAIN_TOL`].
pub fn bounds(x: f64) -> Result<BoundsReport> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!("bounds need 0 < x < 1, got {x}")));
    }
    let k = elliptic_k(x, KMethod::Agm)?;
    let (lo0, lo1, lo2) = (l0(x), l1(x), l2(x));
    let hi0 = g0(x);
    let hi1 = 0.5 * (lo0 + hi0);
    let hi2 = 0.4 * (lo0 + hi0 + 0.5 * lo1);
    let values = [lo0, lo1, lo2, k, hi2, hi1, hi0];
    let max_violation = values
        .windows(2)
        .map(|w| (w[0] - w[1]) / k)
        .fold(0.0_f64, |acc, v| if v.is_nan() { f64::INFINITY } else { acc.max(v) });
    Ok(BoundsReport {
        x,
        l0: lo0,
        l1: lo1,
        l2: lo2,
        k,
        g2: hi2,
        g1: hi1,
        g0: hi0,
        chain_ok: max_violation <= CHAIN_TOL,
        max_violation,
    })
}

/// Grid `lo, lo + step, ...` up to `hi` inclusive (with a half-step slack
/// against rounding). Points are computed as `lo + i * step`.
pub fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::param(format!("bad grid {lo}:{hi}:{step}")));
    }
    let n = ((hi - lo) / step + 0.5).floor() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

pub fn bounds_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<BoundsReport>> {
    grid(lo, hi, step)?.into_iter().map(bounds).collect()
}

/// CSV with header `x,L0,L1,L2,K,G2,G1,G0,chain_ok`, numbers with 17
/// significant digits.
pub fn bounds_csv(rows: &[BoundsReport]) -> String {
    let mut out = String::from("x,L0,L1,L2,K,G2,G1,G0,chain_ok\n");
    for r in rows {
        let _ = write!(out, "{:.16e}", r.x);
        for v in r.chain() {
            let _ = write!(out, ",{v:.16e}");
        }
        let _ = writeln!(out, ",{}", r.chain_ok);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_at_zero() {
        assert_eq!(elliptic_k(0.0, KMethod::Agm).unwrap(), FRAC_PI_2);
        assert!((elliptic_k(0.0, KMethod::Quadrature).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn k_reference_value() {
        let k = elliptic_k(0.5, KMethod::Agm).unwrap();
        assert!((k - 1.685750354812596).abs() < 1e-14);
    }

    #[test]
    fn methods_agree() {
        for x in [0.1, 0.5, 0.9, 0.95] {
            let a = elliptic_k(x, KMethod::Agm).unwrap();
            let q = elliptic_k(x, KMethod::Quadrature).unwrap();
            assert!((a - q).abs() <= 1e-10 * a, "x={x}: {a} vs {q}");
        }
    }

    #[test]
    fn grows_towards_one() {
        let near = elliptic_k(1.0 - 1e-6, KMethod::Agm).unwrap();
        assert!(near > elliptic_k(0.9, KMethod::Agm).unwrap());
        assert!(elliptic_k(1.0, KMethod::Agm).is_err());
        assert!(elliptic_k(-0.1, KMethod::Agm).is_err());
    }

    #[test]
    fn bounds_at_half() {
        let r = bounds(0.5).unwrap();
        assert!(r.chain_ok, "{r:?}");
        let expect = [
            1.5206919926, 1.6753585625, 1.6794780974, 1.685750354812596, 1.6920535576,
            1.6962273064, 1.8717626202,
        ];
        for (v, e) in r.chain().iter().zip(expect) {
            assert!((v - e).abs() < 1e-9, "{v} vs {e}");
        }
    }

    #[test]
    fn chain_on_full_grid() {
        for i in 1..=99 {
            let x = i as f64 / 100.0;
            let r = bounds(x).unwrap();
            assert!(r.chain_ok, "x={x}: {r:?}");
            assert!(r.l1.is_finite() && r.l1 > 0.0);
        }
    }

    #[test]
    fn refinement_tightens() {
        let r = bounds(0.9).unwrap();
        assert!(r.g0 - r.l0 > r.g2 - r.l2);
    }

    #[test]
    fn bounds_track_k_near_one() {
        for x in [0.99, 0.999, 0.999999] {
            let r = bounds(x).unwrap();
            for v in r.chain() {
                let q = v / r.k;
                assert!((0.5..=2.0).contains(&q), "x={x}: {q}");
            }
        }
    }

    #[test]
    fn endpoints_rejected() {
        assert!(bounds(0.0).is_err());
        assert!(bounds(1.0).is_err());
    }

    #[test]
    fn csv_shape() {
        let rows = bounds_grid(0.1, 0.9, 0.1).unwrap();
        assert_eq!(rows.len(), 9);
        let csv = bounds_csv(&rows);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "x,L0,L1,L2,K,G2,G1,G0,chain_ok");
        assert_eq!(lines.len(), 10);
        assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
        let k: f64 = lines[5].split(',').nth(4).unwrap().parse().unwrap();
        assert_eq!(k, rows[4].k);
    }
}
