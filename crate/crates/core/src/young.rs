//! The two Young inequalities, their comparison, the integral form, and
//! the refined Hölder sum.

use serde::Serialize;

use crate::chain::{ChainReport, DISCRETE_TOL};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::quadrature::{try_integrate, Tolerance};

/// Relative gap below which the two right-hand sides tie.
pub const TIE_TOL: f64 = 1e-12;
const CRITICAL_BRACKET_HI: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum YoungCase {
    BothAboveOne,
    BothBelowOne,
    Straddle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum YoungWinner {
    Standard,
    Swapped,
    Tie,
}

/// Both Young bounds for one pair.
///
/// `rhs_standard = x^p/p + y^q/q`, `rhs_swapped = x^q/q + y^p/p`; the
/// winner is the smaller one. `y_critical` is the threshold for the larger
/// argument when the smaller one is held fixed (straddle case only).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YoungComparison {
    pub x: f64,
    pub y: f64,
    pub p: f64,
    pub q: f64,
    pub rhs_standard: f64,
    pub rhs_swapped: f64,
    pub product: f64,
    pub case_id: YoungCase,
    pub winner: YoungWinner,
    pub y_critical: Option<f64>,
}

fn conjugate_exponent(p: f64) -> Result<f64> {
    if p > 1.0 && p.is_finite() {
        Ok(p / (p - 1.0))
    } else {
        Err(Error::param(format!("exponent must be a finite p > 1, got {p}")))
    }
}

fn young_term(v: f64, e: f64) -> f64 {
    v.powf(e) / e
}

pub fn young_pair(x: f64, y: f64, p: f64) -> Result<YoungComparison> {
    let q = conjugate_exponent(p)?;
    if !(x >= 0.0 && y >= 0.0 && x.is_finite() && y.is_finite()) {
        return Err(Error::domain(format!("Young arguments must be nonnegative, got ({x}, {y})")));
    }
    let rhs_standard = young_term(x, p) + young_term(y, q);
    let rhs_swapped = young_term(x, q) + young_term(y, p);
    let diff = rhs_standard - rhs_swapped;
    let winner = if diff.abs() <= TIE_TOL * rhs_standard.max(rhs_swapped) {
        YoungWinner::Tie
    } else if diff < 0.0 {
        YoungWinner::Standard
    } else {
        YoungWinner::Swapped
    };
    let (lo, hi) = (x.min(y), x.max(y));
    let big = p.max(q);
    let (case_id, y_critical) = if lo >= 1.0 {
        (YoungCase::BothAboveOne, None)
    } else if hi <= 1.0 {
        (YoungCase::BothBelowOne, None)
    } else {
        (YoungCase::Straddle, Some(solve_critical(lo, big, 0.0)?))
    };
    Ok(YoungComparison {
        x,
        y,
        p,
        q,
        rhs_standard,
        rhs_swapped,
        product: x * y,
        case_id,
        winner,
        y_critical,
    })
}

/// `x^p/p - x^q/q - (y^p/p - y^q/q)`, zero at the critical value.
pub fn critical_residual(x: f64, y: f64, p: f64) -> f64 {
    let q = p / (p - 1.0);
    (young_term(x, p) - young_term(x, q)) - (young_term(y, p) - young_term(y, q))
}

fn solve_critical(x: f64, p: f64, tol: f64) -> Result<f64> {
    if x == 1.0 {
        return Ok(1.0);
    }
    // φ(y) = -residual is negative at 1 and increasing beyond it
    let phi = |y: f64| -critical_residual(x, y, p);
    let mut lo = 1.0;
    let mut hi = 2.0;
    while phi(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > CRITICAL_BRACKET_HI {
            return Err(Error::Bracket { lo: 1.0, hi: CRITICAL_BRACKET_HI });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = phi(mid);
        if v.abs() <= tol && tol > 0.0 {
            return Ok(mid);
        }
        if !(lo < mid && mid < hi) {
            break;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if phi(lo).abs() <= phi(hi).abs() { lo } else { hi })
}

/// Critical `y >= 1` of the straddle case by bisection on `[1, 1e6]`.
pub fn critical_y(x: f64, p: f64, tol: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::domain(format!("critical_y needs 0 < x <= 1, got {x}")));
    }
    if !(p >= 2.0 && p.is_finite()) {
        return Err(Error::param(format!("critical_y needs p >= 2, got {p}")));
    }
    if !(tol > 0.0) {
        return Err(Error::param(format!("tolerance must be positive, got {tol}")));
    }
    let y = solve_critical(x, p, tol)?;
    let r = critical_residual(x, y, p).abs();
    if r > tol {
        return Err(Error::NonConvergence(format!(
            "critical_y({x}, {p}): residual {r:e} above {tol:e}"
        )));
    }
    Ok(y)
}

fn inverse(f: &FunctionSpec, s: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            break;
        }
        if f.eval(mid) < s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `∫₀ᵃ f + ∫₀ᵇ f⁻¹ - ab` for increasing `f` with `f(0) = 0`; the inverse is
/// found by bisection.
pub fn young_integral_gap(f: &FunctionSpec, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::domain(format!("need a, b > 0, got ({a}, {b})")));
    }
    if f.eval(0.0).abs() > 1e-14 {
        return Err(Error::domain(format!("{f} does not vanish at 0")));
    }
    let mut top = a.max(1.0);
    while f.eval(top) < b {
        top *= 2.0;
        if top > CRITICAL_BRACKET_HI {
            return Err(Error::domain(format!("{b} lies outside the range of {f} on [0, 1e6]")));
        }
    }
    f.check_nondecreasing(0.0, top)?;
    let tol = Tolerance { abs: 1e-13, rel: 1e-13 };
    let direct = try_integrate(|t| Ok(f.eval(t)), 0.0, a, tol)?.value;
    let inv = try_integrate(|s| Ok(inverse(f, s, top)), 0.0, b, tol)?.value;
    Ok(direct + inv - a * b)
}

/// `Σ (a/A)(b/B) <= Σ (max^p/p + min^q/q) <= 1` with `A = ‖a‖_p`,
/// `B = ‖b‖_q`.
pub fn rgh_refined_chain(a: &[f64], b: &[f64], p: f64) -> Result<ChainReport> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    if a.is_empty() {
        return Err(Error::Degenerate("empty vectors".into()));
    }
    if !(p >= 2.0 && p.is_finite()) {
        return Err(Error::param(format!("need p >= 2, got {p}")));
    }
    if a.iter().chain(b).any(|v| !(*v >= 0.0 && v.is_finite())) {
        return Err(Error::domain("entries must be finite and nonnegative"));
    }
    let q = p / (p - 1.0);
    let norm_a = a.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p);
    let norm_b = b.iter().map(|v| v.powf(q)).sum::<f64>().powf(1.0 / q);
    if norm_a == 0.0 || norm_b == 0.0 {
        return Err(Error::Degenerate("a vector has zero norm".into()));
    }
    let mut left = 0.0;
    let mut middle = 0.0;
    for (&ak, &bk) in a.iter().zip(b) {
        let (u, v) = (ak / norm_a, bk / norm_b);
        left += u * v;
        middle += young_term(u.max(v), p) + young_term(u.min(v), q);
    }
    Ok(ChainReport::forward(left, middle, 1.0, DISCRETE_TOL))
}
