use std::f64::consts::LN_2;

use super::spec::{Generator, MeanSpec, PowerOrder, RadoOrder, Weights};
use crate::error::{Error, Result};
use crate::iterated::iterate_means;

/// Relative gap below which arguments are treated as equal.
pub const EQUAL_REL: f64 = 1e-12;
/// Upper end of the band where the logarithmic and identric means switch
/// to their series expansions.
pub const SERIES_REL: f64 = 1e-6;
/// Convergence tolerance used when an iterated mean is evaluated.
pub const ITERATED_EVAL_TOL: f64 = 1e-15;

fn check_args(x: f64, y: f64) -> Result<()> {
    if !(x.is_finite() && y.is_finite()) || x < 0.0 || y < 0.0 {
        return Err(Error::domain(format!(
            "mean arguments must be finite and nonnegative, got ({x}, {y})"
        )));
    }
    Ok(())
}

fn require_positive(x: f64, y: f64, what: &str) -> Result<()> {
    if x > 0.0 && y > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} needs positive arguments, got ({x}, {y})"
        )))
    }
}

#[inline]
fn ordered(x: f64, y: f64) -> (f64, f64) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

#[inline]
fn nearly_equal(lo: f64, hi: f64) -> bool {
    hi - lo <= EQUAL_REL * hi
}

/// `ln |e^a - 1|` without overflow for large `a`.
fn ln_abs_expm1(a: f64) -> f64 {
    if a > 30.0 {
        a + (-(-a).exp()).ln_1p()
    } else {
        a.exp_m1().abs().ln()
    }
}

/// `ln(1 + e^a)`
fn softplus(a: f64) -> f64 {
    if a > 30.0 {
        a + (-a).exp().ln_1p()
    } else {
        a.exp().ln_1p()
    }
}

fn sigmoid(a: f64) -> f64 {
    if a >= 0.0 {
        1.0 / (1.0 + (-a).exp())
    } else {
        let e = a.exp();
        e / (1.0 + e)
    }
}

fn geometric(x: f64, y: f64) -> f64 {
    x.sqrt() * y.sqrt()
}

pub(crate) fn power_mean(order: PowerOrder, x: f64, y: f64) -> f64 {
    let (lo, hi) = ordered(x, y);
    match order {
        PowerOrder::NegInf => lo,
        PowerOrder::PosInf => hi,
        PowerOrder::Geometric | PowerOrder::Finite(0.0) => geometric(x, y),
        PowerOrder::Finite(a) if a > 0.0 => {
            if hi == 0.0 {
                return 0.0;
            }
            let r = lo / hi;
            hi * (0.5 * (1.0 + r.powf(a))).powf(1.0 / a)
        }
        PowerOrder::Finite(a) => {
            if lo == 0.0 {
                return 0.0;
            }
            let r = hi / lo;
            lo * (0.5 * (1.0 + r.powf(a))).powf(1.0 / a)
        }
    }
}

fn logarithmic(x: f64, y: f64) -> Result<f64> {
    require_positive(x, y, "logarithmic mean")?;
    let (lo, hi) = ordered(x, y);
    if nearly_equal(lo, hi) {
        return Ok(x);
    }
    if hi - lo < SERIES_REL * hi {
        let z = (hi - lo) / (hi + lo);
        let z2 = z * z;
        return Ok(0.5 * (hi + lo) * (1.0 - z2 / 3.0 - 4.0 * z2 * z2 / 45.0));
    }
    let s = (lo / hi).ln();
    Ok(hi * s.exp_m1() / s)
}

/// `(1/e) (y^y / x^x)^(1/(y-x))`, evaluated in log space.
fn identric(x: f64, y: f64) -> Result<f64> {
    require_positive(x, y, "identric mean")?;
    let (lo, hi) = ordered(x, y);
    if nearly_equal(lo, hi) {
        return Ok(x);
    }
    if hi - lo < SERIES_REL * hi {
        let z = (hi - lo) / (hi + lo);
        let z2 = z * z;
        let expo = -z2 / 6.0 - z2 * z2 / 20.0 - z2 * z2 * z2 / 42.0;
        return Ok(0.5 * (hi + lo) * expo.exp());
    }
    let r = lo / hi;
    let s = r.ln();
    Ok(hi * (r * s / s.exp_m1() - 1.0).exp())
}

fn rado(order: RadoOrder, x: f64, y: f64) -> Result<f64> {
    match order {
        RadoOrder::NegInf => Ok(x.min(y)),
        RadoOrder::PosInf => Ok(x.max(y)),
        RadoOrder::Logarithmic | RadoOrder::Finite(-1.0) => logarithmic(x, y),
        RadoOrder::Identric | RadoOrder::Finite(0.0) => identric(x, y),
        RadoOrder::Finite(b) => {
            require_positive(x, y, "Rado mean")?;
            let (lo, hi) = ordered(x, y);
            if nearly_equal(lo, hi) {
                return Ok(x);
            }
            // R_b = hi * [ (1 - r^(b+1)) / ((b+1)(1 - r)) ]^(1/b), r = lo/hi
            let s = (lo / hi).ln();
            let a = (b + 1.0) * s;
            if a.abs() < 500.0 {
                let ratio = a.exp_m1() / ((b + 1.0) * s.exp_m1());
                Ok(hi * ratio.powf(1.0 / b))
            } else {
                let ln_ratio = ln_abs_expm1(a) - (b + 1.0).abs().ln() - ln_abs_expm1(s);
                Ok(hi * (ln_ratio / b).exp())
            }
        }
    }
}

fn gini(u: f64, v: f64, x: f64, y: f64) -> Result<f64> {
    let (lo, hi) = ordered(x, y);
    if u == v {
        if u == 0.0 {
            return Ok(geometric(x, y));
        }
        require_positive(x, y, "Gini mean")?;
        if nearly_equal(lo, hi) {
            return Ok(x);
        }
        let s = (lo / hi).ln();
        return Ok(hi * (s * sigmoid(u * s)).exp());
    }
    if lo == 0.0 {
        if hi == 0.0 {
            return Ok(0.0);
        }
        if u > 0.0 && v > 0.0 {
            return Ok(hi);
        }
        return Err(Error::domain(format!(
            "Gini mean ({u}, {v}) needs positive arguments, got ({x}, {y})"
        )));
    }
    if nearly_equal(lo, hi) {
        return Ok(x);
    }
    let s = (lo / hi).ln();
    Ok(hi * ((softplus(u * s) - softplus(v * s)) / (u - v)).exp())
}

fn weighted_geometric(w: Weights, x: f64, y: f64) -> f64 {
    let term = |wt: f64, v: f64| if wt == 0.0 { 0.0 } else { wt * v.ln() };
    if (w.first() > 0.0 && x == 0.0) || (w.second() > 0.0 && y == 0.0) {
        return 0.0;
    }
    (term(w.first(), x) + term(w.second(), y)).exp()
}

fn quasi(g: Generator, x: f64, y: f64) -> f64 {
    match g {
        Generator::Identity => 0.5 * (x + y),
        Generator::Ln => geometric(x, y),
        Generator::Exp => {
            let (lo, hi) = ordered(x, y);
            hi + (lo - hi).exp().ln_1p() - LN_2
        }
        Generator::Power(p) => power_mean(PowerOrder::Finite(p), x, y),
    }
}

/// Value of the mean `spec` at `(x, y)`.
///
/// Exceptional orders use their closed forms. The logarithmic, identric,
/// Rado and diagonal Gini means return `x` when the arguments agree to
/// relative `1e-12`.
pub fn eval_mean(spec: &MeanSpec, x: f64, y: f64) -> Result<f64> {
    check_args(x, y)?;
    match spec {
        MeanSpec::Power(o) => Ok(power_mean(*o, x, y)),
        MeanSpec::Rado(o) => rado(*o, x, y),
        MeanSpec::Gini { u, v } => gini(*u, *v, x, y),
        MeanSpec::Lehmer(u) => {
            require_positive(x, y, "Lehmer mean")?;
            gini(u + 1.0, *u, x, y)
        }
        MeanSpec::WeightedArithmetic(w) => Ok(w.first() * x + w.second() * y),
        MeanSpec::WeightedGeometric(w) => Ok(weighted_geometric(*w, x, y)),
        MeanSpec::QuasiArithmetic(g) => Ok(quasi(*g, x, y)),
        MeanSpec::Logarithmic => logarithmic(x, y),
        MeanSpec::Identric => identric(x, y),
        MeanSpec::Min => Ok(x.min(y)),
        MeanSpec::Max => Ok(x.max(y)),
        MeanSpec::Mediant => Err(Error::param(
            "the mediant acts on fractions; it has no value on a pair of reals",
        )),
        MeanSpec::Iterated(m, n) => {
            if x == y {
                return Ok(x);
            }
            require_positive(x, y, "iterated mean")?;
            Ok(iterate_means(m, n, x, y, ITERATED_EVAL_TOL)?.value)
        }
    }
}

/// Conjugate mean `xy / M(x, y)`.
pub fn conjugate_eval(spec: &MeanSpec, x: f64, y: f64) -> Result<f64> {
    require_positive(x, y, "conjugate mean")?;
    check_args(x, y)?;
    let m = eval_mean(spec, x, y)?;
    Ok(x / m * y)
}

/// Conjugate of a Rado mean in the reciprocal form `1 / R(1/x, 1/y)`.
pub fn rado_reciprocal_conjugate(order: RadoOrder, x: f64, y: f64) -> Result<f64> {
    require_positive(x, y, "Rado conjugate")?;
    Ok(1.0 / rado(order, 1.0 / x, 1.0 / y)?)
}

/// Generalized entropy `-ln M(x, y)`.
pub fn entropy(spec: &MeanSpec, x: f64, y: f64) -> Result<f64> {
    require_positive(x, y, "entropy")?;
    check_args(x, y)?;
    Ok(-eval_mean(spec, x, y)?.ln())
}

/// Farey mediant `(p1 + p2) / (q1 + q2)`, not reduced.
pub fn mediant(p1: i64, q1: u64, p2: i64, q2: u64) -> (i64, u64) {
    (p1 + p2, q1 + q2)
}
