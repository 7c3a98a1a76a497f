//! Integral Cauchy-Bunyakovsky refinements: the mean form, the
//! log-derivative form, their general-h versions, and the sampled
//! comparison of two refinements.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::chain::{ChainReport, INTEGRAL_TOL};
use crate::error::{Error, Result};
use crate::function::{check_interval, FunctionSpec, VALIDATION_POINTS};
use crate::means::{check_h_function, eval_mean, MeanSpec};
use crate::quadrature::{try_integrate, Tolerance};
use crate::sampling::{log_uniform, trial_rng};

/// Absolute tolerance on the tabulated exponent `∫ₐˣ M(f'/f, g'/g)`.
pub const INNER_TOL: f64 = 1e-12;
/// Quadrature tolerance of the outer integrals.
pub const OUTER_TOL: Tolerance = Tolerance { abs: 1e-300, rel: 1e-11 };
/// Relative gap under which two middle terms count as equal.
pub const COMPARE_TIE_TOL: f64 = 1e-9;
/// Relative tolerance of the pointwise product identity.
pub const IDENTITY_TOL: f64 = 1e-10;
const MAX_TABLE_DEPTH: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    /// `Φ₁ = M(f, g)²`, `Φ₂ = M*(f, g)²`
    Mean,
    /// `Φ₁ = exp(2∫ₐˣ M(f'/f, g'/g))`, `Φ₂ = f²g²/Φ₁`
    LogDerivative,
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainKind::Mean => "mean",
            ChainKind::LogDerivative => "logderiv",
        })
    }
}

impl FromStr for ChainKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mean" => Ok(ChainKind::Mean),
            "logderiv" | "log-derivative" => Ok(ChainKind::LogDerivative),
            other => Err(Error::param(format!("unknown chain kind '{other}'"))),
        }
    }
}

/// How the middle term is generated: a catalog mean or a raw h-function
/// with `M(u, v) = (u + v) h(ln(v/u))`.
#[derive(Clone, Copy)]
enum Middle<'a> {
    Spec(&'a MeanSpec),
    H(&'a dyn Fn(f64) -> f64),
}

fn h_mean(h: &dyn Fn(f64) -> f64, u: f64, v: f64) -> Result<f64> {
    if u == 0.0 && v == 0.0 {
        return Ok(0.0);
    }
    let t = if u == 0.0 {
        f64::INFINITY
    } else if v == 0.0 {
        f64::NEG_INFINITY
    } else {
        (v / u).ln()
    };
    let m = (u + v) * h(t);
    if m.is_finite() {
        Ok(m)
    } else {
        Err(Error::domain(format!("h-form mean is not finite at ({u}, {v})")))
    }
}

impl Middle<'_> {
    fn mean(&self, u: f64, v: f64) -> Result<f64> {
        match self {
            Middle::Spec(s) => eval_mean(s, u, v),
            Middle::H(h) => h_mean(*h, u, v),
        }
    }

    /// Exponent integrand of the log-derivative form at `t`.
    fn exponent(&self, f: &FunctionSpec, g: &FunctionSpec, t: f64) -> Result<f64> {
        match self {
            // mediant of the fractions f'/f and g'/g
            Middle::Spec(MeanSpec::Mediant) => Ok((f.deriv(t) + g.deriv(t)) / (f.eval(t) + g.eval(t))),
            _ => self.mean(f.log_deriv(t), g.log_deriv(t)),
        }
    }
}

fn integral<F>(h: F, a: f64, b: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    Ok(try_integrate(h, a, b, OUTER_TOL)?.value)
}

fn outer_terms(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64) -> Result<(f64, f64)> {
    let fg = integral(|t| Ok(f.eval(t) * g.eval(t)), a, b)?;
    let ff = integral(|t| Ok(f.eval(t).powi(2)), a, b)?;
    let gg = integral(|t| Ok(g.eval(t).powi(2)), a, b)?;
    Ok((fg * fg, ff * gg))
}

fn check_functions(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, kind: ChainKind) -> Result<()> {
    check_interval(a, b)?;
    f.check_positive(a, b)?;
    g.check_positive(a, b)?;
    if kind == ChainKind::LogDerivative {
        f.check_nondecreasing(a, b)?;
        g.check_nondecreasing(a, b)?;
    }
    Ok(())
}

fn mean_middle(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, mid: Middle<'_>) -> Result<f64> {
    let m2 = integral(|t| Ok(mid.mean(f.eval(t), g.eval(t))?.powi(2)), a, b)?;
    let c2 = integral(
        |t| {
            let (x, y) = (f.eval(t), g.eval(t));
            let m = mid.mean(x, y)?;
            Ok(if m == 0.0 { 0.0 } else { (x / m * y).powi(2) })
        },
        a,
        b,
    )?;
    Ok(m2 * c2)
}

/// Piecewise cubic Hermite table of `E(x) = ∫ₐˣ e(t) dt`.
#[derive(Debug, Clone)]
struct Antiderivative {
    knots: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl Antiderivative {
    fn build<E>(e: E, a: f64, b: f64) -> Result<Self>
    where
        E: Fn(f64) -> Result<f64>,
    {
        let tol = Tolerance { abs: 1e-14, rel: 1e-14 };
        let mut table = Antiderivative { knots: vec![a], values: vec![0.0], slopes: vec![e(a)?] };
        const START: usize = 8;
        let w = (b - a) / START as f64;
        for i in 0..START {
            let l = a + i as f64 * w;
            let r = if i + 1 == START { b } else { l + w };
            let sr = e(r)?;
            table.refine(&e, l, r, sr, 0, tol)?;
        }
        Ok(table)
    }

    fn refine<E>(&mut self, e: &E, l: f64, r: f64, sr: f64, depth: u32, tol: Tolerance) -> Result<()>
    where
        E: Fn(f64) -> Result<f64>,
    {
        let el = *self.values.last().expect("table starts with a knot");
        let sl = *self.slopes.last().expect("table starts with a knot");
        let m = 0.5 * (l + r);
        let half = try_integrate(e, l, m, tol)?.value;
        let rest = try_integrate(e, m, r, tol)?.value;
        let predicted = 0.5 * (el + el + half + rest) + (r - l) / 8.0 * (sl - sr);
        let actual = el + half;
        if depth >= MAX_TABLE_DEPTH || (predicted - actual).abs() <= INNER_TOL {
            self.knots.push(r);
            self.values.push(el + half + rest);
            self.slopes.push(sr);
            return Ok(());
        }
        let sm = e(m)?;
        self.refine(e, l, m, sm, depth + 1, tol)?;
        self.refine(e, m, r, sr, depth + 1, tol)
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.knots.len();
        let i = match self.knots.binary_search_by(|k| k.total_cmp(&x)) {
            Ok(i) => return self.values[i],
            Err(0) => 0,
            Err(i) if i >= n => n - 2,
            Err(i) => i - 1,
        };
        let (x0, x1) = (self.knots[i], self.knots[i + 1]);
        let h = x1 - x0;
        let s = (x - x0) / h;
        let (s2, s3) = (s * s, s * s * s);
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.values[i] + h10 * h * self.slopes[i] + h01 * self.values[i + 1] + h11 * h * self.slopes[i + 1]
    }
}

/// The two factors of the log-derivative middle term on `[a, b]`.
#[derive(Debug, Clone)]
pub struct LogDerivFactors {
    f: FunctionSpec,
    g: FunctionSpec,
    exponent: Antiderivative,
}

impl LogDerivFactors {
    /// `∫ₐˣ M(f'/f, g'/g)`
    pub fn exponent(&self, x: f64) -> f64 {
        self.exponent.eval(x)
    }

    pub fn phi1(&self, x: f64) -> f64 {
        (2.0 * self.exponent(x)).exp()
    }

    pub fn phi2(&self, x: f64) -> f64 {
        (2.0 * (self.f.ln_eval(x) + self.g.ln_eval(x) - self.exponent(x))).exp()
    }
}

fn logderiv_factors_impl(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, mid: Middle<'_>) -> Result<LogDerivFactors> {
    let exponent = Antiderivative::build(|t| mid.exponent(f, g, t), a, b)?;
    Ok(LogDerivFactors { f: f.clone(), g: g.clone(), exponent })
}

/// Tabulates `Φ₁` and `Φ₂` of the log-derivative form for `spec`.
pub fn logderiv_factors(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, spec: &MeanSpec) -> Result<LogDerivFactors> {
    check_functions(f, g, a, b, ChainKind::LogDerivative)?;
    logderiv_factors_impl(f, g, a, b, Middle::Spec(spec))
}

fn logderiv_middle(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, mid: Middle<'_>) -> Result<f64> {
    let phi = logderiv_factors_impl(f, g, a, b, mid)?;
    let i1 = integral(|t| Ok(phi.phi1(t)), a, b)?;
    let i2 = integral(|t| Ok(phi.phi2(t)), a, b)?;
    Ok(i1 * i2)
}

fn chain_impl(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, mid: Middle<'_>, kind: ChainKind) -> Result<ChainReport> {
    check_functions(f, g, a, b, kind)?;
    let middle = match kind {
        ChainKind::Mean => mean_middle(f, g, a, b, mid)?,
        ChainKind::LogDerivative => logderiv_middle(f, g, a, b, mid)?,
    };
    let (left, right) = outer_terms(f, g, a, b)?;
    Ok(ChainReport::forward(left, middle, right, INTEGRAL_TOL))
}

/// `(∫fg)² <= ∫M(f,g)² · ∫M*(f,g)² <= ∫f² · ∫g²` over `[a, b]`.
pub fn integral_mean_chain(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, spec: &MeanSpec) -> Result<ChainReport> {
    chain_impl(f, g, a, b, Middle::Spec(spec), ChainKind::Mean)
}

/// `(∫fg)² <= ∫Φ₁ · ∫Φ₂ <= ∫f² · ∫g²` with
/// `Φ₁(x) = exp(2∫ₐˣ M(f'/f, g'/g))` and `Φ₂ = f²g²/Φ₁`.
///
/// `f` and `g` must be positive and nondecreasing. With the mediant the
/// exponent is `(f' + g')/(f + g)`.
pub fn integral_logderiv_chain(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, spec: &MeanSpec) -> Result<ChainReport> {
    chain_impl(f, g, a, b, Middle::Spec(spec), ChainKind::LogDerivative)
}

pub fn integral_chain(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, spec: &MeanSpec, kind: ChainKind) -> Result<ChainReport> {
    chain_impl(f, g, a, b, Middle::Spec(spec), kind)
}

/// Whether `f'/f - g'/g` keeps one sign on `[a, b]`, sampled on the
/// validation grid.
///
/// With ordered log-derivatives the log-derivative chain holds for every
/// intermediate mean. When they cross it can fail: with `max`, for
/// instance, the two Chebyshev factors of the right link become oppositely
/// ordered.
pub fn log_derivatives_ordered(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64) -> bool {
    let (mut below, mut above) = (false, false);
    for i in 0..VALIDATION_POINTS {
        let t = a + (b - a) * i as f64 / (VALIDATION_POINTS - 1) as f64;
        let (lf, lg) = (f.log_deriv(t), g.log_deriv(t));
        let d = lf - lg;
        let floor = 1e-12 * lf.abs().max(lg.abs());
        below |= d < -floor;
        above |= d > floor;
    }
    !(below && above)
}

/// Grid on which an h-function is validated before use.
pub fn h_validation_grid() -> Vec<f64> {
    (0..=32).map(|i| i as f64 * 0.25).collect()
}

/// Chains with the mean `(u + v) h(ln(v/u))`; `h` is validated first.
pub fn general_h_chain<H>(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, h: H, kind: ChainKind) -> Result<ChainReport>
where
    H: Fn(f64) -> f64,
{
    let check = check_h_function(|t| Ok(h(t)), &h_validation_grid())?;
    if !check.is_valid() {
        return Err(Error::Precondition(format!(
            "h is not a mean generator: h(0) = {}, {} evenness and {} ratio violations",
            check.h0_value,
            check.evenness_violations.len(),
            check.ratio_violations.len()
        )));
    }
    chain_impl(f, g, a, b, Middle::H(&h), kind)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub holds: bool,
    pub max_rel_deviation: f64,
    pub worst_point: f64,
    pub points: usize,
}

/// Checks `Φ₁(x) Φ₂(x) = f(x)² g(x)²` on the grid.
pub fn product_identity_check_with<P1, P2>(phi1: P1, phi2: P2, f: &FunctionSpec, g: &FunctionSpec, grid: &[f64]) -> Result<IdentityReport>
where
    P1: Fn(f64) -> Result<f64>,
    P2: Fn(f64) -> Result<f64>,
{
    if grid.is_empty() {
        return Err(Error::Precondition("identity grid is empty".into()));
    }
    let mut worst = (0.0_f64, grid[0]);
    for &x in grid {
        let lhs = phi1(x)? * phi2(x)?;
        let rhs = (f.eval(x) * g.eval(x)).powi(2);
        let dev = (lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE);
        if !(dev <= worst.0) {
            worst = (if dev.is_nan() { f64::INFINITY } else { dev }, x);
        }
    }
    Ok(IdentityReport { holds: worst.0 <= IDENTITY_TOL, max_rel_deviation: worst.0, worst_point: worst.1, points: grid.len() })
}

/// Product identity for either chain kind on `[a, b]`.
///
/// For the log-derivative form `Φ₂` is recomputed independently as
/// `f(a)²g(a)² exp(2∫ₐˣ (f'/f + g'/g - M))` by direct quadrature.
pub fn product_identity_check(
    f: &FunctionSpec,
    g: &FunctionSpec,
    a: f64,
    b: f64,
    kind: ChainKind,
    spec: &MeanSpec,
    grid: &[f64],
) -> Result<IdentityReport> {
    check_functions(f, g, a, b, kind)?;
    if let Some(x) = grid.iter().find(|x| !(**x >= a && **x <= b)) {
        return Err(Error::Precondition(format!("grid point {x} lies outside [{a}, {b}]")));
    }
    match kind {
        ChainKind::Mean => product_identity_check_with(
            |x| Ok(eval_mean(spec, f.eval(x), g.eval(x))?.powi(2)),
            |x| {
                let (u, v) = (f.eval(x), g.eval(x));
                Ok((u / eval_mean(spec, u, v)? * v).powi(2))
            },
            f,
            g,
            grid,
        ),
        ChainKind::LogDerivative => {
            let phi = logderiv_factors_impl(f, g, a, b, Middle::Spec(spec))?;
            let mid = Middle::Spec(spec);
            let base = 2.0 * (f.ln_eval(a) + g.ln_eval(a));
            product_identity_check_with(
                |x| Ok(phi.phi1(x)),
                |x| {
                    let tol = Tolerance { abs: 1e-14, rel: 1e-13 };
                    let rest = try_integrate(
                        |t| Ok(f.log_deriv(t) + g.log_deriv(t) - mid.exponent(f, g, t)?),
                        a,
                        x,
                        tol,
                    )?;
                    Ok((base + 2.0 * rest.value).exp())
                },
                f,
                g,
                grid,
            )
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    APrecB,
    BPrecA,
    Incomparable,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonWitness {
    pub trial: u64,
    pub f: FunctionSpec,
    pub g: FunctionSpec,
    pub a: f64,
    pub b: f64,
    pub middle_a: f64,
    pub middle_b: f64,
}

/// Sampled comparison of two refinements. Directional relations are only
/// consistent with `≺` on the sampled pairs; `Incomparable` carries one
/// witness for each strict direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderVerdict {
    pub spec_a: String,
    pub spec_b: String,
    pub kind: ChainKind,
    pub relation: Relation,
    pub witnesses: Vec<ComparisonWitness>,
    pub trials: usize,
    pub trials_run: usize,
    pub a_below_b: usize,
    pub b_below_a: usize,
    pub ties: usize,
    pub failures: usize,
    pub seed: u64,
}

/// Interval lengths drawn by the comparison sampler.
pub const SAMPLE_LENGTHS: [f64; 3] = [0.5, 1.0, 2.0];
const COEFF_LO: f64 = 0.1;
const COEFF_HI: f64 = 10.0;

/// Strictly increasing positive catalog function with coefficients
/// log-uniform in `[0.1, 10]`.
pub fn sample_increasing<R: Rng + ?Sized>(rng: &mut R) -> FunctionSpec {
    let family = rng.gen_range(0..4);
    let degree = rng.gen_range(1..=3);
    let mut coeffs = |n: usize| -> Vec<f64> { (0..n).map(|_| log_uniform(rng, COEFF_LO, COEFF_HI)).collect() };
    match family {
        0 => FunctionSpec::poly(coeffs(degree + 1)),
        1 => {
            let v = coeffs(2);
            FunctionSpec::affine(v[0], v[1])
        }
        2 => FunctionSpec::exp(coeffs(1)[0]),
        _ => FunctionSpec::exppoly(coeffs(degree.min(2) + 1)),
    }
}

/// Function pair and interval of one comparison trial; depends only on
/// `(seed, trial)`.
pub fn sample_trial(seed: u64, trial: u64) -> (FunctionSpec, FunctionSpec, f64, f64) {
    let mut rng = trial_rng(seed, trial);
    let f = sample_increasing(&mut rng);
    let g = sample_increasing(&mut rng);
    let len = SAMPLE_LENGTHS[rng.gen_range(0..SAMPLE_LENGTHS.len())];
    (f, g, 0.0, len)
}

/// Middle term of one refinement; no validation of `f` and `g`.
pub fn middle_term(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64, spec: &MeanSpec, kind: ChainKind) -> Result<f64> {
    match kind {
        ChainKind::Mean => mean_middle(f, g, a, b, Middle::Spec(spec)),
        ChainKind::LogDerivative => logderiv_middle(f, g, a, b, Middle::Spec(spec)),
    }
}

/// Compares the middle terms of two refinements over `trials` sampled
/// function pairs on intervals `[0, L]`, `L ∈ {0.5, 1, 2}`.
///
/// Stops early once both strict directions have been witnessed.
pub fn compare_generalizations(spec_a: &MeanSpec, spec_b: &MeanSpec, kind: ChainKind, trials: usize, seed: u64) -> OrderVerdict {
    let mut a_below: Option<ComparisonWitness> = None;
    let mut b_below: Option<ComparisonWitness> = None;
    let (mut n_a, mut n_b, mut ties, mut failures, mut run) = (0, 0, 0, 0, 0);
    for i in 0..trials as u64 {
        run += 1;
        let (f, g, a, b) = sample_trial(seed, i);
        let ma = middle_term(&f, &g, a, b, spec_a, kind);
        let mb = middle_term(&f, &g, a, b, spec_b, kind);
        let (Ok(ma), Ok(mb)) = (ma, mb) else {
            failures += 1;
            continue;
        };
        let gap = (ma - mb) / ma.abs().max(mb.abs());
        let witness = || ComparisonWitness { trial: i, f: f.clone(), g: g.clone(), a, b, middle_a: ma, middle_b: mb };
        if gap.abs() <= COMPARE_TIE_TOL {
            ties += 1;
        } else if gap < 0.0 {
            n_a += 1;
            a_below.get_or_insert_with(witness);
        } else {
            n_b += 1;
            b_below.get_or_insert_with(witness);
        }
        if a_below.is_some() && b_below.is_some() {
            break;
        }
    }
    let relation = match (&a_below, &b_below) {
        (Some(_), Some(_)) => Relation::Incomparable,
        (Some(_), None) => Relation::APrecB,
        (None, Some(_)) => Relation::BPrecA,
        (None, None) => Relation::Undetermined,
    };
    OrderVerdict {
        spec_a: spec_a.to_string(),
        spec_b: spec_b.to_string(),
        kind,
        relation,
        witnesses: a_below.into_iter().chain(b_below).collect(),
        trials,
        trials_run: run,
        a_below_b: n_a,
        b_below_a: n_b,
        ties,
        failures,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::means::{h_of, rado_reciprocal_conjugate, RadoOrder};

    fn m(s: &str) -> MeanSpec {
        s.parse().unwrap()
    }

    fn fs(s: &str) -> FunctionSpec {
        s.parse().unwrap()
    }

    #[test]
    fn envelope_values() {
        let r = integral_mean_chain(&fs("affine:0,1"), &fs("affine:1,-1"), 0.0, 1.0, &m("power:inf")).unwrap();
        assert!((r.left - 1.0 / 36.0).abs() < 1e-12, "{}", r.left);
        assert!((r.middle - 7.0 / 144.0).abs() < 1e-12, "{}", r.middle);
        assert!((r.right - 1.0 / 9.0).abs() < 1e-12, "{}", r.right);
        assert!(r.ordered);
    }

    #[test]
    fn equal_functions_saturate() {
        let f = fs("poly:1,2,0.5");
        for s in ["power:0", "log", "max"] {
            let r = integral_mean_chain(&f, &f, 0.0, 1.5, &m(s)).unwrap();
            assert!((r.middle - r.left).abs() < 1e-10 * r.left && (r.right - r.left).abs() < 1e-10 * r.left);
        }
        let e = fs("exp:1");
        let r = integral_logderiv_chain(&e, &e, 0.0, 1.0, &m("power:2")).unwrap();
        assert!((r.middle - r.left).abs() < 1e-10 * r.left && (r.right - r.left).abs() < 1e-10 * r.left);
    }

    #[test]
    fn logarithmic_mean_chain() {
        let r = integral_mean_chain(&fs("affine:1,1"), &fs("affine:2,-1"), 0.0, 1.0, &m("rado:-1")).unwrap();
        assert!((r.left - 4.694444444444444).abs() < 1e-12);
        assert!((r.middle - 4.69507793432815).abs() < 1e-11);
        assert!((r.right - 5.444444444444444).abs() < 1e-12);
        assert!(r.ordered);
    }

    #[test]
    fn exponential_logderiv_closed_form() {
        let (f, g) = (fs("exp:1"), fs("exp:2"));
        let r = integral_logderiv_chain(&f, &g, 0.0, 1.0, &m("power:1")).unwrap();
        let e3 = ((3f64).exp() - 1.0) / 3.0;
        let right = ((2f64).exp() - 1.0) / 2.0 * ((4f64).exp() - 1.0) / 4.0;
        assert!((r.left - e3 * e3).abs() < 1e-10 * r.left);
        assert!((r.middle - e3 * e3).abs() < 1e-10 * r.left);
        assert!((r.right - right).abs() < 1e-10 * right);
        let med = integral_logderiv_chain(&f, &g, 0.0, 1.0, &MeanSpec::Mediant).unwrap();
        let mean_form = integral_mean_chain(&f, &g, 0.0, 1.0, &m("power:1")).unwrap();
        assert!((med.middle - mean_form.middle).abs() < 1e-9 * med.middle);
    }

    #[test]
    fn mediant_has_no_mean_form() {
        let e = integral_mean_chain(&fs("exp:1"), &fs("exp:2"), 0.0, 1.0, &MeanSpec::Mediant).unwrap_err();
        assert!(matches!(e, Error::Parameter(_)));
    }

    #[test]
    fn logderiv_requires_monotone() {
        let e = integral_logderiv_chain(&fs("affine:2,-1"), &fs("exp:1"), 0.0, 1.0, &m("power:1")).unwrap_err();
        assert!(matches!(e, Error::Domain(_)));
    }

    #[test]
    fn product_identity() {
        let grid: Vec<f64> = (0..32).map(|i| i as f64 / 31.0).collect();
        let (f, g) = (fs("exp:1"), fs("exp:2"));
        let r = product_identity_check(&f, &g, 0.0, 1.0, ChainKind::LogDerivative, &m("power:1"), &grid).unwrap();
        assert!(r.holds, "{r:?}");
        let r = product_identity_check(&fs("poly:1,1,2"), &fs("exppoly:0,2"), 0.0, 1.0, ChainKind::LogDerivative, &m("rado:0"), &grid).unwrap();
        assert!(r.holds, "{r:?}");
        let r = product_identity_check(&fs("affine:1,2"), &fs("exp:-1"), 0.0, 1.0, ChainKind::Mean, &m("log"), &grid).unwrap();
        assert!(r.holds);
        let phi = logderiv_factors(&f, &g, 0.0, 1.0, &m("power:1")).unwrap();
        let bad = product_identity_check_with(|x| Ok(phi.phi1(x)), |x| Ok(1.01 * phi.phi2(x)), &f, &g, &grid).unwrap();
        assert!(!bad.holds);
        assert!((bad.max_rel_deviation - 0.01).abs() < 1e-9);
    }

    #[test]
    fn max_fails_when_log_derivatives_cross() {
        let f = fs("affine:0.3003589463642773,0.7557110016780809");
        let g = fs("poly:2.3067696638319086,0.15363542218721896,5.112532243715601");
        assert!(!log_derivatives_ordered(&f, &g, 0.0, 0.5));
        let r = integral_logderiv_chain(&f, &g, 0.0, 0.5, &m("power:inf")).unwrap();
        // independent brute force: middle 0.4929795313696, right 0.4926562604784
        assert!((r.middle - 0.4929795313696).abs() < 1e-10);
        assert!((r.right - 0.4926562604784).abs() < 1e-12);
        assert!(!r.ordered);
        let (f, g) = (fs("exp:0.5"), fs("poly:1,0,1"));
        assert!(!log_derivatives_ordered(&f, &g, 0.0, 2.0));
        assert!(log_derivatives_ordered(&fs("exp:2"), &g, 0.0, 2.0));
    }

    #[test]
    fn logderiv_factor_is_not_homogeneous() {
        let (f, g) = (fs("poly:1,2"), fs("exp:1.5"));
        let base = logderiv_factors(&f, &g, 0.0, 1.0, &m("power:2")).unwrap();
        let scaled = logderiv_factors(&f.scaled(2.0), &g.scaled(2.0), 0.0, 1.0, &m("power:2")).unwrap();
        let ratio = scaled.phi1(0.7) / base.phi1(0.7);
        assert!((ratio - 4.0).abs() / 4.0 > 1e-3);
    }

    #[test]
    fn h_forms_reproduce_catalog_means() {
        let (f, g) = (fs("poly:1,0.5,2"), fs("exp:0.8"));
        for kind in [ChainKind::Mean, ChainKind::LogDerivative] {
            let half = general_h_chain(&f, &g, 0.0, 1.0, |_| 0.5, kind).unwrap();
            let arith = integral_chain(&f, &g, 0.0, 1.0, &m("power:1"), kind).unwrap();
            assert!((half.middle - arith.middle).abs() < 1e-10 * arith.middle);
            let geo = general_h_chain(&f, &g, 0.0, 1.0, |t: f64| (0.5 * t).exp() / (1.0 + t.exp()), kind).unwrap();
            let g0 = integral_chain(&f, &g, 0.0, 1.0, &m("power:0"), kind).unwrap();
            assert!((geo.middle - g0.middle).abs() < 1e-10 * g0.middle);
            let q = m("power:2");
            let hq = general_h_chain(&f, &g, 0.0, 1.0, |t| h_of(&q, t).unwrap(), kind).unwrap();
            let q2 = integral_chain(&f, &g, 0.0, 1.0, &q, kind).unwrap();
            assert!((hq.middle - q2.middle).abs() < 1e-10 * q2.middle);
        }
    }

    #[test]
    fn invalid_h_is_rejected() {
        let e = general_h_chain(&fs("exp:1"), &fs("exp:2"), 0.0, 1.0, |_| 1.0, ChainKind::Mean).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
    }

    #[test]
    fn rado_reciprocal_conjugate_matches() {
        let (f, g) = (fs("affine:1,1"), fs("affine:2,-1"));
        for beta in [-3.0, -1.0, 0.0, 0.5, 2.0] {
            let order = RadoOrder::new(beta).unwrap();
            let spec = MeanSpec::Rado(order);
            let printed = integral(|t| Ok(rado_reciprocal_conjugate(order, f.eval(t), g.eval(t))?.powi(2)), 0.0, 1.0).unwrap();
            let conj = integral(
                |t| {
                    let (u, v) = (f.eval(t), g.eval(t));
                    Ok((u * v / eval_mean(&spec, u, v)?).powi(2))
                },
                0.0,
                1.0,
            )
            .unwrap();
            assert!((printed - conj).abs() < 1e-12 * conj, "beta={beta}");
        }
    }

    #[test]
    fn mean_scale_order() {
        let v = compare_generalizations(&m("power:0"), &m("power:2"), ChainKind::Mean, 100, 1);
        assert_eq!(v.relation, Relation::APrecB, "{v:?}");
        assert_eq!(v.b_below_a, 0);
    }

    #[test]
    fn sampling_is_reproducible() {
        assert_eq!(sample_trial(5, 17), sample_trial(5, 17));
        let a = compare_generalizations(&m("power:1"), &m("power:3"), ChainKind::Mean, 40, 9);
        let b = compare_generalizations(&m("power:1"), &m("power:3"), ChainKind::Mean, 40, 9);
        assert_eq!(a, b);
    }

    #[test]
    fn identical_specs_are_undetermined() {
        let v = compare_generalizations(&m("power:2"), &m("power:2"), ChainKind::LogDerivative, 20, 3);
        assert_eq!(v.relation, Relation::Undetermined);
        assert_eq!(v.ties, 20);
    }
}
