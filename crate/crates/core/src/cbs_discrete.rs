//! Discrete Cauchy-Bunyakovsky refinements built from a mean and its
//! conjugate, the CDE conditions, the DFT uncertainty relation, the
//! reversed chain for time-like vectors, and the Jackson q-integral.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::chain::{ChainReport, DISCRETE_TOL};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::means::{eval_mean, MeanSpec};

/// Default relative threshold under which a DFT component counts as zero.
pub const DFT_ZERO_TOL: f64 = 1e-9;
/// Relative tolerance of the CDE condition checks.
pub const CDE_TOL: f64 = 1e-10;
/// Default tail tolerance of the Jackson sums.
pub const Q_TAIL_TOL: f64 = 1e-14;
/// Chain tolerance for q-integral chains.
pub const Q_CHAIN_TOL: f64 = 1e-10;
const Q_MAX_TERMS: u64 = 100_000_000;

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.is_empty() {
        return Err(Error::Degenerate("empty vectors".into()));
    }
    if let Some(v) = x.iter().chain(y).find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::domain(format!("entries must be positive and finite, got {v}")));
    }
    Ok(())
}

/// `M(x, y)` and `xy / M(x, y)`.
pub(crate) fn mean_and_conjugate(spec: &MeanSpec, x: f64, y: f64) -> Result<(f64, f64)> {
    let m = eval_mean(spec, x, y)?;
    let c = if m == 0.0 { 0.0 } else { x / m * y };
    Ok((m, c))
}

/// `(Σxy)² <= Σ M(x,y)² · Σ M*(x,y)² <= Σx² · Σy²`.
pub fn cbs_chain(x: &[f64], y: &[f64], spec: &MeanSpec) -> Result<ChainReport> {
    check_pair(x, y)?;
    let (mut xy, mut xx, mut yy, mut mm, mut cc) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (m, c) = mean_and_conjugate(spec, a, b)?;
        xy += a * b;
        xx += a * a;
        yy += b * b;
        mm += m * m;
        cc += c * c;
    }
    Ok(ChainReport::forward(xy * xy, mm * cc, xx * yy, DISCRETE_TOL))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdeViolation {
    /// 1: `f g = x²y²`, 2: degree-2 homogeneity, 3: the hybrid condition.
    pub condition: u8,
    pub x: f64,
    pub y: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdeReport {
    pub ok: bool,
    pub checked_pairs: usize,
    pub violations: Vec<CdeViolation>,
}

/// Scale factors used for the homogeneity condition.
pub const CDE_LAMBDAS: [f64; 4] = [1e-2, 0.37, 3.7, 1e2];

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CDE_TOL * a.abs().max(b.abs())
}

/// Checks the three CDE conditions for an arbitrary pair `(f, g)` on the
/// grid of `(x, y)` points:
///
/// 1. `f(x,y) g(x,y) = x²y²`
/// 2. `f(λx, λy) = λ² f(x,y)` for λ in [`CDE_LAMBDAS`]
/// 3. `y f(x,1) / (x f(y,1)) + x f(y,1) / (y f(x,1)) <= x/y + y/x`
pub fn cde_check_pair<F, G>(f: F, g: G, grid: &[(f64, f64)]) -> Result<CdeReport>
where
    F: Fn(f64, f64) -> Result<f64>,
    G: Fn(f64, f64) -> Result<f64>,
{
    if grid.is_empty() {
        return Err(Error::Precondition("CDE grid is empty".into()));
    }
    let mut violations = Vec::new();
    for &(x, y) in grid {
        if !(x > 0.0 && y > 0.0) {
            return Err(Error::domain(format!("CDE grid point ({x}, {y}) is not positive")));
        }
        let fxy = f(x, y)?;
        let prod = fxy * g(x, y)?;
        let target = x * x * y * y;
        if !close(prod, target) {
            violations.push(CdeViolation { condition: 1, x, y, lhs: prod, rhs: target });
        }
        for l in CDE_LAMBDAS {
            let scaled = f(l * x, l * y)?;
            if !close(scaled, l * l * fxy) {
                violations.push(CdeViolation { condition: 2, x, y, lhs: scaled, rhs: l * l * fxy });
            }
        }
        let (fx1, fy1) = (f(x, 1.0)?, f(y, 1.0)?);
        let r = y * fx1 / (x * fy1);
        let lhs = r + 1.0 / r;
        let rhs = x / y + y / x;
        if !(lhs <= rhs * (1.0 + CDE_TOL)) {
            violations.push(CdeViolation { condition: 3, x, y, lhs, rhs });
        }
    }
    Ok(CdeReport { ok: violations.is_empty(), checked_pairs: grid.len(), violations })
}

/// CDE conditions for `f = M²`, `g = M*²`.
pub fn cde_check(spec: &MeanSpec, grid: &[(f64, f64)]) -> Result<CdeReport> {
    cde_check_pair(
        |x, y| Ok(eval_mean(spec, x, y)?.powi(2)),
        |x, y| Ok(mean_and_conjugate(spec, x, y)?.1.powi(2)),
        grid,
    )
}

/// `n × n` log-spaced grid on `[lo, hi]²`.
pub fn log_grid_pairs(lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let pts = crate::sampling::log_grid(lo, hi, n);
    pts.iter().flat_map(|&x| pts.iter().map(move |&y| (x, y))).collect()
}

/// `b_j = n^{-1/2} Σ_k a_k w^{-jk}`, `w = e^{2πi/n}`, by the direct sum.
pub fn dft(a: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    if n == 0 {
        return vec![];
    }
    let roots: Vec<Complex64> = (0..n)
        .map(|m| Complex64::from_polar(1.0, -2.0 * PI * m as f64 / n as f64))
        .collect();
    let norm = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|j| {
            let s: Complex64 = a.iter().enumerate().map(|(k, &ak)| ak * roots[(j * k) % n]).sum();
            s * norm
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub n: usize,
    #[serde(rename = "A")]
    pub a_count: usize,
    #[serde(rename = "B")]
    pub b_count: usize,
    pub product: usize,
    pub holds: bool,
    pub equality: bool,
}

fn support(v: &[Complex64], zero_tol: f64) -> usize {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    v.iter().filter(|z| z.norm() > zero_tol * max).count()
}

/// Support sizes of `a` and its DFT; the relation states `A·B >= n`.
pub fn dft_uncertainty(a: &[Complex64], zero_tol: f64) -> Result<UncertaintyReport> {
    if a.is_empty() {
        return Err(Error::Degenerate("empty vector".into()));
    }
    if a.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::domain("vector has non-finite entries"));
    }
    if a.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::Degenerate("vector is identically zero".into()));
    }
    let b = dft(a);
    let n = a.len();
    let a_count = support(a, zero_tol);
    let b_count = support(&b, zero_tol);
    let product = a_count * b_count;
    Ok(UncertaintyReport {
        n,
        a_count,
        b_count,
        product,
        holds: product >= n,
        equality: product == n,
    })
}

/// Reversed chain for time-like `(x0, x)`, `(y0, y)`:
/// `(x0y0 - Σxy)² >= (x0y0 - √A)² >= (x0² - Σx²)(y0² - Σy²)` with `A` the
/// middle term of [`cbs_chain`]. Spatial parts must be positive.
pub fn lorentz_chain(x0: f64, x: &[f64], y0: f64, y: &[f64], spec: &MeanSpec) -> Result<ChainReport> {
    check_pair(x, y)?;
    if !(x0 > 0.0 && y0 > 0.0 && x0.is_finite() && y0.is_finite()) {
        return Err(Error::domain(format!("time components must be positive, got ({x0}, {y0})")));
    }
    let xx: f64 = x.iter().map(|v| v * v).sum();
    let yy: f64 = y.iter().map(|v| v * v).sum();
    if x0 * x0 < xx || y0 * y0 < yy {
        return Err(Error::Precondition(format!(
            "vectors are not time-like: x0² = {}, Σx² = {xx}; y0² = {}, Σy² = {yy}",
            x0 * x0,
            y0 * y0
        )));
    }
    let inner = cbs_chain(x, y, spec)?;
    let xy = inner.left.sqrt();
    let t = x0 * y0;
    let left = (t - xy).powi(2);
    let middle = (t - inner.middle.sqrt()).powi(2);
    let right = (x0 * x0 - xx) * (y0 * y0 - yy);
    Ok(ChainReport::reversed(left, middle, right, DISCRETE_TOL))
}

/// `(1 - q) Σ_k h(q^k) q^k`, stopped once `bound · q^k < tail_tol`, which
/// bounds the remaining tail when `|h| <= bound` on `(0, 1]`.
pub fn jackson_sum<H>(mut h: H, q: f64, bound: f64, tail_tol: f64) -> Result<f64>
where
    H: FnMut(f64) -> Result<f64>,
{
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::param(format!("q must lie in (0, 1), got {q}")));
    }
    if !(tail_tol > 0.0) {
        return Err(Error::param(format!("tail tolerance must be positive, got {tail_tol}")));
    }
    if !(bound >= 0.0 && bound.is_finite()) {
        return Err(Error::domain(format!("integrand bound {bound} is not finite")));
    }
    let mut sum = 0.0;
    for k in 0..Q_MAX_TERMS {
        let t = q.powf(k as f64);
        if bound * t < tail_tol {
            return Ok((1.0 - q) * sum);
        }
        sum += h(t)? * t;
    }
    Err(Error::NonConvergence(format!("Jackson sum with q = {q} needs more than {Q_MAX_TERMS} terms")))
}

/// Jackson q-integral of `f` over `[0, 1]`.
pub fn q_jackson_integral(f: &FunctionSpec, q: f64, tail_tol: f64) -> Result<f64> {
    jackson_sum(|t| Ok(f.eval(t)), q, f.sup_unit()?, tail_tol)
}

/// Mean chain with Jackson q-integrals over `[0, 1]` in place of sums.
pub fn q_cbs_chain(
    f: &FunctionSpec,
    g: &FunctionSpec,
    q: f64,
    spec: &MeanSpec,
    tail_tol: f64,
) -> Result<ChainReport> {
    f.check_positive(0.0, 1.0)?;
    g.check_positive(0.0, 1.0)?;
    let (bf, bg) = (f.sup_unit()?, g.sup_unit()?);
    let top = bf.max(bg);
    let fg = jackson_sum(|t| Ok(f.eval(t) * g.eval(t)), q, bf * bg, tail_tol)?;
    let ff = jackson_sum(|t| Ok(f.eval(t).powi(2)), q, bf * bf, tail_tol)?;
    let gg = jackson_sum(|t| Ok(g.eval(t).powi(2)), q, bg * bg, tail_tol)?;
    let mm = jackson_sum(|t| Ok(eval_mean(spec, f.eval(t), g.eval(t))?.powi(2)), q, top * top, tail_tol)?;
    let cc = jackson_sum(
        |t| Ok(mean_and_conjugate(spec, f.eval(t), g.eval(t))?.1.powi(2)),
        q,
        top * top,
        tail_tol,
    )?;
    Ok(ChainReport::forward(fg * fg, mm * cc, ff * gg, Q_CHAIN_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainDirection;

    fn m(s: &str) -> MeanSpec {
        s.parse().unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn milne_example() {
        let r = cbs_chain(&[1.0, 2.0], &[2.0, 1.0], &m("power:2")).unwrap();
        assert_eq!(r.left, 16.0);
        assert!((r.middle - 16.0).abs() < 1e-13);
        assert_eq!(r.right, 25.0);
        assert!(r.ordered);
    }

    #[test]
    fn equal_vectors_collapse() {
        let v = [0.3, 2.0, 7.5];
        for s in ["power:2", "log", "min", "wgeom:0.7,0.3", "rado:0"] {
            let r = cbs_chain(&v, &v, &m(s)).unwrap();
            assert!((r.left - r.middle).abs() < 1e-12 * r.left && (r.right - r.middle).abs() < 1e-12 * r.left);
        }
    }

    #[test]
    fn callebaut_example() {
        let r = cbs_chain(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0], &m("wgeom:0.75,0.25")).unwrap();
        assert!((r.middle - 119.42562584220407).abs() < 1e-11);
        assert_eq!((r.left, r.right), (100.0, 196.0));
    }

    #[test]
    fn chain_errors() {
        assert!(matches!(cbs_chain(&[1.0], &[1.0, 2.0], &m("power:1")), Err(Error::LengthMismatch { .. })));
        assert!(matches!(cbs_chain(&[0.0], &[1.0], &m("power:1")), Err(Error::Domain(_))));
    }

    #[test]
    fn cde_positive_cases() {
        let grid = log_grid_pairs(1e-2, 1e2, 50);
        assert!(cde_check(&m("power:2"), &grid).unwrap().ok);
        assert!(cde_check(&m("min"), &grid).unwrap().ok);
        assert!(cde_check(&m("wgeom:0.8,0.2"), &grid).unwrap().ok);
    }

    #[test]
    fn cde_negative_controls() {
        let grid = log_grid_pairs(0.1, 10.0, 8);
        // the pair from the specification keeps f g = x²y² but breaks homogeneity
        let r = cde_check_pair(|x, y| Ok(1.1 * x * x * y * y), |_, _| Ok(1.0 / 1.1), &grid).unwrap();
        assert!(r.violations.iter().all(|v| v.condition != 1));
        assert!(r.violations.iter().any(|v| v.condition == 2));
        let q = m("power:2");
        let r = cde_check_pair(
            |x, y| Ok(1.1 * eval_mean(&q, x, y)?.powi(2)),
            |x, y| Ok(eval_mean(&m("power:-2"), x, y)?.powi(2)),
            &grid,
        )
        .unwrap();
        assert!(r.violations.iter().any(|v| v.condition == 1));
        // quasi:exp is not homogeneous
        assert!(cde_check(&m("quasi:exp"), &grid).unwrap().violations.iter().any(|v| v.condition == 2));
    }

    #[test]
    fn dft_examples() {
        let r = dft_uncertainty(&[c(1.0), c(0.0), c(0.0), c(0.0)], DFT_ZERO_TOL).unwrap();
        assert_eq!((r.a_count, r.b_count, r.product), (1, 4, 4));
        assert!(r.equality);
        let r = dft_uncertainty(&[c(1.0); 4], DFT_ZERO_TOL).unwrap();
        assert_eq!((r.a_count, r.b_count), (4, 1));
        assert!(r.equality);
        let r = dft_uncertainty(&[c(1.0), c(1.0), c(0.0), c(0.0)], DFT_ZERO_TOL).unwrap();
        assert_eq!((r.a_count, r.b_count, r.product), (2, 3, 6));
        assert!(r.holds && !r.equality);
        assert!(dft_uncertainty(&[c(0.0); 3], DFT_ZERO_TOL).is_err());
    }

    #[test]
    fn dft_of_delta_is_flat() {
        let b = dft(&[c(1.0), c(0.0), c(0.0)]);
        for z in b {
            assert!((z - c(1.0 / 3f64.sqrt())).norm() < 1e-15);
        }
    }

    #[test]
    fn parseval() {
        let a: Vec<Complex64> = (0..9).map(|k| Complex64::new((k as f64).sin(), (k * k) as f64 * 0.1)).collect();
        let b = dft(&a);
        let ea: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        let eb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
        assert!((ea - eb).abs() < 1e-12 * ea);
    }

    #[test]
    fn lorentz_examples() {
        let r = lorentz_chain(2.0, &[1.0, 1.0], 3.0, &[1.0, 2.0], &m("power:2")).unwrap();
        assert_eq!(r.direction, ChainDirection::Reversed);
        assert!((r.left - 9.0).abs() < 1e-13);
        assert!((r.middle - 8.900552490403945).abs() < 1e-12);
        assert!((r.right - 8.0).abs() < 1e-13);
        assert!(r.ordered);
        let r = lorentz_chain(3.0, &[1.0, 2.0], 3.0, &[1.0, 2.0], &m("log")).unwrap();
        assert!((r.left - 16.0).abs() < 1e-12 && (r.middle - 16.0).abs() < 1e-12 && (r.right - 16.0).abs() < 1e-12);
        let base = lorentz_chain(2.0, &[1.0, 1.0], 3.0, &[1.0, 2.0], &m("power:2")).unwrap();
        let s = lorentz_chain(4.0, &[2.0, 2.0], 6.0, &[2.0, 4.0], &m("power:2")).unwrap();
        assert!((s.middle - 16.0 * base.middle).abs() < 1e-11);
        assert!(matches!(
            lorentz_chain(1.0, &[1.0, 1.0], 3.0, &[1.0, 2.0], &m("power:2")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn jackson_examples() {
        for q in [0.1, 0.5, 0.9] {
            let v = q_jackson_integral(&FunctionSpec::poly(vec![1.0]), q, 1e-15).unwrap();
            assert!((v - 1.0).abs() < 1e-14);
        }
        let v = q_jackson_integral(&FunctionSpec::pow(1.0), 0.5, 1e-15).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
        let v = q_jackson_integral(&FunctionSpec::pow(2.0), 0.999, 1e-12).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-2);
        assert!(q_jackson_integral(&FunctionSpec::pow(-0.5), 0.5, 1e-12).is_err());
        assert!(q_jackson_integral(&FunctionSpec::pow(1.0), 1.0, 1e-12).is_err());
    }

    #[test]
    fn q_chain_examples() {
        let one = FunctionSpec::poly(vec![1.0]);
        let t = FunctionSpec::pow(1.0);
        let r = q_cbs_chain(&one, &t, 0.5, &m("power:2"), Q_TAIL_TOL).unwrap();
        assert!((r.left - 4.0 / 9.0).abs() < 1e-14);
        assert!((r.middle - 0.4847126400562729).abs() < 1e-14);
        assert!((r.right - 4.0 / 7.0).abs() < 1e-14);
        assert!(r.ordered);
        let r = q_cbs_chain(&t, &t, 0.3, &m("log"), Q_TAIL_TOL).unwrap();
        assert!((r.left - r.middle).abs() < 1e-14 && (r.right - r.middle).abs() < 1e-14);
    }
}
