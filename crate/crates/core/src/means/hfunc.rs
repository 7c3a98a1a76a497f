use serde::Serialize;

use super::eval::eval_mean;
use super::spec::MeanSpec;
use crate::error::{Error, Result};

/// Relative tolerance of the h-function checks.
pub const H_TOL: f64 = 1e-10;

/// `h(t) = M(1, e^t) / (1 + e^t)`, so that `M(x, y) = (x + y) h(ln(y/x))`.
///
/// Evaluated through homogeneity as `M(e^{-t}, 1) / (1 + e^{-t})` for
/// `t > 0`, which stays finite for any `t`.
pub fn h_of(spec: &MeanSpec, t: f64) -> Result<f64> {
    if t.is_nan() {
        return Err(Error::domain("h argument is NaN"));
    }
    let u = (-t.abs()).exp();
    let m = if t >= 0.0 {
        eval_mean(spec, u, 1.0)?
    } else {
        eval_mean(spec, 1.0, u)?
    };
    Ok(m / (1.0 + u))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioViolation {
    pub t1: f64,
    pub t2: f64,
    pub ratio: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvennessViolation {
    pub t: f64,
    pub h_pos: f64,
    pub h_neg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HFunctionCheck {
    pub h0_value: f64,
    pub h0_ok: bool,
    pub evenness_violations: Vec<EvennessViolation>,
    pub ratio_violations: Vec<RatioViolation>,
    pub grid: Vec<f64>,
}

impl HFunctionCheck {
    pub fn is_valid(&self) -> bool {
        self.h0_ok && self.evenness_violations.is_empty() && self.ratio_violations.is_empty()
    }
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Precondition("t grid is empty".into()));
    }
    if grid.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::Precondition("t grid must be finite and nonnegative".into()));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("t grid must be sorted ascending".into()));
    }
    Ok(())
}

/// Checks `h(0) = 1/2`, evenness, and for every `t1 <= t2` of the grid
///
/// `(1 + e^{-t2}) / (1 + e^{-t1}) <= h(t1) / h(t2) <= e^{t2 - t1} (1 + e^{-t2}) / (1 + e^{-t1})`.
pub fn check_h_function<H>(h: H, grid: &[f64]) -> Result<HFunctionCheck>
where
    H: Fn(f64) -> Result<f64>,
{
    validate_grid(grid)?;
    let h0 = h(0.0)?;
    let h0_ok = (h0 - 0.5).abs() <= H_TOL;

    let mut pos = Vec::with_capacity(grid.len());
    let mut evenness_violations = Vec::new();
    for &t in grid {
        let hp = h(t)?;
        let hn = h(-t)?;
        if !((hp - hn).abs() <= H_TOL * hp.abs().max(hn.abs())) {
            evenness_violations.push(EvennessViolation {
                t,
                h_pos: hp,
                h_neg: hn,
            });
        }
        pos.push(hp);
    }

    let mut ratio_violations = Vec::new();
    for i in 0..grid.len() {
        for j in i..grid.len() {
            let (t1, t2) = (grid[i], grid[j]);
            let ratio = pos[i] / pos[j];
            let lower = (1.0 + (-t2).exp()) / (1.0 + (-t1).exp());
            let upper = (t2 - t1).exp() * lower;
            if !(ratio >= lower * (1.0 - H_TOL) && ratio <= upper * (1.0 + H_TOL)) {
                ratio_violations.push(RatioViolation {
                    t1,
                    t2,
                    ratio,
                    lower_bound: lower,
                    upper_bound: upper,
                });
            }
        }
    }

    Ok(HFunctionCheck {
        h0_value: h0,
        h0_ok,
        evenness_violations,
        ratio_violations,
        grid: grid.to_vec(),
    })
}

/// [`check_h_function`] applied to the h-function of `spec`.
pub fn check_h_conditions(spec: &MeanSpec, grid: &[f64]) -> Result<HFunctionCheck> {
    check_h_function(|t| h_of(spec, t), grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MeanSpec {
        s.parse().unwrap()
    }

    const GRID: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

    #[test]
    fn h_at_zero_is_half() {
        for s in ["power:2", "power:0", "log", "identric", "min", "max", "rado:3", "gini:1,-1"] {
            assert!((h_of(&m(s), 0.0).unwrap() - 0.5).abs() < 1e-15, "{s}");
        }
    }

    #[test]
    fn arithmetic_h_is_constant() {
        for t in [-30.0, -2.0, 0.3, 5.0, 800.0] {
            assert!((h_of(&m("power:1"), t).unwrap() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn min_h() {
        let v = h_of(&m("min"), 2.0).unwrap();
        assert!((v - 1.0 / (1.0 + 2f64.exp())).abs() < 1e-16);
    }

    #[test]
    fn valid_means_have_no_violations() {
        for s in ["power:0", "power:1", "power:2", "power:-3", "min", "max", "log", "rado:0"] {
            let c = check_h_conditions(&m(s), &GRID).unwrap();
            assert!(c.is_valid(), "{s}: {c:?}");
        }
    }

    #[test]
    fn constant_one_is_rejected() {
        let c = check_h_function(|_| Ok(1.0), &GRID).unwrap();
        assert!(!c.h0_ok);
        assert_eq!(c.h0_value, 1.0);
    }

    #[test]
    fn asymmetric_mean_breaks_evenness() {
        let c = check_h_conditions(&m("wgeom:0.7,0.3"), &GRID).unwrap();
        assert!(!c.evenness_violations.is_empty());
    }

    #[test]
    fn steep_h_breaks_ratio_bound() {
        // h(t) = e^{-2|t|}/2 decays faster than the lower bound allows
        let c = check_h_function(|t| Ok(0.5 * (-2.0 * t.abs()).exp()), &GRID).unwrap();
        assert!(c.h0_ok);
        assert!(!c.ratio_violations.is_empty());
    }

    #[test]
    fn bad_grids() {
        assert!(check_h_conditions(&m("power:1"), &[]).is_err());
        assert!(check_h_conditions(&m("power:1"), &[1.0, 0.5]).is_err());
        assert!(check_h_conditions(&m("power:1"), &[-1.0]).is_err());
    }
}
