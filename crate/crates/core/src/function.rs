//! Catalog of test functions with analytic derivatives.
//!
//! Grammar: `poly:c0,c1,...` (Σ cᵢ tⁱ), `exp:k` (e^{kt}), `pow:p` (tᵖ),
//! `affine:c0,c1`, `exppoly:c0,c1,...` (exp of a polynomial). An optional
//! `λ*` prefix scales the function, e.g. `2*exp:1`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of interior points used by the sampling validators.
pub const VALIDATION_POINTS: usize = 257;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Poly(Vec<f64>),
    Exp(f64),
    Pow(f64),
    Affine(f64, f64),
    ExpPoly(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub family: Family,
    pub scale: f64,
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * t + ci)
}

fn horner_deriv(c: &[f64], t: f64) -> f64 {
    c.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (i, &ci)| acc * t + i as f64 * ci)
}

impl FunctionSpec {
    pub fn new(family: Family) -> Self {
        FunctionSpec { family, scale: 1.0 }
    }

    pub fn poly(c: Vec<f64>) -> Self {
        Self::new(Family::Poly(c))
    }

    pub fn exp(k: f64) -> Self {
        Self::new(Family::Exp(k))
    }

    pub fn pow(p: f64) -> Self {
        Self::new(Family::Pow(p))
    }

    pub fn affine(c0: f64, c1: f64) -> Self {
        Self::new(Family::Affine(c0, c1))
    }

    pub fn exppoly(c: Vec<f64>) -> Self {
        Self::new(Family::ExpPoly(c))
    }

    /// `λ f`
    pub fn scaled(&self, lambda: f64) -> Self {
        FunctionSpec {
            family: self.family.clone(),
            scale: self.scale * lambda,
        }
    }

    fn raw(&self, t: f64) -> f64 {
        match &self.family {
            Family::Poly(c) => horner(c, t),
            Family::Exp(k) => (k * t).exp(),
            Family::Pow(p) => t.powf(*p),
            Family::Affine(c0, c1) => c0 + c1 * t,
            Family::ExpPoly(c) => horner(c, t).exp(),
        }
    }

    fn raw_deriv(&self, t: f64) -> f64 {
        match &self.family {
            Family::Poly(c) => horner_deriv(c, t),
            Family::Exp(k) => k * (k * t).exp(),
            Family::Pow(p) => {
                if *p == 0.0 {
                    0.0
                } else {
                    p * t.powf(p - 1.0)
                }
            }
            Family::Affine(_, c1) => *c1,
            Family::ExpPoly(c) => horner_deriv(c, t) * horner(c, t).exp(),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.scale * self.raw(t)
    }

    pub fn deriv(&self, t: f64) -> f64 {
        self.scale * self.raw_deriv(t)
    }

    /// `f'/f`, taken from the exponent directly for the exponential families.
    pub fn log_deriv(&self, t: f64) -> f64 {
        match &self.family {
            Family::Exp(k) => *k,
            Family::ExpPoly(c) => horner_deriv(c, t),
            Family::Pow(p) => p / t,
            _ => self.raw_deriv(t) / self.raw(t),
        }
    }

    /// `ln f`, without overflow for the exponential families.
    pub fn ln_eval(&self, t: f64) -> f64 {
        let s = self.scale.ln();
        match &self.family {
            Family::Exp(k) => s + k * t,
            Family::ExpPoly(c) => s + horner(c, t),
            _ => self.eval(t).ln(),
        }
    }

    /// An upper bound of `|f|` on `(0, 1]`.
    pub fn sup_unit(&self) -> Result<f64> {
        let s = self.scale.abs();
        let abs_sum = |c: &[f64]| c.iter().map(|v| v.abs()).sum::<f64>();
        Ok(match &self.family {
            Family::Poly(c) => s * abs_sum(c),
            Family::Affine(c0, c1) => s * (c0.abs() + c1.abs()),
            Family::Exp(k) => s * k.max(0.0).exp(),
            Family::ExpPoly(c) => {
                let top = c.first().copied().unwrap_or(0.0)
                    + c.iter().skip(1).map(|v| v.max(0.0)).sum::<f64>();
                s * top.exp()
            }
            Family::Pow(p) if *p >= 0.0 => s,
            Family::Pow(p) => {
                return Err(Error::domain(format!("t^{p} is unbounded on (0, 1]")));
            }
        })
    }

    fn sample_points(a: f64, b: f64) -> impl Iterator<Item = f64> {
        let n = VALIDATION_POINTS;
        (1..=n).map(move |i| a + (b - a) * i as f64 / (n + 1) as f64)
    }

    /// Checks `f > 0` on a dense interior sample of `[a, b]` and finiteness
    /// at the endpoints.
    pub fn check_positive(&self, a: f64, b: f64) -> Result<()> {
        check_interval(a, b)?;
        for t in Self::sample_points(a, b).chain([a, b]) {
            let v = self.eval(t);
            if !v.is_finite() {
                return Err(Error::domain(format!("{self} is not finite at {t}")));
            }
            if t > a && t < b && !(v > 0.0) {
                return Err(Error::domain(format!("{self} is not positive at {t}")));
            }
            if v < 0.0 {
                return Err(Error::domain(format!("{self} is negative at {t}")));
            }
        }
        Ok(())
    }

    /// Checks `f' >= 0` on a dense interior sample of `[a, b]`.
    pub fn check_nondecreasing(&self, a: f64, b: f64) -> Result<()> {
        check_interval(a, b)?;
        for t in Self::sample_points(a, b) {
            let d = self.deriv(t);
            if !(d >= 0.0) {
                return Err(Error::domain(format!("{self} has derivative {d} < 0 at {t}")));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(Error::domain(format!("interval [{a}, {b}] is empty or unbounded")))
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, c: &[f64]) -> fmt::Result {
    for (i, v) in c.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale != 1.0 {
            write!(f, "{}*", self.scale)?;
        }
        match &self.family {
            Family::Poly(c) => {
                write!(f, "poly:")?;
                write_list(f, c)
            }
            Family::Exp(k) => write!(f, "exp:{k}"),
            Family::Pow(p) => write!(f, "pow:{p}"),
            Family::Affine(c0, c1) => write!(f, "affine:{c0},{c1}"),
            Family::ExpPoly(c) => {
                write!(f, "exppoly:")?;
                write_list(f, c)
            }
        }
    }
}

impl Serialize for FunctionSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn parse_coeffs(body: &str, head: &str) -> Result<Vec<f64>> {
    body.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::param(format!("'{tok}' is not a finite number in '{head}'")))
        })
        .collect()
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (scale, rest) = match lower.split_once('*') {
            Some((l, r)) => {
                let v: f64 = l
                    .trim()
                    .parse()
                    .ok()
                    .filter(|v: &f64| v.is_finite() && *v > 0.0)
                    .ok_or_else(|| Error::param(format!("'{l}' is not a positive scale")))?;
                (v, r.trim())
            }
            None => (1.0, lower.as_str()),
        };
        let (head, body) = rest
            .split_once(':')
            .ok_or_else(|| Error::param(format!("'{rest}' lacks ':' and parameters")))?;
        let c = parse_coeffs(body, head)?;
        let one = |c: &[f64]| {
            if c.len() == 1 {
                Ok(c[0])
            } else {
                Err(Error::param(format!("'{head}' takes one parameter, got {}", c.len())))
            }
        };
        let family = match head {
            "poly" => Family::Poly(c),
            "exppoly" => Family::ExpPoly(c),
            "exp" => Family::Exp(one(&c)?),
            "pow" => Family::Pow(one(&c)?),
            "affine" => {
                if c.len() != 2 {
                    return Err(Error::param(format!("'affine' takes two parameters, got {}", c.len())));
                }
                Family::Affine(c[0], c[1])
            }
            other => return Err(Error::param(format!("unknown function family '{other}'"))),
        };
        Ok(FunctionSpec { family, scale })
    }
}
