use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Order of a power mean on the extended line. The exceptional orders are
/// variants of their own; `Finite` never holds 0 or a non-finite value when
/// built through [`PowerOrder::new`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerOrder {
    NegInf,
    Geometric,
    Finite(f64),
    PosInf,
}

impl PowerOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() {
            return Err(Error::param("power order is NaN"));
        }
        Ok(if alpha == f64::NEG_INFINITY {
            PowerOrder::NegInf
        } else if alpha == f64::INFINITY {
            PowerOrder::PosInf
        } else if alpha == 0.0 {
            PowerOrder::Geometric
        } else {
            PowerOrder::Finite(alpha)
        })
    }

    pub fn value(self) -> f64 {
        match self {
            PowerOrder::NegInf => f64::NEG_INFINITY,
            PowerOrder::Geometric => 0.0,
            PowerOrder::Finite(a) => a,
            PowerOrder::PosInf => f64::INFINITY,
        }
    }

    pub fn negated(self) -> Self {
        match self {
            PowerOrder::NegInf => PowerOrder::PosInf,
            PowerOrder::PosInf => PowerOrder::NegInf,
            PowerOrder::Geometric => PowerOrder::Geometric,
            PowerOrder::Finite(a) => PowerOrder::Finite(-a),
        }
    }
}

/// Order of a Rado mean. `-1` is the logarithmic mean, `0` the identric one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadoOrder {
    NegInf,
    Logarithmic,
    Identric,
    Finite(f64),
    PosInf,
}

impl RadoOrder {
    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_nan() {
            return Err(Error::param("Rado order is NaN"));
        }
        Ok(if beta == f64::NEG_INFINITY {
            RadoOrder::NegInf
        } else if beta == f64::INFINITY {
            RadoOrder::PosInf
        } else if beta == -1.0 {
            RadoOrder::Logarithmic
        } else if beta == 0.0 {
            RadoOrder::Identric
        } else {
            RadoOrder::Finite(beta)
        })
    }

    pub fn value(self) -> f64 {
        match self {
            RadoOrder::NegInf => f64::NEG_INFINITY,
            RadoOrder::Logarithmic => -1.0,
            RadoOrder::Identric => 0.0,
            RadoOrder::Finite(b) => b,
            RadoOrder::PosInf => f64::INFINITY,
        }
    }
}

/// Nonnegative weight pair summing to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights {
    first: f64,
    second: f64,
}

impl Weights {
    pub const EQUAL: Weights = Weights {
        first: 0.5,
        second: 0.5,
    };

    pub fn new(first: f64, second: f64) -> Result<Self> {
        if !(first >= 0.0 && second >= 0.0) || !first.is_finite() || !second.is_finite() {
            return Err(Error::param(format!(
                "weights must be nonnegative, got ({first}, {second})"
            )));
        }
        if ((first + second) - 1.0).abs() > 1e-12 {
            return Err(Error::param(format!(
                "weights must sum to 1, got {first} + {second}"
            )));
        }
        Ok(Weights { first, second })
    }

    pub fn first(self) -> f64 {
        self.first
    }

    pub fn second(self) -> f64 {
        self.second
    }

    pub fn swapped(self) -> Self {
        Weights {
            first: self.second,
            second: self.first,
        }
    }
}

/// Generators of the shipped quasi-arithmetic means (equal weights).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Identity,
    Ln,
    Exp,
    /// `t -> t^p`, `p != 0`
    Power(f64),
}

/// Descriptor of a two-argument mean.
#[derive(Debug, Clone, PartialEq)]
pub enum MeanSpec {
    Power(PowerOrder),
    Rado(RadoOrder),
    Gini { u: f64, v: f64 },
    Lehmer(f64),
    WeightedArithmetic(Weights),
    WeightedGeometric(Weights),
    QuasiArithmetic(Generator),
    Logarithmic,
    Identric,
    Min,
    Max,
    /// Farey mediant; acts on fractions, not on reals.
    Mediant,
    Iterated(Box<MeanSpec>, Box<MeanSpec>),
}

impl MeanSpec {
    pub fn power(alpha: f64) -> Result<Self> {
        Ok(MeanSpec::Power(PowerOrder::new(alpha)?))
    }

    pub fn rado(beta: f64) -> Result<Self> {
        Ok(MeanSpec::Rado(RadoOrder::new(beta)?))
    }

    pub fn weighted_geometric(first: f64, second: f64) -> Result<Self> {
        Ok(MeanSpec::WeightedGeometric(Weights::new(first, second)?))
    }

    pub fn weighted_arithmetic(first: f64, second: f64) -> Result<Self> {
        Ok(MeanSpec::WeightedArithmetic(Weights::new(first, second)?))
    }

    pub fn iterated(m: MeanSpec, n: MeanSpec) -> Self {
        MeanSpec::Iterated(Box::new(m), Box::new(n))
    }

    /// The arithmetic-geometric mean as an iterated mean.
    pub fn agm() -> Self {
        MeanSpec::iterated(
            MeanSpec::Power(PowerOrder::Finite(1.0)),
            MeanSpec::Power(PowerOrder::Geometric),
        )
    }

    /// Whether the mean is symmetric by construction.
    pub fn is_symmetric(&self) -> bool {
        match self {
            MeanSpec::WeightedArithmetic(w) | MeanSpec::WeightedGeometric(w) => {
                w.first() == w.second()
            }
            MeanSpec::Iterated(m, n) => m.is_symmetric() && n.is_symmetric(),
            MeanSpec::Mediant => false,
            _ => true,
        }
    }
}

fn fmt_num(f: &mut fmt::Formatter<'_>, v: f64) -> fmt::Result {
    if v == f64::INFINITY {
        write!(f, "inf")
    } else if v == f64::NEG_INFINITY {
        write!(f, "-inf")
    } else {
        write!(f, "{v}")
    }
}

impl fmt::Display for MeanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanSpec::Power(o) => {
                write!(f, "power:")?;
                fmt_num(f, o.value())
            }
            MeanSpec::Rado(o) => {
                write!(f, "rado:")?;
                fmt_num(f, o.value())
            }
            MeanSpec::Gini { u, v } => write!(f, "gini:{u},{v}"),
            MeanSpec::Lehmer(u) => write!(f, "lehmer:{u}"),
            MeanSpec::WeightedArithmetic(w) => write!(f, "warith:{},{}", w.first(), w.second()),
            MeanSpec::WeightedGeometric(w) => write!(f, "wgeom:{},{}", w.first(), w.second()),
            MeanSpec::QuasiArithmetic(g) => match g {
                Generator::Identity => write!(f, "quasi:identity"),
                Generator::Ln => write!(f, "quasi:ln"),
                Generator::Exp => write!(f, "quasi:exp"),
                Generator::Power(p) => write!(f, "quasi:pow:{p}"),
            },
            MeanSpec::Logarithmic => write!(f, "log"),
            MeanSpec::Identric => write!(f, "identric"),
            MeanSpec::Min => write!(f, "min"),
            MeanSpec::Max => write!(f, "max"),
            MeanSpec::Mediant => write!(f, "mediant"),
            MeanSpec::Iterated(m, n) => write!(f, "iter:{m}|{n}"),
        }
    }
}

impl Serialize for MeanSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn parse_real(tok: &str) -> Result<f64> {
    match tok.trim() {
        "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
        "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
        t => t
            .parse::<f64>()
            .ok()
            .filter(|v| !v.is_nan())
            .ok_or_else(|| Error::param(format!("bad number '{t}'"))),
    }
}

fn parse_list(body: &str, n: usize, what: &str) -> Result<Vec<f64>> {
    let vals = body
        .split(',')
        .map(parse_real)
        .collect::<Result<Vec<_>>>()?;
    if vals.len() != n {
        return Err(Error::param(format!(
            "'{what}' expects {n} parameter(s), got '{body}'"
        )));
    }
    Ok(vals)
}

fn finite(v: f64, tok: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::param(format!("'{tok}' needs finite parameters")))
    }
}

impl FromStr for MeanSpec {
    type Err = Error;

    /// Case-insensitive parse of the canonical form (`power:2`, `rado:-1`,
    /// `gini:2,1`, `wgeom:0.7,0.3`, `quasi:ln`, `iter:warith:0.5,0.5|power:0`).
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (head, body) = match lower.split_once(':') {
            Some((h, b)) => (h, Some(b)),
            None => (lower.as_str(), None),
        };
        let need = || {
            body.filter(|b| !b.is_empty())
                .ok_or_else(|| Error::param(format!("'{head}' needs parameters")))
        };
        let no_params = |b: Option<&str>, spec: MeanSpec| match b {
            None => Ok(spec),
            Some(b) => Err(Error::param(format!("'{head}' takes no parameters, got '{b}'"))),
        };
        match head {
            "power" => MeanSpec::power(parse_list(need()?, 1, head)?[0]),
            "rado" => MeanSpec::rado(parse_list(need()?, 1, head)?[0]),
            "gini" => {
                let v = parse_list(need()?, 2, head)?;
                Ok(MeanSpec::Gini {
                    u: finite(v[0], head)?,
                    v: finite(v[1], head)?,
                })
            }
            "lehmer" => Ok(MeanSpec::Lehmer(finite(
                parse_list(need()?, 1, head)?[0],
                head,
            )?)),
            "wgeom" => {
                let v = parse_list(need()?, 2, head)?;
                MeanSpec::weighted_geometric(v[0], v[1])
            }
            "warith" => {
                let v = parse_list(need()?, 2, head)?;
                MeanSpec::weighted_arithmetic(v[0], v[1])
            }
            "quasi" => {
                let b = need()?;
                let g = match b {
                    "identity" | "id" => Generator::Identity,
                    "ln" | "log" => Generator::Ln,
                    "exp" => Generator::Exp,
                    other => match other.strip_prefix("pow:") {
                        Some(p) => {
                            let p = finite(parse_real(p)?, head)?;
                            if p == 0.0 {
                                return Err(Error::param("quasi generator pow:0 is not monotone"));
                            }
                            Generator::Power(p)
                        }
                        None => {
                            return Err(Error::param(format!("unknown generator '{other}'")))
                        }
                    },
                };
                Ok(MeanSpec::QuasiArithmetic(g))
            }
            "log" | "logarithmic" => no_params(body, MeanSpec::Logarithmic),
            "identric" => no_params(body, MeanSpec::Identric),
            "min" => no_params(body, MeanSpec::Min),
            "max" => no_params(body, MeanSpec::Max),
            "mediant" => no_params(body, MeanSpec::Mediant),
            "iter" => {
                let b = need()?;
                let (m, n) = b
                    .split_once('|')
                    .ok_or_else(|| Error::param(format!("'iter' needs 'M|N', got '{b}'")))?;
                Ok(MeanSpec::iterated(m.parse()?, n.parse()?))
            }
            other => Err(Error::param(format!("unknown mean '{other}'"))),
        }
    }
}
