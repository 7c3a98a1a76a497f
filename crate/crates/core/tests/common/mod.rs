#![allow(dead_code)]

use cbs_means::sampling::{log_uniform, LOG_UNIFORM_HI, LOG_UNIFORM_LO};
use cbs_means::MeanSpec;
use rand::Rng;

/// Unbiased, homogeneous means that are monotone in both arguments.
pub const CATALOG: &[&str] = &[
    "power:-inf", "power:-3", "power:-1", "power:0", "power:0.5", "power:1", "power:2", "power:inf",
    "rado:-3", "rado:-1", "rado:-0.5", "rado:0", "rado:2.5", "log", "identric", "min", "max",
    "gini:1,-1", "gini:0.5,-0.5", "lehmer:-1", "lehmer:-0.5", "lehmer:0", "wgeom:0.7,0.3", "wgeom:0.75,0.25",
    "warith:0.7,0.3", "iter:warith:0.5,0.5|power:0",
];

pub fn spec(s: &str) -> MeanSpec {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn catalog() -> Vec<MeanSpec> {
    CATALOG.iter().map(|s| spec(s)).collect()
}

pub fn positive_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| log_uniform(rng, LOG_UNIFORM_LO, LOG_UNIFORM_HI)).collect()
}

/// Relative deviation `|a - b| / max(|b|, tiny)`.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
