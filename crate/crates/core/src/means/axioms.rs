use serde::Serialize;

use super::eval::eval_mean;
use super::spec::MeanSpec;
use crate::sampling::{log_uniform, trial_rng, LOG_UNIFORM_HI, LOG_UNIFORM_LO};

/// Relative tolerance of every axiom check.
pub const AXIOM_TOL: f64 = 1e-10;
/// Relative size of the monotonicity perturbation.
pub const PERTURBATION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// Worst sample seen for one axiom. `sample` is the trial index; the
/// sample is regenerated by `trial_rng(seed, sample)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub sample: u64,
    pub x: f64,
    pub y: f64,
    /// `λ` for homogeneity, the perturbed argument for monotonicity.
    pub param: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomOutcome {
    pub status: AxiomStatus,
    pub worst: Option<Witness>,
}

impl AxiomOutcome {
    fn not_applicable() -> Self {
        AxiomOutcome {
            status: AxiomStatus::NotApplicable,
            worst: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != AxiomStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub spec: String,
    pub unbiasedness: AxiomOutcome,
    pub homogeneity: AxiomOutcome,
    pub monotonicity: AxiomOutcome,
    pub symmetry: AxiomOutcome,
    pub intermediacy: AxiomOutcome,
    pub samples_used: usize,
    pub seed: u64,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        [
            &self.unbiasedness,
            &self.homogeneity,
            &self.monotonicity,
            &self.symmetry,
            &self.intermediacy,
        ]
        .iter()
        .all(|o| o.passed())
    }
}

#[derive(Default)]
struct Tracker {
    worst: Option<Witness>,
}

impl Tracker {
    fn offer(&mut self, w: Witness) {
        let replace = match &self.worst {
            None => true,
            Some(cur) => w.deviation > cur.deviation || (w.deviation.is_nan() && !cur.deviation.is_nan()),
        };
        if replace {
            self.worst = Some(w);
        }
    }

    fn finish(self) -> AxiomOutcome {
        let status = match &self.worst {
            Some(w) if !(w.deviation <= AXIOM_TOL) => AxiomStatus::Fail,
            _ => AxiomStatus::Pass,
        };
        AxiomOutcome {
            status,
            worst: self.worst,
        }
    }
}

fn rel_dev(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Samples `(x, y, λ)` log-uniformly in `[1e-3, 1e3]` and checks the mean
/// axioms at relative tolerance [`AXIOM_TOL`].
///
/// Monotonicity is tested as non-decrease when either argument grows by
/// [`PERTURBATION`] of itself. An evaluation error counts as an infinite
/// deviation for the axiom being checked.
pub fn check_axioms(spec: &MeanSpec, n_samples: usize, seed: u64) -> AxiomReport {
    if matches!(spec, MeanSpec::Mediant) {
        return AxiomReport {
            spec: spec.to_string(),
            unbiasedness: AxiomOutcome::not_applicable(),
            homogeneity: AxiomOutcome::not_applicable(),
            monotonicity: AxiomOutcome::not_applicable(),
            symmetry: AxiomOutcome::not_applicable(),
            intermediacy: AxiomOutcome::not_applicable(),
            samples_used: 0,
            seed,
        };
    }
    let eval = |x: f64, y: f64| eval_mean(spec, x, y).unwrap_or(f64::NAN);
    let mut unbiased = Tracker::default();
    let mut homogeneous = Tracker::default();
    let mut monotone = Tracker::default();
    let mut symmetric = Tracker::default();
    let mut intermediate = Tracker::default();

    for i in 0..n_samples as u64 {
        let mut r = trial_rng(seed, i);
        let x = log_uniform(&mut r, LOG_UNIFORM_LO, LOG_UNIFORM_HI);
        let y = log_uniform(&mut r, LOG_UNIFORM_LO, LOG_UNIFORM_HI);
        let lambda = log_uniform(&mut r, LOG_UNIFORM_LO, LOG_UNIFORM_HI);
        let dev = |d: f64| if d.is_nan() { f64::INFINITY } else { d };
        let mxy = eval(x, y);

        let mxx = eval(x, x);
        unbiased.offer(Witness {
            sample: i,
            x,
            y: x,
            param: None,
            lhs: mxx,
            rhs: x,
            deviation: dev(rel_dev(mxx, x)),
        });

        let scaled = eval(lambda * x, lambda * y);
        homogeneous.offer(Witness {
            sample: i,
            x,
            y,
            param: Some(lambda),
            lhs: scaled,
            rhs: lambda * mxy,
            deviation: dev(rel_dev(scaled, lambda * mxy)),
        });

        let xp = x * (1.0 + PERTURBATION);
        let yp = y * (1.0 + PERTURBATION);
        for (bumped, moved) in [(eval(xp, y), xp), (eval(x, yp), yp)] {
            let drop = (mxy - bumped) / mxy.abs().max(bumped.abs());
            monotone.offer(Witness {
                sample: i,
                x,
                y,
                param: Some(moved),
                lhs: bumped,
                rhs: mxy,
                deviation: dev(drop.max(0.0)),
            });
        }

        let myx = eval(y, x);
        symmetric.offer(Witness {
            sample: i,
            x,
            y,
            param: None,
            lhs: mxy,
            rhs: myx,
            deviation: dev(rel_dev(mxy, myx)),
        });

        let (lo, hi) = (x.min(y), x.max(y));
        let outside = (lo - mxy).max(mxy - hi).max(0.0) / hi;
        intermediate.offer(Witness {
            sample: i,
            x,
            y,
            param: None,
            lhs: mxy,
            rhs: if mxy < lo { lo } else { hi },
            deviation: dev(outside),
        });
    }

    AxiomReport {
        spec: spec.to_string(),
        unbiasedness: unbiased.finish(),
        homogeneity: homogeneous.finish(),
        monotonicity: monotone.finish(),
        symmetry: symmetric.finish(),
        intermediacy: intermediate.finish(),
        samples_used: n_samples,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MeanSpec {
        s.parse().unwrap()
    }

    #[test]
    fn power_two_passes_everything() {
        let r = check_axioms(&m("power:2"), 1000, 7);
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.samples_used, 1000);
    }

    #[test]
    fn weighted_geometric_fails_only_symmetry() {
        let r = check_axioms(&m("wgeom:0.7,0.3"), 1000, 7);
        assert_eq!(r.symmetry.status, AxiomStatus::Fail);
        let w = r.symmetry.worst.as_ref().unwrap();
        let a = eval_mean(&m("wgeom:0.7,0.3"), w.x, w.y).unwrap();
        let b = eval_mean(&m("wgeom:0.7,0.3"), w.y, w.x).unwrap();
        assert!(rel_dev(a, b) > AXIOM_TOL);
        for o in [&r.unbiasedness, &r.homogeneity, &r.monotonicity, &r.intermediacy] {
            assert_eq!(o.status, AxiomStatus::Pass);
        }
    }

    #[test]
    fn contraharmonic_is_not_monotone() {
        // (x² + y²)/(x + y) decreases in x while x < (√2 − 1) y
        let r = check_axioms(&m("gini:2,1"), 1000, 7);
        assert_eq!(r.monotonicity.status, AxiomStatus::Fail);
        let w = r.monotonicity.worst.as_ref().unwrap();
        assert!(w.lhs < w.rhs);
        for o in [&r.unbiasedness, &r.homogeneity, &r.symmetry, &r.intermediacy] {
            assert_eq!(o.status, AxiomStatus::Pass);
        }
    }

    #[test]
    fn witness_is_reproducible_from_seed() {
        let a = check_axioms(&m("wgeom:0.7,0.3"), 200, 99);
        let b = check_axioms(&m("wgeom:0.7,0.3"), 200, 99);
        assert_eq!(a, b);
        let w = a.symmetry.worst.unwrap();
        let mut r = trial_rng(99, w.sample);
        assert_eq!(log_uniform(&mut r, LOG_UNIFORM_LO, LOG_UNIFORM_HI), w.x);
    }

    #[test]
    fn quasi_exp_is_not_homogeneous() {
        let r = check_axioms(&m("quasi:exp"), 200, 3);
        assert_eq!(r.homogeneity.status, AxiomStatus::Fail);
        assert!(r.homogeneity.worst.unwrap().param.is_some());
    }

    #[test]
    fn homogeneous_monotone_catalog_passes() {
        for s in [
            "power:-3", "power:0", "power:0.5", "power:inf", "power:-inf", "rado:-1", "rado:0",
            "rado:-3", "rado:2.5", "log", "identric", "min", "max", "quasi:ln", "quasi:pow:3",
            "gini:1,-1", "gini:0.5,-0.5", "lehmer:-0.5", "iter:warith:0.5,0.5|power:0",
        ] {
            let r = check_axioms(&m(s), 300, 11);
            assert!(r.all_pass(), "{s}: {r:?}");
        }
    }

    #[test]
    fn mediant_is_not_applicable() {
        let r = check_axioms(&MeanSpec::Mediant, 10, 0);
        assert_eq!(r.samples_used, 0);
        assert_eq!(r.symmetry.status, AxiomStatus::NotApplicable);
    }
}
