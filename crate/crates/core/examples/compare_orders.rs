//! Sampled comparison of two log-derivative refinements along the power scale.

use cbs_means::cbs_integral::{compare_generalizations, ChainKind};
use cbs_means::MeanSpec;

fn main() -> cbs_means::Result<()> {
    for (a, b) in [(2.0, 0.0), (3.0, -1.0), (1.5, 0.5), (0.5, 1.4), (0.5, 2.0)] {
        let v = compare_generalizations(&MeanSpec::power(a)?, &MeanSpec::power(b)?, ChainKind::LogDerivative, 300, 7);
        println!(
            "M{a} vs M{b}: {:?} (A below {}, B below {}, ties {}, trials {})",
            v.relation, v.a_below_b, v.b_below_a, v.ties, v.trials_run
        );
        for w in &v.witnesses {
            println!("    trial {}: f = {}, g = {} on [{}, {}]: {:.8} vs {:.8}", w.trial, w.f, w.g, w.a, w.b, w.middle_a, w.middle_b);
        }
    }
    Ok(())
}
