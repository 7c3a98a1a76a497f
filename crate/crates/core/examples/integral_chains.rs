//! Integral refinements: the mean form, the log-derivative form, the
//! product identity, and a chain built from an h-function.

use cbs_means::cbs_integral::{
    general_h_chain, integral_logderiv_chain, integral_mean_chain, log_derivatives_ordered, product_identity_check,
    ChainKind,
};
use cbs_means::function::FunctionSpec;
use cbs_means::MeanSpec;

fn main() -> cbs_means::Result<()> {
    let (f, g): (FunctionSpec, FunctionSpec) = ("poly:0,1".parse()?, "poly:1,-1".parse()?);
    let r = integral_mean_chain(&f, &g, 0.0, 1.0, &"min".parse()?)?;
    println!("min/max envelope: {:.12} <= {:.12} <= {:.12}", r.left, r.middle, r.right);
    println!("exact:            {:.12} <= {:.12} <= {:.12}", 1.0 / 36.0, 7.0 / 144.0, 1.0 / 9.0);

    let (f, g): (FunctionSpec, FunctionSpec) = ("exp:0.5".parse()?, "poly:1,2,1".parse()?);
    println!("\nf = {f}, g = {g} on [0, 2], log-derivatives ordered: {}", log_derivatives_ordered(&f, &g, 0.0, 2.0));
    for s in ["power:0", "power:1", "power:2", "rado:-1", "power:inf"] {
        let m: MeanSpec = s.parse()?;
        let a = integral_mean_chain(&f, &g, 0.0, 2.0, &m)?;
        let b = integral_logderiv_chain(&f, &g, 0.0, 2.0, &m)?;
        println!("{s:<10} mean middle {:.10}   log-derivative middle {:.10}", a.middle, b.middle);
    }

    let grid: Vec<f64> = (0..=16).map(|i| i as f64 / 8.0).collect();
    let id = product_identity_check(&f, &g, 0.0, 2.0, ChainKind::LogDerivative, &"power:2".parse()?, &grid)?;
    println!("\nproduct identity: holds {}, max deviation {:.2e}", id.holds, id.max_rel_deviation);

    // h(t) = 1/2 gives the arithmetic mean
    let r = general_h_chain(&f, &g, 0.0, 2.0, |_| 0.5, ChainKind::Mean)?;
    println!("h = 1/2 chain middle {:.10}", r.middle);
    Ok(())
}
