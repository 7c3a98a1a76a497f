//! Evaluates a handful of means on one pair, with conjugates and the
//! power-mean bounds of the Rado scale.

use cbs_means::means::{conjugate_eval, entropy, eval_mean, rado_power_bound_orders, MeanSpec, RadoOrder};

fn main() -> cbs_means::Result<()> {
    let (x, y) = (2.0, 18.0);
    println!("{:<28} {:>12} {:>12} {:>10}", "mean", "M(x,y)", "M*(x,y)", "-ln M");
    for s in ["min", "power:-1", "power:0", "log", "identric", "power:1", "power:2", "max", "rado:3", "gini:1,-1", "lehmer:-0.5", "wgeom:0.7,0.3", "quasi:exp", "iter:warith:0.5,0.5|power:0"] {
        let m: MeanSpec = s.parse()?;
        println!(
            "{:<28} {:>12.6} {:>12.6} {:>10.4}",
            m.to_string(),
            eval_mean(&m, x, y)?,
            conjugate_eval(&m, x, y)?,
            entropy(&m, x, y)?
        );
    }

    println!("\nRado means between power means:");
    for beta in [-3.0, -1.0, 0.0, 0.5, 2.0] {
        let order = RadoOrder::new(beta)?;
        let (lo, hi) = rado_power_bound_orders(order);
        let r = eval_mean(&MeanSpec::Rado(order), x, y)?;
        let l = eval_mean(&MeanSpec::Power(lo), x, y)?;
        let u = eval_mean(&MeanSpec::Power(hi), x, y)?;
        println!("  beta = {beta:>4}: M_{:.4} = {l:.6} <= R = {r:.6} <= M_{:.4} = {u:.6}", lo.value(), hi.value());
    }
    Ok(())
}
