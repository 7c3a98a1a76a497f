//! Jackson q-integrals and the mean chain built on them.

use cbs_means::cbs_discrete::{q_cbs_chain, q_jackson_integral, Q_TAIL_TOL};
use cbs_means::function::FunctionSpec;

fn main() -> cbs_means::Result<()> {
    let f: FunctionSpec = "poly:0,0,1".parse()?;
    for q in [0.5, 0.9, 0.99, 0.999] {
        // the q-integral of t^2 over [0, 1] is 1/(1 + q + q^2)
        let v = q_jackson_integral(&f, q, Q_TAIL_TOL)?;
        println!("q = {q:<5}: {v:.12}  exact {:.12}", 1.0 / (1.0 + q + q * q));
    }

    let (f, g): (FunctionSpec, FunctionSpec) = ("poly:1,1".parse()?, "exp:-1".parse()?);
    for s in ["power:0", "power:2", "max"] {
        let r = q_cbs_chain(&f, &g, 0.7, &s.parse()?, Q_TAIL_TOL)?;
        println!("{s:<8} {:.10} <= {:.10} <= {:.10}", r.left, r.middle, r.right);
    }
    Ok(())
}
