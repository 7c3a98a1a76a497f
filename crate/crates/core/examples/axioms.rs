//! Sampled check of the mean axioms, with the worst witness for each failure.

use cbs_means::means::{check_axioms, check_h_conditions, AxiomOutcome, AxiomStatus};

fn show(name: &str, o: &AxiomOutcome) {
    match (&o.status, &o.worst) {
        (AxiomStatus::Fail, Some(w)) => println!(
            "    {name:<13} FAIL at x = {:.4}, y = {:.4}: {:.6} vs {:.6}",
            w.x, w.y, w.lhs, w.rhs
        ),
        (status, _) => println!("    {name:<13} {status:?}"),
    }
}

fn main() -> cbs_means::Result<()> {
    for s in ["power:2", "rado:-1", "wgeom:0.7,0.3", "gini:2,1", "quasi:exp", "lehmer:1"] {
        let r = check_axioms(&s.parse()?, 2000, 17);
        println!("{s}: all pass = {}", r.all_pass());
        show("unbiasedness", &r.unbiasedness);
        show("homogeneity", &r.homogeneity);
        show("monotonicity", &r.monotonicity);
        show("symmetry", &r.symmetry);
        show("intermediacy", &r.intermediacy);
    }

    let grid = [0.0, 0.5, 1.0, 2.0, 4.0];
    for s in ["power:0", "identric", "wgeom:0.7,0.3"] {
        let h = check_h_conditions(&s.parse()?, &grid)?;
        println!("h-function of {s}: h(0) = {:.6}, valid = {}", h.h0_value, h.is_valid());
    }
    Ok(())
}
