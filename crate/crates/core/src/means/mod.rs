//! Two-argument means: evaluation, conjugates, axioms, h-functions.

mod axioms;
mod eval;
mod hfunc;
mod rado_bounds;
mod spec;

pub use axioms::{check_axioms, AxiomOutcome, AxiomReport, AxiomStatus, Witness, AXIOM_TOL, PERTURBATION};
pub use eval::{
    conjugate_eval, entropy, eval_mean, mediant, rado_reciprocal_conjugate, EQUAL_REL,
    ITERATED_EVAL_TOL, SERIES_REL,
};
pub use hfunc::{
    check_h_conditions, check_h_function, h_of, EvennessViolation, HFunctionCheck,
    RatioViolation, H_TOL,
};
pub use rado_bounds::rado_power_bound_orders;
pub use spec::{Generator, MeanSpec, PowerOrder, RadoOrder, Weights};
