use std::f64::consts::LN_2;

use super::spec::{PowerOrder, RadoOrder};

fn third(beta: f64) -> PowerOrder {
    PowerOrder::new((beta + 2.0) / 3.0).expect("finite order")
}

fn log_order(beta: f64) -> PowerOrder {
    if beta == 0.0 {
        return PowerOrder::Finite(LN_2);
    }
    PowerOrder::new(beta * LN_2 / beta.ln_1p()).expect("finite order")
}

/// Power-mean orders `(lower, upper)` with `M_lower <= R_beta <= M_upper`.
///
/// | β             | lower            | upper            |
/// |---------------|------------------|------------------|
/// | `(-∞, -2]`    | `(β+2)/3`        | `0`              |
/// | `[-2, -1]`    | `0`              | `(β+2)/3`        |
/// | `(-1, -1/2]`  | `β ln2/ln(1+β)`  | `(β+2)/3`        |
/// | `[-1/2, 1)`   | `(β+2)/3`        | `β ln2/ln(1+β)`  |
/// | `[1, ∞)`      | `β ln2/ln(1+β)`  | `(β+2)/3`        |
///
/// At `β = 0` the second order is its limit `ln 2`.
pub fn rado_power_bound_orders(beta: RadoOrder) -> (PowerOrder, PowerOrder) {
    match beta {
        RadoOrder::NegInf => (PowerOrder::NegInf, PowerOrder::Geometric),
        RadoOrder::PosInf => (PowerOrder::PosInf, PowerOrder::PosInf),
        _ => {
            let b = beta.value();
            if b <= -2.0 {
                (third(b), PowerOrder::Geometric)
            } else if b <= -1.0 {
                (PowerOrder::Geometric, third(b))
            } else if b <= -0.5 {
                (log_order(b), third(b))
            } else if b < 1.0 {
                (third(b), log_order(b))
            } else {
                (log_order(b), third(b))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::means::eval::eval_mean;
    use crate::means::spec::MeanSpec;
    use crate::sampling::{log_uniform, rng};

    fn orders(b: f64) -> (f64, f64) {
        let (l, u) = rado_power_bound_orders(RadoOrder::new(b).unwrap());
        (l.value(), u.value())
    }

    #[test]
    fn logarithmic_orders() {
        assert_eq!(orders(-1.0), (0.0, 1.0 / 3.0));
    }

    #[test]
    fn identric_orders() {
        let (l, u) = orders(0.0);
        assert!((l - 2.0 / 3.0).abs() < 1e-16);
        assert_eq!(u, LN_2);
    }

    #[test]
    fn first_regime() {
        let (l, u) = orders(-3.0);
        assert!((l + 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(u, 0.0);
    }

    #[test]
    fn regime_boundaries_agree() {
        assert_eq!(orders(-2.0), (0.0, 0.0));
        let (l, u) = orders(-0.5);
        assert!((l - 0.5).abs() < 1e-15 && (u - 0.5).abs() < 1e-15);
        let (l, u) = orders(1.0);
        assert!((l - 1.0).abs() < 1e-15 && (u - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sandwich_on_random_pairs() {
        let mut r = rng(4);
        for beta in [-4.5, -2.0, -1.2, -0.9, -0.6, -0.3, 0.0, 0.3, 0.8, 1.0, 3.0] {
            let rb = RadoOrder::new(beta).unwrap();
            let (lo, up) = rado_power_bound_orders(rb);
            for _ in 0..300 {
                let x = log_uniform(&mut r, 1e-3, 1e3);
                let y = log_uniform(&mut r, 1e-3, 1e3);
                let v = eval_mean(&MeanSpec::Rado(rb), x, y).unwrap();
                let a = eval_mean(&MeanSpec::Power(lo), x, y).unwrap();
                let b = eval_mean(&MeanSpec::Power(up), x, y).unwrap();
                assert!(a <= v * (1.0 + 1e-12) && v <= b * (1.0 + 1e-12), "beta={beta} ({x},{y}): {a} {v} {b}");
            }
        }
    }
}
