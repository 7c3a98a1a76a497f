use serde::Serialize;

/// Default relative tolerance for sums evaluated in closed form.
pub const DISCRETE_TOL: f64 = 1e-12;
/// Relative tolerance for chains whose terms come from quadrature.
pub const INTEGRAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainDirection {
    /// `left <= middle <= right`
    Forward,
    /// `left >= middle >= right`
    Reversed,
}

/// Three evaluated terms of an inequality chain with its verdict.
///
/// Slacks are signed so that a nonnegative value means the corresponding
/// link holds: for a forward chain `slack_left = middle - left`, for a
/// reversed one `slack_left = left - middle`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub left: f64,
    pub middle: f64,
    pub right: f64,
    pub ordered: bool,
    pub slack_left: f64,
    pub slack_right: f64,
    pub direction: ChainDirection,
    pub tolerance: f64,
}

impl ChainReport {
    pub fn forward(left: f64, middle: f64, right: f64, tol: f64) -> Self {
        Self::build(left, middle, right, tol, ChainDirection::Forward)
    }

    pub fn reversed(left: f64, middle: f64, right: f64, tol: f64) -> Self {
        Self::build(left, middle, right, tol, ChainDirection::Reversed)
    }

    fn build(left: f64, middle: f64, right: f64, tol: f64, direction: ChainDirection) -> Self {
        let (slack_left, slack_right) = match direction {
            ChainDirection::Forward => (middle - left, right - middle),
            ChainDirection::Reversed => (left - middle, middle - right),
        };
        let scale = left.abs().max(middle.abs()).max(right.abs());
        let floor = -tol * scale;
        let ordered = slack_left >= floor && slack_right >= floor && scale.is_finite();
        ChainReport {
            left,
            middle,
            right,
            ordered,
            slack_left,
            slack_right,
            direction,
            tolerance: tol,
        }
    }

    pub fn scale(&self) -> f64 {
        self.left.abs().max(self.middle.abs()).max(self.right.abs())
    }

    /// Smaller of the two slacks divided by the chain scale.
    pub fn relative_slack(&self) -> f64 {
        let s = self.scale();
        if s == 0.0 {
            0.0
        } else {
            self.slack_left.min(self.slack_right) / s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_tolerates_rounding() {
        let r = ChainReport::forward(1.0, 1.0 - 1e-14, 2.0, DISCRETE_TOL);
        assert!(r.ordered);
        let r = ChainReport::forward(1.0, 1.0 - 1e-9, 2.0, DISCRETE_TOL);
        assert!(!r.ordered);
    }

    #[test]
    fn reversed_slacks_are_nonnegative_when_holding() {
        let r = ChainReport::reversed(9.0, 8.5, 8.0, DISCRETE_TOL);
        assert!(r.ordered);
        assert_eq!(r.slack_left, 0.5);
        assert_eq!(r.slack_right, 0.5);
        assert!(!ChainReport::reversed(8.0, 8.5, 8.0, DISCRETE_TOL).ordered);
    }

    #[test]
    fn nan_is_never_ordered() {
        assert!(!ChainReport::forward(1.0, f64::NAN, 2.0, DISCRETE_TOL).ordered);
    }
}
