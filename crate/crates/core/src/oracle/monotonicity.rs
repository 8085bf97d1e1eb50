//! Grid check that `P(t) = θ₃(t,q)/θ₃(t,q²)²` falls on `(0, π/2)` and rises
//! on `(π/2, π)`.
//!
//! Near `q → 1` the samples of `P` agree to the last ulp away from `π/2`, so
//! strictness is tested on the Watson gap `g(t, q²)`, which moves opposite to
//! `P` with full relative precision. Raw `P` is checked non-strictly, allowing
//! its rounding jitter.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::theta::{p_ratio, theta23_ratio_derivative, watson_gap, EvalPolicy};

const RAW_ULPS: f64 = 8.0;

/// Rounding scale of `P(t)`: near `q → 1` each theta is dominated by
/// `e^{-x²/L}` (`x` = distance of `t` to the nearest multiple of π,
/// `L = -ln q`), and an exponent of size `E` carries about `E·ε` of error.
fn raw_slack(t: f64, big_l: f64) -> f64 {
    let x = t - (t / PI).round() * PI;
    RAW_ULPS * f64::EPSILON * (1.0 + x * x / big_l)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ViolationKind {
    /// `g` failed to increase strictly on `(0, π/2)` or decrease on `(π/2, π)`.
    Gap,
    /// Raw `P` moved the wrong way by more than rounding.
    Ratio,
    /// `d/dt (θ₂/θ₃)` was positive.
    Derivative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub t: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub q: f64,
    pub grid_size: usize,
    /// First violation of each kind, in grid order.
    pub violations: Vec<Violation>,
    /// Largest relative step of raw `P` against the expected direction
    /// (tolerated up to the rounding scale of the theta exponentials).
    pub worst_ratio_step: f64,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sample `grid_size` interior points on each half-period.
pub fn monotonicity_check(q: f64, grid_size: usize) -> Result<MonotonicityReport> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("nome must lie in (0, 1), got {q}")));
    }
    if grid_size < 10 {
        return Err(Error::InvalidArgument(format!("grid_size must be at least 10, got {grid_size}")));
    }
    let policy = EvalPolicy::default();
    let p = q * q;
    let big_l = -(q - 1.0).ln_1p();
    let h = FRAC_PI_2 / (grid_size + 1) as f64;
    let mut violations: Vec<Violation> = Vec::new();
    let mut worst: f64 = 0.0;
    let record = |v: Violation, list: &mut Vec<Violation>| {
        if !list.iter().any(|x| x.kind == v.kind) {
            list.push(v);
        }
    };

    // sign +1: g increasing / P decreasing on (0, π/2); -1 on (π/2, π)
    for (offset, sign) in [(0.0, 1.0), (FRAC_PI_2, -1.0)] {
        let mut prev: Option<(f64, f64)> = None;
        for i in 1..=grid_size {
            let t = offset + h * i as f64;
            let gap = watson_gap(t, p, &policy)?;
            let ratio = p_ratio(t, q, &policy)?;
            let deriv = theta23_ratio_derivative(t, p, &policy)?;
            if deriv > 0.0 {
                record(Violation { kind: ViolationKind::Derivative, t, value: deriv }, &mut violations);
            }
            if let Some((g0, r0)) = prev {
                if sign * (gap - g0) <= 0.0 {
                    record(Violation { kind: ViolationKind::Gap, t, value: gap - g0 }, &mut violations);
                }
                let step = sign * (ratio - r0) / r0.abs();
                worst = worst.max(step);
                if step > raw_slack(t, big_l) {
                    record(Violation { kind: ViolationKind::Ratio, t, value: ratio - r0 }, &mut violations);
                }
            }
            prev = Some((gap, ratio));
        }
    }
    Ok(MonotonicityReport {
        q,
        grid_size,
        violations,
        worst_ratio_step: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_nome_passes() {
        let r = monotonicity_check(1e-3, 50).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn sigma_one_nome_passes() {
        let r = monotonicity_check((-0.25f64).exp(), 500).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(monotonicity_check(0.0, 100).is_err());
        assert!(monotonicity_check(1.0, 100).is_err());
        assert!(monotonicity_check(0.5, 9).is_err());
    }
}
