//! Jacobi theta functions of a real argument and real nome.
//!
//! Convention: `θ₃(t, q) = Σ q^{k²} e^{2ikt}`, so θ₃ and θ₄ have period π in
//! `t` and θ₁, θ₂ are π-antiperiodic.
//!
//! Two evaluation paths:
//!
//! * the defining q-series, used for small nomes;
//! * the Poisson (imaginary modular) transform, used for `q` above
//!   [`EvalPolicy::nome_switch_threshold`]. With `L = -ln q`,
//!
//!   ```text
//!   θ₃(t, q) = √(π/L) Σₙ exp(-(t - nπ)² / L)
//!   θ₂(t, q) = √(π/L) Σₙ (-1)ⁿ exp(-(t - nπ)² / L)
//!   ```
//!
//!   and θ₁, θ₄ follow by a half-period shift. For `q → 1` these sums
//!   converge in a handful of terms and θ₃, θ₄ become sums of positive
//!   terms, so values as small as `θ₃(π/2, e^{-1/100}) ≈ 2.5e-106` come out
//!   with full relative precision.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};

/// Argument `t` (radians) and nome `q ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaArgs {
    pub t: f64,
    pub q: f64,
}

impl ThetaArgs {
    pub fn new(t: f64, q: f64) -> Result<Self> {
        let args = Self { t, q };
        args.validate()?;
        Ok(args)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.t.is_finite() {
            return Err(Error::Domain(format!("theta argument must be finite, got {}", self.t)));
        }
        if !(0.0..1.0).contains(&self.q) {
            return Err(Error::Domain(format!("nome must lie in [0, 1), got {}", self.q)));
        }
        Ok(())
    }
}

/// Series truncation and path-selection knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPolicy {
    /// Stop once the next term is below this (absolute for the q-series,
    /// relative to the running sum for the transformed series).
    pub tail_tolerance: f64,
    /// Nomes strictly above this use the transformed series. 1 forces the
    /// q-series everywhere, 0 forces the transform for every `q > 0`.
    pub nome_switch_threshold: f64,
    pub max_terms: usize,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self {
            tail_tolerance: 1e-16,
            nome_switch_threshold: 0.5,
            max_terms: 10_000,
        }
    }
}

impl EvalPolicy {
    /// Always sum the defining q-series.
    pub fn direct_only() -> Self {
        Self {
            nome_switch_threshold: 1.0,
            ..Self::default()
        }
    }

    /// Always use the transformed series (for `q > 0`).
    pub fn modular_only() -> Self {
        Self {
            nome_switch_threshold: 0.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tail_tolerance > 0.0) {
            return Err(Error::InvalidArgument("tail_tolerance must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.nome_switch_threshold) {
            return Err(Error::InvalidArgument(
                "nome_switch_threshold must lie in [0, 1]".into(),
            ));
        }
        if self.max_terms == 0 {
            return Err(Error::InvalidArgument("max_terms must be at least 1".into()));
        }
        Ok(())
    }

    fn uses_transform(&self, q: f64) -> bool {
        q > self.nome_switch_threshold
    }
}

/// Which of the four Jacobi theta functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThetaKind {
    One,
    Two,
    Three,
    Four,
}

/// Result of a direct q-series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Σ|terms|; `abs_sum / |value|` is the cancellation factor.
    pub abs_sum: f64,
    pub terms: usize,
}

impl SeriesValue {
    pub fn condition(&self) -> f64 {
        if self.value == 0.0 {
            f64::INFINITY
        } else {
            self.abs_sum / self.value.abs()
        }
    }
}

/// `-ln q`, accurate for nomes near 1.
fn neg_log_nome(q: f64) -> f64 {
    if q > 0.5 {
        -(q - 1.0).ln_1p()
    } else {
        -q.ln()
    }
}

/// Sum the defining q-series of θ_kind(t, q).
pub fn direct_series(kind: ThetaKind, t: f64, q: f64, policy: &EvalPolicy) -> Result<SeriesValue> {
    ThetaArgs::new(t, q)?;
    policy.validate()?;
    if q == 0.0 {
        let value = match kind {
            ThetaKind::Three | ThetaKind::Four => 1.0,
            ThetaKind::One | ThetaKind::Two => 0.0,
        };
        return Ok(SeriesValue {
            value,
            abs_sum: value,
            terms: 1,
        });
    }
    // θ₂(t) = θ₁(π/2 - t); all four are π-periodic up to sign, so reduce t
    // into [-π/2, π/2] first and keep the products (2k+1)t small
    let (kind, t) = match kind {
        ThetaKind::Two => (ThetaKind::One, (FRAC_PI_2 - t) + 0.5 * PI_LO),
        other => (other, t),
    };
    let shift = (t / PI).round();
    let t = reduce_by_pi(t, shift);
    let flip = if kind == ThetaKind::One && (shift as i64).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    let log_q = q.ln();
    let mut acc = NeumaierSum::new();
    let mut abs_sum = 0.0;
    let half_odd = matches!(kind, ThetaKind::One | ThetaKind::Two);
    if !half_odd {
        acc.add(1.0);
        abs_sum += 1.0;
    }
    let start = if half_odd { 0 } else { 1 };
    let mut k = start;
    loop {
        let kf = k as f64;
        let exponent = if half_odd { (kf + 0.5) * (kf + 0.5) } else { kf * kf };
        let weight = 2.0 * (exponent * log_q).exp();
        if weight < policy.tail_tolerance {
            break;
        }
        if k - start >= policy.max_terms {
            return Err(Error::Convergence {
                what: "theta q-series",
                steps: k - start,
                estimate: acc.value(),
            });
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = match kind {
            ThetaKind::Three => weight * (2.0 * kf * t).cos(),
            ThetaKind::Four => sign * weight * (2.0 * kf * t).cos(),
            ThetaKind::Two => unreachable!("θ₂ is evaluated as θ₁"),
            ThetaKind::One => sign * weight * ((2.0 * kf + 1.0) * t).sin(),
        };
        acc.add(term);
        abs_sum += term.abs();
        k += 1;
    }
    Ok(SeriesValue {
        value: flip * acc.value(),
        abs_sum,
        terms: k - start + 1,
    })
}

/// Split of the Gaussian lattice sum `Σₙ exp(-(x - nπ)²/L)` by parity of `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeHalves {
    pub even: f64,
    pub odd: f64,
}

impl LatticeHalves {
    pub fn total(&self) -> f64 {
        self.even + self.odd
    }

    /// `1 - ((even - odd)/(even + odd))²`, from positive quantities only.
    pub fn gap(&self) -> f64 {
        let s = self.total();
        4.0 * (self.even / s) * (self.odd / s)
    }
}

const PI_LO: f64 = 1.224_646_799_147_353_2e-16;

/// `x - nπ` with π carried to double-double, so `θ₁(π)` for the `f64`
/// nearest π keeps its sub-ulp offset.
fn reduce_by_pi(x: f64, n: f64) -> f64 {
    (x - n * PI) - n * PI_LO
}

/// Even/odd parts of `Σₙ exp(-(x - nπ)²/L)`.
pub fn lattice_halves(x: f64, big_l: f64, policy: &EvalPolicy) -> Result<LatticeHalves> {
    let centre = (x / PI).round();
    let r = reduce_by_pi(x, centre);
    let centre_odd = (centre as i64).rem_euclid(2) == 1;
    // relative to the centre, offset j has parity of j
    let mut near = NeumaierSum::new();
    let mut far = NeumaierSum::new();
    near.add((-r * r / big_l).exp());
    // terms shrink monotonically in j; stop after one negligible term per parity
    let mut j = 1usize;
    let mut previous_small = false;
    loop {
        let jf = j as f64 * PI;
        let term = (-(r - jf) * (r - jf) / big_l).exp() + (-(r + jf) * (r + jf) / big_l).exp();
        let bucket = if j % 2 == 0 { &mut near } else { &mut far };
        bucket.add(term);
        let small = term <= policy.tail_tolerance * bucket.value();
        if term == 0.0 || (small && previous_small) {
            break;
        }
        previous_small = small;
        j += 1;
        if j > policy.max_terms {
            return Err(Error::Convergence {
                what: "theta lattice sum",
                steps: j,
                estimate: near.value() + far.value(),
            });
        }
    }
    let (near, far) = (near.value(), far.value());
    Ok(if centre_odd {
        LatticeHalves { even: far, odd: near }
    } else {
        LatticeHalves { even: near, odd: far }
    })
}

/// `Σ_{m≥0} (-1)^m [e^{-(x-a_m)²/L} - e^{-(x+a_m)²/L}]`, `a_m = (m+½)π`,
/// for `|x| ≤ π/2`. Pairs are combined with `expm1` so the result keeps
/// full relative precision as `x → 0`.
fn odd_half_lattice(x: f64, big_l: f64, policy: &EvalPolicy) -> Result<f64> {
    let sign = x.signum();
    let x = x.abs();
    let mut acc = NeumaierSum::new();
    for m in 0..policy.max_terms {
        let a = (m as f64 + 0.5) * PI;
        let pair = (-(x - a) * (x - a) / big_l).exp() * -(-4.0 * x * a / big_l).exp_m1();
        let term = if m % 2 == 0 { pair } else { -pair };
        acc.add(term);
        if pair == 0.0 || pair.abs() <= policy.tail_tolerance * acc.value().abs() {
            return Ok(sign * acc.value());
        }
    }
    Err(Error::Convergence {
        what: "theta1 lattice sum",
        steps: policy.max_terms,
        estimate: sign * acc.value(),
    })
}

/// Evaluate θ_kind through the Poisson-transformed series (requires `q > 0`).
pub fn modular_series(kind: ThetaKind, t: f64, q: f64, policy: &EvalPolicy) -> Result<f64> {
    ThetaArgs::new(t, q)?;
    policy.validate()?;
    if q == 0.0 {
        return Err(Error::Domain("transformed theta series needs q > 0".into()));
    }
    modular_series_log(kind, t, neg_log_nome(q), policy)
}

/// Transformed series from `L = -ln q` directly. Callers that know `L`
/// exactly avoid the rounding of `q`, which is amplified by `(t/L)²`-sized
/// exponents as `q → 1`.
pub fn modular_series_log(kind: ThetaKind, t: f64, big_l: f64, policy: &EvalPolicy) -> Result<f64> {
    if !(big_l > 0.0 && big_l.is_finite()) || !t.is_finite() {
        return Err(Error::Domain(format!("need finite t and L = -ln q > 0, got t={t}, L={big_l}")));
    }
    policy.validate()?;
    let prefactor = (PI / big_l).sqrt();
    let value = match kind {
        ThetaKind::Three => lattice_halves(t, big_l, policy)?.total(),
        ThetaKind::Four => lattice_halves(t + FRAC_PI_2, big_l, policy)?.total(),
        ThetaKind::One => theta1_transformed(t, big_l, policy)?,
        ThetaKind::Two => theta1_transformed((FRAC_PI_2 - t) + 0.5 * PI_LO, big_l, policy)?,
    };
    Ok(prefactor * value)
}

fn theta1_transformed(t: f64, big_l: f64, policy: &EvalPolicy) -> Result<f64> {
    // θ₁(t + π) = -θ₁(t)
    let shift = (t / PI).round();
    let x = reduce_by_pi(t, shift);
    let flip = if (shift as i64).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    Ok(flip * odd_half_lattice(x, big_l, policy)?)
}

/// θ_kind(t, q), choosing the path from `policy`.
pub fn theta(kind: ThetaKind, args: ThetaArgs, policy: &EvalPolicy) -> Result<f64> {
    args.validate()?;
    policy.validate()?;
    if args.q > 0.0 && policy.uses_transform(args.q) {
        modular_series(kind, args.t, args.q, policy)
    } else {
        Ok(direct_series(kind, args.t, args.q, policy)?.value)
    }
}

/// θ_kind(t, e^{-L}), choosing the path from `policy`.
pub fn theta_log_nome(kind: ThetaKind, t: f64, big_l: f64, policy: &EvalPolicy) -> Result<f64> {
    let q = (-big_l).exp();
    let args = ThetaArgs::new(t, q)?;
    policy.validate()?;
    if q > 0.0 && policy.uses_transform(q) {
        modular_series_log(kind, t, big_l, policy)
    } else {
        Ok(direct_series(kind, args.t, q, policy)?.value)
    }
}

pub fn theta1(args: ThetaArgs, policy: &EvalPolicy) -> Result<f64> {
    theta(ThetaKind::One, args, policy)
}

pub fn theta2(args: ThetaArgs, policy: &EvalPolicy) -> Result<f64> {
    theta(ThetaKind::Two, args, policy)
}

pub fn theta3(args: ThetaArgs, policy: &EvalPolicy) -> Result<f64> {
    theta(ThetaKind::Three, args, policy)
}

pub fn theta4(args: ThetaArgs, policy: &EvalPolicy) -> Result<f64> {
    theta(ThetaKind::Four, args, policy)
}

fn th(kind: ThetaKind, t: f64, q: f64, policy: &EvalPolicy) -> Result<f64> {
    theta(kind, ThetaArgs::new(t, q)?, policy)
}

fn open_unit_nome(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("nome must lie in (0, 1), got {q}")))
    }
}

/// `P(t) = θ₃(t, q) / θ₃(t, q²)²`.
pub fn p_ratio(t: f64, q: f64, policy: &EvalPolicy) -> Result<f64> {
    open_unit_nome(q)?;
    let num = th(ThetaKind::Three, t, q, policy)?;
    let den = th(ThetaKind::Three, t, q * q, policy)?;
    Ok(num / (den * den))
}

/// `g(t) = 1 - (θ₂(t, p)/θ₃(t, p))²` computed from positive lattice sums.
///
/// By Watson's identity `P(t) = (2 - g(t, q²)) / θ₃(0, q)`, so `g` carries
/// the variation of `P` with full relative precision even where `P` itself
/// is flat to the last ulp.
pub fn watson_gap(t: f64, p: f64, policy: &EvalPolicy) -> Result<f64> {
    open_unit_nome(p)?;
    ThetaArgs::new(t, p)?;
    policy.validate()?;
    Ok(lattice_halves(t, neg_log_nome(p), policy)?.gap())
}

/// [`watson_gap`] with `p = e^{-L}` given through `L`.
pub fn watson_gap_log(t: f64, big_l: f64, policy: &EvalPolicy) -> Result<f64> {
    if !(big_l > 0.0 && big_l.is_finite()) || !t.is_finite() {
        return Err(Error::Domain(format!("need finite t and L = -ln p > 0, got t={t}, L={big_l}")));
    }
    policy.validate()?;
    Ok(lattice_halves(t, big_l, policy)?.gap())
}

/// `θ₃(t,q)θ₃(0,q) - θ₃(t,q²)² - θ₂(t,q²)²`; zero up to rounding.
pub fn watson_residual(t: f64, q: f64, policy: &EvalPolicy) -> Result<f64> {
    open_unit_nome(q)?;
    let p = q * q;
    let lhs = th(ThetaKind::Three, t, q, policy)? * th(ThetaKind::Three, 0.0, q, policy)?;
    let t3 = th(ThetaKind::Three, t, p, policy)?;
    let t2 = th(ThetaKind::Two, t, p, policy)?;
    Ok(lhs - t3 * t3 - t2 * t2)
}

/// `d/dt [θ₂(t,p)/θ₃(t,p)] = -θ₄(0,p)² θ₁(t,p) θ₄(t,p) / θ₃(t,p)²`.
pub fn theta23_ratio_derivative(t: f64, p: f64, policy: &EvalPolicy) -> Result<f64> {
    open_unit_nome(p)?;
    let t40 = th(ThetaKind::Four, 0.0, p, policy)?;
    let t1 = th(ThetaKind::One, t, p, policy)?;
    let t4 = th(ThetaKind::Four, t, p, policy)?;
    let t3 = th(ThetaKind::Three, t, p, policy)?;
    Ok(-t40 * t40 * t1 * t4 / (t3 * t3))
}

/// `1 - θ₂(t,p)/θ₃(t,p)` without cancellation (`2·odd/(even+odd)`).
pub fn theta23_ratio_defect(t: f64, p: f64, policy: &EvalPolicy) -> Result<f64> {
    open_unit_nome(p)?;
    let halves = lattice_halves(t, neg_log_nome(p), policy)?;
    Ok(2.0 * halves.odd / halves.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pol() -> EvalPolicy {
        EvalPolicy::default()
    }

    #[test]
    fn zero_nome_is_trivial() {
        for t in [0.0, 0.7, -3.0, 10.0] {
            let a = ThetaArgs::new(t, 0.0).unwrap();
            assert_eq!(theta3(a, &pol()).unwrap(), 1.0);
            assert_eq!(theta4(a, &pol()).unwrap(), 1.0);
            assert_eq!(theta1(a, &pol()).unwrap(), 0.0);
            assert_eq!(theta2(a, &pol()).unwrap(), 0.0);
        }
    }

    #[test]
    fn rejects_bad_nome_and_argument() {
        assert!(matches!(ThetaArgs::new(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(ThetaArgs::new(0.0, -0.1), Err(Error::Domain(_))));
        assert!(matches!(ThetaArgs::new(f64::NAN, 0.5), Err(Error::Domain(_))));
        assert!(matches!(ThetaArgs::new(f64::INFINITY, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn policy_validation() {
        let bad = EvalPolicy {
            tail_tolerance: 0.0,
            ..EvalPolicy::default()
        };
        assert!(bad.validate().is_err());
        let bad = EvalPolicy {
            max_terms: 0,
            ..EvalPolicy::default()
        };
        assert!(bad.validate().is_err());
        let bad = EvalPolicy {
            nome_switch_threshold: 1.5,
            ..EvalPolicy::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn term_budget_exhaustion_is_a_convergence_error() {
        let tight = EvalPolicy {
            max_terms: 3,
            ..EvalPolicy::direct_only()
        };
        let err = direct_series(ThetaKind::Three, 0.1, 0.95, &tight).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }

    #[test]
    fn special_values() {
        let p = pol();
        assert_eq!(theta2(ThetaArgs::new(FRAC_PI_2, 0.5).unwrap(), &p).unwrap().abs() < 1e-16, true);
        assert_eq!(theta1(ThetaArgs::new(0.0, 0.5).unwrap(), &p).unwrap(), 0.0);
        let t3 = theta3(ThetaArgs::new(FRAC_PI_2, 0.3).unwrap(), &p).unwrap();
        let t4 = theta4(ThetaArgs::new(0.0, 0.3).unwrap(), &p).unwrap();
        assert_relative_eq!(t3, t4, max_relative = 1e-15);
    }

    #[test]
    fn gaussian_upper_bound_at_unit_width() {
        // σ√π θ₃(0, e^{-1/4}) = 2π at σ = 1
        let q = (-0.25f64).exp();
        let v = PI.sqrt() * theta3(ThetaArgs::new(0.0, q).unwrap(), &pol()).unwrap();
        assert_relative_eq!(v, 2.0 * PI, max_relative = 1e-14);
    }

    #[test]
    fn theta1_keeps_relative_precision_near_zero() {
        // θ₁(t) ≈ θ₁'(0) t for tiny t, on both paths
        for q in [0.3, 0.9] {
            let d = theta1(ThetaArgs::new(1e-6, q).unwrap(), &pol()).unwrap() / 1e-6;
            let e = theta1(ThetaArgs::new(1e-9, q).unwrap(), &pol()).unwrap() / 1e-9;
            assert_relative_eq!(d, e, max_relative = 1e-9);
            assert!(d > 0.0);
        }
    }

    #[test]
    fn derivative_vanishes_at_zeros_of_theta1() {
        let p = pol();
        assert_eq!(theta23_ratio_derivative(0.0, 0.4, &p).unwrap(), 0.0);
        assert!(theta23_ratio_derivative(PI, 0.4, &p).unwrap().abs() < 1e-15);
    }

    #[test]
    fn p_ratio_tends_to_one_for_small_nome() {
        for t in [0.0, 0.5, 1.5, 3.0] {
            let v = p_ratio(t, 1e-12, &pol()).unwrap();
            assert!((v - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn watson_identity_at_origin() {
        assert!(watson_residual(0.0, 0.5, &pol()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn lattice_gap_matches_theta_ratio() {
        let p = pol();
        for (t, nome) in [(0.4, 0.3), (1.2, 0.7), (2.9, 0.6)] {
            let g = watson_gap(t, nome, &p).unwrap();
            let r = theta2(ThetaArgs::new(t, nome).unwrap(), &p).unwrap()
                / theta3(ThetaArgs::new(t, nome).unwrap(), &p).unwrap();
            // 1 - r² cancels, so only absolute agreement is available
            assert!((g - (1.0 - r * r)).abs() < 1e-14, "t={t} q={nome}");
        }
        // g ≈ 8e-71 here; only the defect form can see it
        let g = watson_gap(2.9, 0.95, &p).unwrap();
        let d = theta23_ratio_defect(2.9, 0.95, &p).unwrap();
        assert_relative_eq!(g, d * (2.0 - d), max_relative = 1e-12);
    }
}
