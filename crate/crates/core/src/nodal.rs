//! Cardinal (nod) functions `φ̃(t) = Σ_k d_k φ(t - k)` with `φ̃(m) = δ_{0m}`.
//!
//! Gaussian coefficients grow like `1/C(σ)` (about 2e16 at σ = 3) while the
//! nod function stays O(1), so they are stored and applied in double-double.
//! Lorentz coefficients are O(1) and decay only like `1/k²`; truncation, not
//! rounding, limits their accuracy.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::compensated::{DoubleDouble, NeumaierSum};
use crate::error::{Error, Result};
use crate::oracle::quadrature::adaptive_quadrature;
use crate::systems::{generator_value, Family, GeneratorSpec};

pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-30;
pub const DEFAULT_QUADRATURE_TOLERANCE: f64 = 1e-12;
const MAX_SERIES_TERMS: usize = 100_000;
// above this mask nome C(σ) is summed in its Poisson-transformed form
const C_SWITCH_NOME: f64 = 0.5;

/// Coefficients `d_k`, `k ∈ [-kmax, kmax]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodCoefficients {
    spec: GeneratorSpec,
    kmax: usize,
    values: Vec<f64>,
    #[serde(skip)]
    lo: Vec<f64>,
    quadrature_tolerance: Option<f64>,
    tail_tolerance: Option<f64>,
}

impl NodCoefficients {
    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// `d_{-kmax}, …, d_{kmax}` rounded to `f64`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn quadrature_tolerance(&self) -> Option<f64> {
        self.quadrature_tolerance
    }

    pub fn tail_tolerance(&self) -> Option<f64> {
        self.tail_tolerance
    }

    fn index(&self, k: i64) -> Option<usize> {
        let i = k + self.kmax as i64;
        (0..self.values.len() as i64).contains(&i).then_some(i as usize)
    }

    pub fn get(&self, k: i64) -> Option<f64> {
        self.index(k).map(|i| self.values[i])
    }

    /// `d_k` to double-double precision (Gauss) or as stored (Lorentz).
    pub fn get_extended(&self, k: i64) -> Option<DoubleDouble> {
        self.index(k).map(|i| DoubleDouble::new(self.values[i], self.lo[i]))
    }

    /// `|d_kmax| / |d_0|`.
    pub fn decay_ratio(&self) -> f64 {
        (self.values[2 * self.kmax] / self.values[self.kmax]).abs()
    }

    /// Indices `k > 0` where `sign(d_k) != (-1)^k sign(d_0)`.
    pub fn sign_alternation_violations(&self) -> Vec<i64> {
        let d0 = self.values[self.kmax].signum();
        (1..=self.kmax as i64)
            .filter(|&k| {
                let expected = if k % 2 == 0 { d0 } else { -d0 };
                self.get(k).unwrap().signum() != expected
            })
            .collect()
    }

    /// `max_{|m| <= mmax} |φ̃(m) - δ_{0m}|`.
    pub fn nod_residual(&self, mmax: usize) -> f64 {
        (-(mmax as i64)..=mmax as i64)
            .map(|m| {
                let delta = if m == 0 { 1.0 } else { 0.0 };
                (nod_function_eval(self, m as f64) - delta).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Truncated mask `D(t) = Σ_{|k|≤kmax} d_k e^{-ikt}`.
    pub fn mask(&self, t: f64) -> f64 {
        let mut acc = self.get_extended(0).unwrap();
        for k in 1..=self.kmax as i64 {
            acc += self.get_extended(k).unwrap() * (2.0 * (k as f64 * t).cos());
        }
        acc.to_f64()
    }
}

fn check_kmax(kmax: usize) -> Result<()> {
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be at least 1".into()));
    }
    Ok(())
}

fn check_tolerance(name: &str, tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("{name} must be positive, got {tol}")));
    }
    Ok(())
}

/// Sum terms until one drops below `tol · |partial|`.
fn sum_until_small<F: FnMut(usize) -> DoubleDouble>(mut term: F, tol: f64, what: &'static str) -> Result<DoubleDouble> {
    let mut acc = DoubleDouble::ZERO;
    for n in 0..MAX_SERIES_TERMS {
        let t = term(n);
        acc += t;
        if t.hi.abs() <= tol * acc.hi.abs() {
            return Ok(acc);
        }
    }
    Err(Error::Convergence {
        what,
        steps: MAX_SERIES_TERMS,
        estimate: acc.to_f64(),
    })
}

/// Normalising constant `C(σ) = Σ_{r∈ℤ} (4r+1) e^{-(2r+½)²/(2σ²)}`.
///
/// For wide Gaussians the terms are O(1) and cancel to about 1e-17 (σ = 3),
/// so there the Poisson-transformed series
/// `2π√(2π) σ³ Σ_{m≥0} (-1)^m (2m+1) e^{-σ²π²(2m+1)²/2}` is used.
pub fn gauss_c(sigma: f64, tail_tolerance: f64) -> Result<DoubleDouble> {
    let spec = GeneratorSpec::gauss(sigma)?;
    check_tolerance("tail tolerance", tail_tolerance)?;
    let two_s2 = DoubleDouble::mul_f64_exact(2.0 * sigma, sigma);
    if spec.mask_nome() <= C_SWITCH_NOME {
        // pair r and -r-1: (4r+1) e^{-(2r+½)²/2σ²} - (4r+3) e^{-(2r+3/2)²/2σ²}
        let term = |r: usize| {
            let r = r as f64;
            let a = 2.0 * r + 0.5;
            let b = 2.0 * r + 1.5;
            let ea = (-DoubleDouble::from(a * a) / two_s2).exp();
            let eb = (-DoubleDouble::from(b * b) / two_s2).exp();
            ea * (4.0 * r + 1.0) - eb * (4.0 * r + 3.0)
        };
        sum_until_small(term, tail_tolerance, "C(σ) series")
    } else {
        let s = DoubleDouble::from(sigma);
        let a = (s * DoubleDouble::PI).sqr() * 0.5;
        let series = sum_until_small(
            |m| {
                let odd = (2 * m + 1) as f64;
                let v = (-(a * (odd * odd))).exp() * odd;
                if m % 2 == 0 {
                    v
                } else {
                    -v
                }
            },
            tail_tolerance,
            "transformed C(σ) series",
        )?;
        let root = (DoubleDouble::PI * 2.0).sqrt();
        Ok(DoubleDouble::PI * 2.0 * root * s * s * s * series)
    }
}

/// Gaussian coefficients
/// `d_k = e^{k²/2σ²} Σ_{r≥|k|} (-1)^r e^{-(r+½)²/2σ²} / C(σ)`.
///
/// The exponents are combined before exponentiating, so no intermediate
/// overflows. The r-series stops once a term is below
/// `tail_tolerance · |partial sum|`.
pub fn gauss_nod_coefficients(sigma: f64, kmax: usize, tail_tolerance: f64) -> Result<NodCoefficients> {
    let spec = GeneratorSpec::gauss(sigma)?;
    check_kmax(kmax)?;
    check_tolerance("tail tolerance", tail_tolerance)?;
    let c = gauss_c(sigma, tail_tolerance)?;
    if !(c.hi.abs() >= 1e-300) {
        return Err(Error::Conditioning(format!(
            "C(σ) = {:e} at σ = {sigma} is below 1e-300; reduce σ",
            c.hi
        )));
    }
    let two_s2 = DoubleDouble::mul_f64_exact(2.0 * sigma, sigma);
    let mut half = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let kf = k as f64;
        let numerator = sum_until_small(
            |j| {
                let r = (k + j) as f64 + 0.5;
                // (k² - r²) is exact in f64 for the ranges reached here
                let e = (DoubleDouble::from((kf - r) * (kf + r)) / two_s2).exp();
                if (k + j) % 2 == 0 {
                    e
                } else {
                    -e
                }
            },
            tail_tolerance,
            "Gaussian coefficient tail",
        )?;
        half.push(numerator / c);
    }
    Ok(assemble(spec, kmax, &half, None, Some(tail_tolerance)))
}

/// `1/cosh(x)` without overflow.
fn sech(x: f64) -> f64 {
    let x = x.abs();
    2.0 * (-x).exp() / (1.0 + (-2.0 * x).exp())
}

/// Lorentz coefficients
/// `d_k = (-1)^k sinh(σπ)/(σπ²) ∫_0^π cos(kt)/cosh(σt) dt`,
/// each integral to absolute tolerance `quadrature_tolerance`.
pub fn lorentz_nod_coefficients(sigma: f64, kmax: usize, quadrature_tolerance: f64) -> Result<NodCoefficients> {
    let spec = GeneratorSpec::lorentz(sigma)?;
    check_kmax(kmax)?;
    check_tolerance("quadrature tolerance", quadrature_tolerance)?;
    let scale = (sigma * PI).sinh() / (sigma * PI * PI);
    let mut half = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let kf = k as f64;
        let integral = adaptive_quadrature(|t: f64| (kf * t).cos() * sech(sigma * t), 0.0, PI, quadrature_tolerance)?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        half.push(DoubleDouble::from(sign * scale * integral));
    }
    Ok(assemble(spec, kmax, &half, Some(quadrature_tolerance), None))
}

/// Coefficients for either family with default tolerances.
pub fn nod_coefficients(spec: &GeneratorSpec, kmax: usize) -> Result<NodCoefficients> {
    match spec.family {
        Family::Gauss => gauss_nod_coefficients(spec.sigma, kmax, DEFAULT_TAIL_TOLERANCE),
        Family::Lorentz => lorentz_nod_coefficients(spec.sigma, kmax, DEFAULT_QUADRATURE_TOLERANCE),
    }
}

fn assemble(
    spec: GeneratorSpec,
    kmax: usize,
    half: &[DoubleDouble],
    quadrature_tolerance: Option<f64>,
    tail_tolerance: Option<f64>,
) -> NodCoefficients {
    let full: Vec<DoubleDouble> = (-(kmax as i64)..=kmax as i64).map(|k| half[k.unsigned_abs() as usize]).collect();
    NodCoefficients {
        spec,
        kmax,
        values: full.iter().map(|d| d.hi).collect(),
        lo: full.iter().map(|d| d.lo).collect(),
        quadrature_tolerance,
        tail_tolerance,
    }
}

/// `exp(-x²/2σ²)` in double-double for `x = t - k`.
fn gauss_dd(t: f64, k: f64, two_s2: DoubleDouble) -> DoubleDouble {
    let x = DoubleDouble::from_parts(t, -k);
    (-(x.sqr() / two_s2)).exp()
}

/// `φ̃(t) = Σ_{|k|≤kmax} d_k φ(t - k)`.
pub fn nod_function_eval(coeffs: &NodCoefficients, t: f64) -> f64 {
    let spec = coeffs.spec;
    let kmax = coeffs.kmax as i64;
    match spec.family {
        Family::Gauss => {
            let two_s2 = DoubleDouble::mul_f64_exact(2.0 * spec.sigma, spec.sigma);
            let mut acc = DoubleDouble::ZERO;
            for k in -kmax..=kmax {
                acc += coeffs.get_extended(k).unwrap() * gauss_dd(t, k as f64, two_s2);
            }
            acc.to_f64()
        }
        Family::Lorentz => (-kmax..=kmax)
            .map(|k| coeffs.get(k).unwrap() * generator_value(&spec, t - k as f64))
            .collect::<NeumaierSum>()
            .value(),
    }
}

/// `f̃(t) = Σ_n f(n) φ̃(t - n)`.
///
/// Away from the middle of the sample window (closer than `kmax/2` to its
/// edge) the truncated nod function is less accurate and so is the result.
pub fn interpolate(coeffs: &NodCoefficients, samples: &BTreeMap<i64, f64>, t: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("no samples given".into()));
    }
    if let Some((n, v)) = samples.iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("sample f({n}) = {v} is not finite")));
    }
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("t = {t} is not finite")));
    }
    Ok(samples
        .iter()
        .map(|(&n, &f)| f * nod_function_eval(coeffs, t - n as f64))
        .collect::<NeumaierSum>()
        .value())
}

/// `sin(πt)/(πt)`, exactly zero at nonzero integers.
pub fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-8 {
        let x = PI * t;
        return 1.0 - x * x / 6.0;
    }
    let n = t.round();
    let r = t - n;
    let s = (PI * r).sin();
    let s = if n.rem_euclid(2.0) == 0.0 { s } else { -s };
    s / (PI * t)
}

/// `‖φ̃_L(·, σ) - sinc(π·)‖²_{L₂} = I₁ - 2I₂ + 1` with
/// `I₁ = (1 - tanh(σπ)/(2σπ)) tanh(σπ)` and
/// `I₂ = (1 - e^{-2σπ})(1 + ln((1 + e^{-2σπ})/2)/(2σπ))`.
pub fn sinc_distance_closed_form(sigma: f64) -> Result<f64> {
    GeneratorSpec::lorentz(sigma)?;
    let x = sigma * PI;
    let th = x.tanh();
    let i1 = (1.0 - th / (2.0 * x)) * th;
    let em = (-2.0 * x).exp_m1(); // e^{-2x} - 1
    let i2 = -em * (1.0 + (0.5 * em).ln_1p() / (2.0 * x));
    Ok((i1 - 2.0 * i2 + 1.0).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        for m in [-3.0, -1.0, 1.0, 2.0, 17.0] {
            assert_eq!(sinc(m), 0.0);
        }
        assert!((sinc(0.5) - 2.0 / PI).abs() < 1e-16);
        assert!((sinc(-1.5) + 2.0 / (3.0 * PI)).abs() < 1e-16);
        assert!((sinc(1e-9) - 1.0).abs() < 1e-16);
    }

    #[test]
    fn coefficients_are_even() {
        let g = gauss_nod_coefficients(1.0, 10, DEFAULT_TAIL_TOLERANCE).unwrap();
        let l = lorentz_nod_coefficients(1.0, 10, 1e-12).unwrap();
        for c in [&g, &l] {
            assert_eq!(c.values().len(), 21);
            for k in 1..=10 {
                assert_eq!(c.get(k), c.get(-k));
            }
        }
    }

    #[test]
    fn gauss_c_paths_agree_near_switch() {
        // nome e^{-1/2σ²} = 0.5 at σ ≈ 0.849
        for sigma in [0.8, 0.85, 0.9] {
            let direct = {
                let mut acc = DoubleDouble::ZERO;
                for r in -60i64..60 {
                    let a = 2.0 * r as f64 + 0.5;
                    acc += DoubleDouble::from(-(a * a) / (2.0 * sigma * sigma)).exp() * (4.0 * r as f64 + 1.0);
                }
                acc.to_f64()
            };
            let c = gauss_c(sigma, DEFAULT_TAIL_TOLERANCE).unwrap().to_f64();
            assert!(((c - direct) / c).abs() < 1e-13, "σ={sigma}: {c} vs {direct}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gauss_nod_coefficients(0.0, 5, 1e-20).is_err());
        assert!(gauss_nod_coefficients(1.0, 0, 1e-20).is_err());
        assert!(lorentz_nod_coefficients(1.0, 5, 0.0).is_err());
        let c = gauss_nod_coefficients(1.0, 5, 1e-20).unwrap();
        assert!(interpolate(&c, &BTreeMap::new(), 0.0).is_err());
    }

    #[test]
    fn huge_width_is_a_conditioning_error() {
        match gauss_nod_coefficients(13.0, 5, 1e-20) {
            Err(Error::Conditioning(_)) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sinc_distance_decreases() {
        let v: Vec<f64> = [0.5, 1.0, 2.0, 5.0].iter().map(|&s| sinc_distance_closed_form(s).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] < w[0]));
    }
}
