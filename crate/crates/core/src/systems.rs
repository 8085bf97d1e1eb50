//! Closed forms for the Gaussian and Cauchy–Lorentz shift systems.
//!
//! Fourier transforms are unitary, `φ̂(ω) = (2π)^{-1/2} ∫ φ(t) e^{-iωt} dt`.
//! The spectral function `P(ω) = 2π Σ_k |φ̂(ω + 2πk)|²` is 2π-periodic and its
//! extremes over a period are the Riesz constants of `{φ(· - k)}`. The mask
//! `Φ(t) = Σ_k φ(k) e^{-ikt}` and the nodal spectral function
//! `P̃ = P / Φ²` do the same for the cardinal (nod) system.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::theta::{self, EvalPolicy, ThetaKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gauss,
    Lorentz,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gauss => "gauss",
            Family::Lorentz => "lorentz",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gauss" | "gaussian" => Ok(Family::Gauss),
            "lorentz" | "cauchy" => Ok(Family::Lorentz),
            other => Err(Error::InvalidArgument(format!("unknown family '{other}'"))),
        }
    }
}

/// A generator family together with its width `σ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub sigma: f64,
}

impl GeneratorSpec {
    pub fn new(family: Family, sigma: f64) -> Result<Self> {
        let spec = Self { family, sigma };
        spec.validate()?;
        Ok(spec)
    }

    pub fn gauss(sigma: f64) -> Result<Self> {
        Self::new(Family::Gauss, sigma)
    }

    pub fn lorentz(sigma: f64) -> Result<Self> {
        Self::new(Family::Lorentz, sigma)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sigma.is_finite() && self.sigma > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!("sigma must be positive and finite, got {}", self.sigma)))
        }
    }

    /// Nome `e^{-1/(4σ²)}` of the Gaussian spectral function.
    pub fn spectral_nome(&self) -> f64 {
        (-self.spectral_log_nome()).exp()
    }

    /// Nome `e^{-1/(2σ²)}` of the Gaussian mask.
    pub fn mask_nome(&self) -> f64 {
        (-self.mask_log_nome()).exp()
    }

    /// `-ln` of [`Self::spectral_nome`], i.e. `1/(4σ²)`.
    pub fn spectral_log_nome(&self) -> f64 {
        1.0 / (4.0 * self.sigma * self.sigma)
    }

    /// `-ln` of [`Self::mask_nome`], i.e. `1/(2σ²)`.
    pub fn mask_log_nome(&self) -> f64 {
        1.0 / (2.0 * self.sigma * self.sigma)
    }
}

/// Lower and upper Riesz constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RieszBounds {
    pub lower: f64,
    pub upper: f64,
    pub ratio: f64,
}

impl RieszBounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0 && lower <= upper && upper.is_finite()) {
            return Err(Error::Numeric(format!(
                "Riesz bounds must satisfy 0 < A <= B, got A={lower:e}, B={upper:e}"
            )));
        }
        Ok(Self {
            lower,
            upper,
            ratio: upper / lower,
        })
    }
}

/// Reduce `ω` into `[0, 2π)`.
pub fn reduce_period(omega: f64) -> f64 {
    let r = omega.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `cosh(a) / sinh(b)` for `|a| <= b`, without overflow.
fn cosh_over_sinh(a: f64, b: f64) -> f64 {
    let a = a.abs();
    (a - b).exp() * (1.0 + (-2.0 * a).exp()) / -(-2.0 * b).exp_m1()
}

fn sech(x: f64) -> f64 {
    let x = x.abs();
    2.0 * (-x).exp() / (1.0 + (-2.0 * x).exp())
}

// the nome enters through L = -ln q so its rounding never reaches the exponent
fn gauss_theta(kind: ThetaKind, t: f64, big_l: f64) -> Result<f64> {
    theta::theta_log_nome(kind, t, big_l, &EvalPolicy::default())
}

/// φ_G(t) = exp(-t²/2σ²) or φ_L(t) = σ²/(σ²+t²).
pub fn generator_value(spec: &GeneratorSpec, t: f64) -> f64 {
    let s = spec.sigma;
    match spec.family {
        Family::Gauss => (-t * t / (2.0 * s * s)).exp(),
        Family::Lorentz => s * s / (s * s + t * t),
    }
}

/// Unitary Fourier image: `σ e^{-σ²ω²/2}` or `σ √(π/2) e^{-σ|ω|}`.
pub fn fourier_image(spec: &GeneratorSpec, omega: f64) -> f64 {
    let s = spec.sigma;
    match spec.family {
        Family::Gauss => s * (-s * s * omega * omega / 2.0).exp(),
        Family::Lorentz => s * FRAC_PI_2.sqrt() * (-s * omega.abs()).exp(),
    }
}

/// Mask `Φ(t) = Σ_k φ(k) e^{-ikt}` in closed form.
pub fn mask_phi(spec: &GeneratorSpec, t: f64) -> Result<f64> {
    spec.validate()?;
    let s = spec.sigma;
    match spec.family {
        Family::Lorentz => {
            let t = reduce_period(t);
            Ok(s * PI * cosh_over_sinh(s * (t - PI), s * PI))
        }
        Family::Gauss => gauss_theta(ThetaKind::Three, t / 2.0, spec.mask_log_nome()),
    }
}

/// Spectral function `P(ω) = 2π Σ_k |φ̂(ω+2πk)|²` in closed form.
pub fn spectral_p(spec: &GeneratorSpec, omega: f64) -> Result<f64> {
    spec.validate()?;
    let s = spec.sigma;
    match spec.family {
        Family::Lorentz => {
            let w = reduce_period(omega);
            Ok(s * s * PI * PI * cosh_over_sinh(2.0 * s * (w - PI), 2.0 * s * PI))
        }
        Family::Gauss => {
            Ok(s * PI.sqrt() * gauss_theta(ThetaKind::Three, omega / 2.0, spec.spectral_log_nome())?)
        }
    }
}

/// Riesz constants of `{φ(· - k)}`: `P(π)` and `P(0)`.
pub fn riesz_constants(spec: &GeneratorSpec) -> Result<RieszBounds> {
    spec.validate()?;
    let s = spec.sigma;
    match spec.family {
        Family::Lorentz => {
            let x = 2.0 * s * PI;
            let lower = s * s * PI * PI * 2.0 * (-x).exp() / -(-2.0 * x).exp_m1();
            let upper = s * s * PI * PI / x.tanh();
            RieszBounds::new(lower, upper)
        }
        Family::Gauss => {
            let q = spec.spectral_log_nome();
            let scale = s * PI.sqrt();
            let lower = scale * gauss_theta(ThetaKind::Three, FRAC_PI_2, q)?;
            let upper = scale * gauss_theta(ThetaKind::Three, 0.0, q)?;
            RieszBounds::new(lower, upper)
        }
    }
}

/// `σ√π / θ₃(0, q)`: the Gaussian nodal lower bound via Watson's identity.
fn gauss_nodal_scale(spec: &GeneratorSpec) -> Result<f64> {
    Ok(spec.sigma * PI.sqrt() / gauss_theta(ThetaKind::Three, 0.0, spec.spectral_log_nome())?)
}

/// Nodal spectral function `P̃(ω) = P(ω) / Φ(ω)²`.
///
/// Gauss uses `P̃(ω) = σ√π (2 - g(ω/2)) / θ₃(0, q)` with the Watson gap `g`
/// (see [`theta::watson_gap`]), which equals the quotient of theta values
/// but stays accurate when both are around 1e-100.
pub fn nod_spectral_p(spec: &GeneratorSpec, omega: f64) -> Result<f64> {
    spec.validate()?;
    let s = spec.sigma;
    match spec.family {
        Family::Lorentz => {
            let w = reduce_period(omega);
            let half = 0.5 * (s * PI).tanh();
            let sh = sech(s * (w - PI));
            Ok(half * (2.0 - sh * sh))
        }
        Family::Gauss => {
            let gap = theta::watson_gap_log(omega / 2.0, spec.mask_log_nome(), &EvalPolicy::default())?;
            Ok(gauss_nodal_scale(spec)? * (2.0 - gap))
        }
    }
}

/// Riesz constants of the nodal system: `P̃(π)` and `P̃(0)`.
pub fn nod_riesz_constants(spec: &GeneratorSpec) -> Result<RieszBounds> {
    spec.validate()?;
    let s = spec.sigma;
    match spec.family {
        Family::Lorentz => {
            let lower = 0.5 * (s * PI).tanh();
            let sh = sech(s * PI);
            RieszBounds::new(lower, lower * (2.0 - sh * sh))
        }
        Family::Gauss => {
            let lower = gauss_nodal_scale(spec)?;
            let gap = theta::watson_gap_log(0.0, spec.mask_log_nome(), &EvalPolicy::default())?;
            RieszBounds::new(lower, lower * (2.0 - gap))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn generator_examples() {
        let g1 = GeneratorSpec::gauss(1.0).unwrap();
        assert_eq!(generator_value(&g1, 0.0), 1.0);
        let l2 = GeneratorSpec::lorentz(2.0).unwrap();
        assert_eq!(generator_value(&l2, 2.0), 0.5);
        let g05 = GeneratorSpec::gauss(0.5).unwrap();
        assert_relative_eq!(generator_value(&g05, 1.0), (-2.0f64).exp(), max_relative = 1e-15);
        for t in [0.3, 1.7, 9.0] {
            assert_eq!(generator_value(&l2, t), generator_value(&l2, -t));
            assert_eq!(generator_value(&g05, t), generator_value(&g05, -t));
        }
    }

    #[test]
    fn invalid_sigma_rejected() {
        assert!(GeneratorSpec::gauss(0.0).is_err());
        assert!(GeneratorSpec::lorentz(-1.0).is_err());
        assert!(GeneratorSpec::lorentz(f64::NAN).is_err());
        let bogus = GeneratorSpec {
            family: Family::Gauss,
            sigma: -2.0,
        };
        assert!(spectral_p(&bogus, 0.0).is_err());
    }

    #[test]
    fn fourier_peaks() {
        assert_eq!(fourier_image(&GeneratorSpec::gauss(1.0).unwrap(), 0.0), 1.0);
        assert_relative_eq!(
            fourier_image(&GeneratorSpec::lorentz(1.0).unwrap(), 0.0),
            FRAC_PI_2.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn lorentz_mask_at_half_period() {
        let l = GeneratorSpec::lorentz(1.0).unwrap();
        assert_relative_eq!(mask_phi(&l, PI).unwrap(), PI / PI.sinh(), max_relative = 1e-15);
        // periodic reduction
        assert_relative_eq!(
            mask_phi(&l, 1.0).unwrap(),
            mask_phi(&l, 1.0 + 4.0 * PI).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn lorentz_constants_unit_width() {
        let b = riesz_constants(&GeneratorSpec::lorentz(1.0).unwrap()).unwrap();
        assert_relative_eq!(b.lower, PI * PI / (2.0 * PI).sinh(), max_relative = 1e-14);
        assert_relative_eq!(b.ratio, (2.0 * PI).cosh(), max_relative = 1e-14);
        assert_relative_eq!(
            spectral_p(&GeneratorSpec::lorentz(1.0).unwrap(), PI).unwrap(),
            b.lower,
            max_relative = 1e-15
        );
    }

    #[test]
    fn nodal_lorentz_symmetry_about_pi() {
        for s in [0.3, 1.0, 4.0] {
            let l = GeneratorSpec::lorentz(s).unwrap();
            assert_relative_eq!(
                nod_spectral_p(&l, 0.0).unwrap(),
                nod_spectral_p(&l, TAU - 1e-300).unwrap(),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                nod_spectral_p(&l, PI - 0.4).unwrap(),
                nod_spectral_p(&l, PI + 0.4).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn hyperbolic_helpers_survive_large_widths() {
        let l = GeneratorSpec::lorentz(100.0).unwrap();
        let b = riesz_constants(&l).unwrap();
        assert!(b.lower > 0.0 && b.upper.is_finite());
        assert!(mask_phi(&l, 0.0).unwrap().is_finite());
        assert_relative_eq!(nod_riesz_constants(&l).unwrap().lower, 0.5, max_relative = 1e-15);
        // A_L(200) ~ e^{-400π} underflows; reported, not returned as zero
        assert!(riesz_constants(&GeneratorSpec::lorentz(200.0).unwrap()).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("Gauss".parse::<Family>().unwrap(), Family::Gauss);
        assert_eq!("lorentz".parse::<Family>().unwrap(), Family::Lorentz);
        assert!("both".parse::<Family>().is_err());
    }
}
