//! Truncated direct sums for the Poisson, mask and spectral identities.
//!
//! These deliberately avoid the closed forms in [`crate::systems`]: they sum
//! the defining series term by term so that the two can be compared.

use std::f64::consts::{PI, TAU};

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};
use crate::systems::{fourier_image, generator_value, reduce_period, Family, GeneratorSpec};

fn check_kmax(kmax: usize) -> Result<()> {
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be at least 1".into()));
    }
    Ok(())
}

/// `2π Σ_{|k|≤kmax} |φ̂(ω + 2πk)|²` with `ω` first reduced into `[0, 2π)`.
pub fn direct_spectral_sum(spec: &GeneratorSpec, omega: f64, kmax: usize) -> Result<f64> {
    spec.validate()?;
    check_kmax(kmax)?;
    let w = reduce_period(omega);
    let k = kmax as i64;
    let acc: NeumaierSum = (-k..=k)
        .map(|j| {
            let f = fourier_image(spec, w + TAU * j as f64);
            f * f
        })
        .collect();
    Ok(TAU * acc.value())
}

/// Upper bound on `|P(ω) - direct_spectral_sum(ω, kmax)|` for `ω ∈ [0, 2π)`.
pub fn spectral_tail_bound(spec: &GeneratorSpec, kmax: usize) -> f64 {
    // every dropped index has |ω + 2πk| >= 2π(|k| - 1), and there are two per |k|
    let s = spec.sigma;
    let j = kmax as f64;
    match spec.family {
        Family::Lorentz => {
            let r = (-4.0 * PI * s).exp();
            2.0 * PI * PI * s * s * r.powf(j) / (1.0 - r)
        }
        Family::Gauss => {
            let a = 4.0 * PI * PI * s * s;
            let first = (-a * j * j).exp();
            let ratio = (-a * (2.0 * j + 1.0)).exp();
            4.0 * PI * s * s * first / (1.0 - ratio)
        }
    }
}

/// Samples side of the Poisson identity: `Σ_k φ(k) e^{-ikt}` (real by evenness).
///
/// Gaussian samples are summed for `|k| <= kmax`. Lorentz samples decay like
/// `σ²/k²`, so the part beyond `kmax` is added through
/// `σ²/(σ²+k²) = σ²/k² - σ⁴/k⁴ + σ⁶/k⁶ - σ⁸/(k⁶(σ²+k²))`,
/// where the first three tails come from Bernoulli-polynomial closed forms of
/// `Σ cos(kt)/k^{2n}` and the `O(k⁻⁸)` remainder is dropped. The dropped part
/// is at most `2σ⁸/(7 kmax⁷)`.
pub fn direct_mask_sum(spec: &GeneratorSpec, t: f64, kmax: usize) -> Result<f64> {
    spec.validate()?;
    check_kmax(kmax)?;
    let t = reduce_period(t);
    let mut acc = NeumaierSum::new();
    acc.add(generator_value(spec, 0.0));
    for k in 1..=kmax {
        let kf = k as f64;
        acc.add(2.0 * generator_value(spec, kf) * (kf * t).cos());
    }
    if spec.family == Family::Lorentz {
        let s2 = spec.sigma * spec.sigma;
        let tail = s2 * cosine_zeta_tail(1, t, kmax) - s2 * s2 * cosine_zeta_tail(2, t, kmax)
            + s2 * s2 * s2 * cosine_zeta_tail(3, t, kmax);
        acc.add(2.0 * tail);
    }
    Ok(acc.value())
}

/// Fourier side of the Poisson identity: `√(2π) Σ_{|k|≤kmax} φ̂(t + 2πk)`.
pub fn direct_mask_fourier_sum(spec: &GeneratorSpec, t: f64, kmax: usize) -> Result<f64> {
    spec.validate()?;
    check_kmax(kmax)?;
    let t = reduce_period(t);
    let k = kmax as i64;
    let acc: NeumaierSum = (-k..=k).map(|j| fourier_image(spec, t + TAU * j as f64)).collect();
    Ok(TAU.sqrt() * acc.value())
}

/// Nodal spectral function from direct sums: `P(ω) / Φ(ω)²`, both sides taken
/// over `|k| <= kmax` on the Fourier side.
pub fn direct_nod_spectral_sum(spec: &GeneratorSpec, omega: f64, kmax: usize) -> Result<f64> {
    let p = direct_spectral_sum(spec, omega, kmax)?;
    let phi = direct_mask_fourier_sum(spec, omega, kmax)?;
    Ok(p / (phi * phi))
}

/// `Σ_{k>kmax} cos(kt) / k^{2n}` for `t ∈ [0, 2π]`, `n ∈ {1, 2, 3}`.
fn cosine_zeta_tail(n: u32, t: f64, kmax: usize) -> f64 {
    let x = t / TAU;
    let full = match n {
        1 => PI * PI * (x * x - x + 1.0 / 6.0),
        2 => -PI.powi(4) / 3.0 * (x * x * (x * x - 2.0 * x + 1.0) - 1.0 / 30.0),
        3 => {
            let x2 = x * x;
            2.0 * PI.powi(6) / 45.0
                * (x2 * x2 * x2 - 3.0 * x2 * x2 * x + 2.5 * x2 * x2 - 0.5 * x2 + 1.0 / 42.0)
        }
        _ => unreachable!("only even powers 2, 4, 6 are tabulated"),
    };
    let mut acc = NeumaierSum::new();
    acc.add(full);
    for k in 1..=kmax {
        let kf = k as f64;
        acc.add(-(kf * t).cos() / kf.powi(2 * n as i32));
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{mask_phi, spectral_p};

    #[test]
    fn lorentz_spectral_minimum() {
        let spec = GeneratorSpec::lorentz(1.0).unwrap();
        let v = direct_spectral_sum(&spec, PI, 40).unwrap();
        assert!((v - PI * PI / (TAU.sinh())).abs() < 1e-12);
    }

    #[test]
    fn gauss_spectral_maximum() {
        let spec = GeneratorSpec::gauss(0.5).unwrap();
        let v = direct_spectral_sum(&spec, 0.0, 10).unwrap();
        assert!((v - spectral_p(&spec, 0.0).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn central_term_is_below_sum() {
        let spec = GeneratorSpec::lorentz(0.3).unwrap();
        let w = 2.0;
        let central = TAU * fourier_image(&spec, w).powi(2);
        assert!(central <= direct_spectral_sum(&spec, w, 5).unwrap());
    }

    #[test]
    fn tail_bound_covers_truncation() {
        for family in [Family::Gauss, Family::Lorentz] {
            let spec = GeneratorSpec::new(family, 0.3).unwrap();
            for kmax in [1, 2, 3] {
                let bound = spectral_tail_bound(&spec, kmax);
                for w in [0.0, 1.0, 3.0, 6.0] {
                    let diff = spectral_p(&spec, w).unwrap() - direct_spectral_sum(&spec, w, kmax).unwrap();
                    assert!(diff >= -1e-14 && diff <= bound + 1e-14, "{family} k={kmax} ω={w}");
                }
            }
        }
    }

    #[test]
    fn zeta_tails_at_zero() {
        // ζ(2) - 1, ζ(4) - 1, ζ(6) - 1
        assert!((cosine_zeta_tail(1, 0.0, 1) - (PI * PI / 6.0 - 1.0)).abs() < 1e-15);
        assert!((cosine_zeta_tail(2, 0.0, 1) - (PI.powi(4) / 90.0 - 1.0)).abs() < 1e-15);
        assert!((cosine_zeta_tail(3, 0.0, 1) - (PI.powi(6) / 945.0 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn mask_examples() {
        let l = GeneratorSpec::lorentz(1.0).unwrap();
        let v = direct_mask_sum(&l, PI, 60).unwrap();
        assert!((v - PI / PI.sinh()).abs() < 1e-10);

        let g = GeneratorSpec::gauss(1.0).unwrap();
        let v = direct_mask_sum(&g, 0.0, 20).unwrap();
        let theta: f64 = 1.0 + 2.0 * (1..40).map(|k| (-(k * k) as f64 / 2.0).exp()).sum::<f64>();
        assert!((v - theta).abs() < 1e-14);
    }

    #[test]
    fn mask_is_periodic() {
        for spec in [GeneratorSpec::lorentz(0.8).unwrap(), GeneratorSpec::gauss(1.3).unwrap()] {
            for t in [0.25, 1.0, 2.5] {
                let a = direct_mask_sum(&spec, t, 30).unwrap();
                let b = direct_mask_sum(&spec, t + TAU, 30).unwrap();
                assert!((a - b).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn both_poisson_sides_match_closed_form() {
        for family in [Family::Gauss, Family::Lorentz] {
            let spec = GeneratorSpec::new(family, 0.8).unwrap();
            for t in [0.0, 1.0, 2.2, PI, 5.9] {
                let exact = mask_phi(&spec, t).unwrap();
                assert!((direct_mask_sum(&spec, t, 60).unwrap() - exact).abs() < 1e-10);
                assert!((direct_mask_fourier_sum(&spec, t, 40).unwrap() - exact).abs() < 1e-12);
            }
        }
    }
}
