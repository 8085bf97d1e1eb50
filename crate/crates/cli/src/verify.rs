//! The verification suite behind `shiftriesz verify`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use shiftriesz::nodal::{nod_coefficients, sinc_distance_closed_form};
use shiftriesz::oracle::gram::{check_bracketing, gram_eigen_bounds};
use shiftriesz::oracle::series::{direct_mask_fourier_sum, direct_mask_sum, direct_spectral_sum};
use shiftriesz::oracle::{monotonicity_check, sinc_distance_quadrature};
use shiftriesz::reference::{compare_table, display_precision, Precision, ReferenceRow, TABLE_SIGMAS};
use shiftriesz::systems::{mask_phi, nod_riesz_constants, riesz_constants, spectral_p, Family, GeneratorSpec};
use shiftriesz::theta::{watson_residual, EvalPolicy};
use shiftriesz::Result;

const FAMILIES: [Family; 2] = [Family::Gauss, Family::Lorentz];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Half a unit in the last printed place of `cell`.
fn half_unit(cell: &str) -> f64 {
    let value: f64 = cell.parse().unwrap_or(f64::NAN);
    match display_precision(cell) {
        Ok(Precision::Decimals(d)) => 0.5 * 10f64.powi(-(d as i32)),
        Ok(Precision::Mantissa(d)) => 0.5 * 10f64.powi(value.abs().log10().floor() as i32 - d as i32),
        Err(_) => f64::NAN,
    }
}

/// Table cells: residual is the distance to the printed value in half units
/// of its last digit, so anything up to 1 rounds to it.
fn table_checks(reference: &[ReferenceRow]) -> Result<Vec<Check>> {
    Ok(compare_table(reference)?
        .into_iter()
        .map(|c| {
            let published: f64 = c.published.parse().unwrap_or(f64::NAN);
            let residual = (c.computed - published).abs() / half_unit(&c.published);
            Check {
                name: format!("table2 {} sigma={}", c.column, c.sigma),
                residual,
                tolerance: 1.0,
                pass: c.matches,
            }
        })
        .collect())
}

fn lorentz_ratio_identity() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for s in TABLE_SIGMAS {
        let b = riesz_constants(&GeneratorSpec::lorentz(s)?)?;
        let want = (2.0 * s * PI).cosh();
        worst = worst.max(((b.ratio - want) / want).abs());
    }
    Ok(Check::new("lorentz ratio identity", worst, 1e-14))
}

fn gram_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for family in FAMILIES {
        for s in [0.4, 0.6, 1.0] {
            let spec = GeneratorSpec::new(family, s)?;
            let bounds = riesz_constants(&spec)?;
            let mut worst: f64 = 0.0;
            let mut prev: Option<(f64, f64)> = None;
            for n in [11, 21, 41, 81] {
                let g = gram_eigen_bounds(&spec, n)?;
                worst = worst.max(check_bracketing(&g, &bounds).excess);
                if let Some((lo, hi)) = prev {
                    let slack = g.solver_floor();
                    worst = worst.max(g.lambda_min - lo - slack).max(hi - g.lambda_max - slack);
                }
                prev = Some((g.lambda_min, g.lambda_max));
                if family == Family::Lorentz && s == 0.6 && n == 81 {
                    let dev = ((g.lambda_min - 0.164) / 0.164).abs();
                    checks.push(Check::new("gram lambda_min lorentz sigma=0.6 n=81", dev, 0.05));
                }
            }
            checks.push(Check::new(format!("gram bracketing {family} sigma={s}"), worst, 0.0));
        }
    }
    Ok(checks)
}

fn poisson_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for family in FAMILIES {
        for s in [0.5, 1.0, 2.0] {
            let spec = GeneratorSpec::new(family, s)?;
            let mut worst: f64 = 0.0;
            for i in 0..200 {
                let t = TAU * i as f64 / 200.0;
                let phi = mask_phi(&spec, t)?;
                let p = spectral_p(&spec, t)?;
                worst = worst
                    .max((direct_mask_sum(&spec, t, 60)? - phi).abs())
                    .max((direct_mask_fourier_sum(&spec, t, 40)? - phi).abs())
                    .max((direct_spectral_sum(&spec, t, 40)? - p).abs());
            }
            checks.push(Check::new(format!("poisson {family} sigma={s}"), worst, 1e-10));
        }
    }
    Ok(checks)
}

fn nod_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for family in FAMILIES {
        for s in [0.5, 1.0, 2.0, 3.0] {
            let coeffs = nod_coefficients(&GeneratorSpec::new(family, s)?, 40)?;
            checks.push(Check::new(format!("nod residual {family} sigma={s}"), coeffs.nod_residual(10), 1e-6));
        }
    }
    Ok(checks)
}

fn nodal_limit_checks() -> Result<Vec<Check>> {
    let l5 = nod_riesz_constants(&GeneratorSpec::lorentz(5.0)?)?;
    let g5 = nod_riesz_constants(&GeneratorSpec::gauss(5.0)?)?;
    let dev = |b: shiftriesz::RieszBounds| (b.lower - 0.5).abs().max((b.upper - 1.0).abs());
    let mut out_of_order = 0usize;
    for family in FAMILIES {
        let mut prev = f64::NEG_INFINITY;
        for s in TABLE_SIGMAS {
            let r = nod_riesz_constants(&GeneratorSpec::new(family, s)?)?.ratio;
            if !(r > 1.0 && r <= 2.0) || (s >= 1.0 && r < prev) {
                out_of_order += 1;
            }
            if s >= 1.0 {
                prev = r;
            }
        }
    }
    Ok(vec![
        Check::new("nodal limit lorentz sigma=5", dev(l5), 1e-12),
        Check::new("nodal limit gauss sigma=5", dev(g5), 1e-4),
        Check::new("nodal ratio range and order", out_of_order as f64, 0.0),
    ])
}

fn theta_checks() -> Result<Vec<Check>> {
    let policy = EvalPolicy::default();
    let nomes = [0.3, 0.6, 0.9, (-0.25f64).exp(), (-0.01f64).exp()];
    let mut checks = Vec::new();
    for q in nomes {
        let mut worst: f64 = 0.0;
        for i in 0..=200 {
            let t = PI * i as f64 / 200.0;
            worst = worst.max(watson_residual(t, q, &policy)?.abs());
        }
        checks.push(Check::new(format!("watson identity q={q}"), worst, 1e-10));
    }
    for q in nomes {
        let r = monotonicity_check(q, 500)?;
        checks.push(Check::new(format!("monotonicity q={q}"), r.violations.len() as f64, 0.0));
    }
    Ok(checks)
}

fn sinc_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for s in [0.5, 1.0, 2.0] {
        let d = (sinc_distance_closed_form(s)? - sinc_distance_quadrature(s, 1e-11)?).abs();
        checks.push(Check::new(format!("sinc distance sigma={s}"), d, 1e-8));
    }
    let values = [0.5, 1.0, 2.0, 5.0]
        .iter()
        .map(|&s| sinc_distance_closed_form(s))
        .collect::<Result<Vec<f64>>>()?;
    let rises = values.windows(2).filter(|w| w[1] >= w[0]).count();
    checks.push(Check::new("sinc distance ordering", rises as f64, 0.0));
    Ok(checks)
}

fn mask_duality_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for family in FAMILIES {
        let spec = GeneratorSpec::new(family, 1.0)?;
        let coeffs = nod_coefficients(&spec, 30)?;
        let mut worst: f64 = 0.0;
        for j in 0..50 {
            let t = TAU * (j as f64 + 0.5) / 50.0;
            worst = worst.max((coeffs.mask(t) * mask_phi(&spec, t)? - 1.0).abs());
        }
        checks.push(Check::new(format!("mask duality {family}"), worst, 2e-6));
    }
    Ok(checks)
}

pub fn run(reference: &[ReferenceRow]) -> Result<Report> {
    let mut checks = table_checks(reference)?;
    checks.push(lorentz_ratio_identity()?);
    checks.extend(gram_checks()?);
    checks.extend(poisson_checks()?);
    checks.extend(nod_checks()?);
    checks.extend(nodal_limit_checks()?);
    checks.extend(theta_checks()?);
    checks.extend(sinc_checks()?);
    checks.extend(mask_duality_checks()?);
    let passed = checks.iter().filter(|c| c.pass).count();
    let failed = checks.len() - passed;
    Ok(Report {
        checks,
        summary: Summary { passed, failed },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_units() {
        assert_eq!(half_unit("17.46"), 0.005);
        assert!((half_unit("6.45e-4") - 5e-7).abs() < 1e-20);
        assert!((half_unit("9.67e3") - 5.0).abs() < 1e-12);
    }

    #[test]
    fn check_passes_on_boundary() {
        assert!(Check::new("x", 0.0, 0.0).pass);
        assert!(!Check::new("x", 1e-300, 0.0).pass);
        assert!(!Check::new("x", f64::NAN, 1.0).pass);
    }
}
