//! Finite sections of the Gram matrix of a shift system.
//!
//! For shifts `k ∈ [-(n-1)/2, (n-1)/2]` the Gram matrix is Toeplitz with
//!
//! ```text
//! Gauss:    ⟨φ(·-j), φ(·-k)⟩ = σ√π · exp(-(j-k)²/(4σ²))
//! Lorentz:  ⟨φ(·-j), φ(·-k)⟩ = 2πσ³ / (4σ² + (j-k)²)
//! ```
//!
//! Its extreme eigenvalues lie inside the Riesz bounds `[A, B]` and move
//! outward as `n` grows (nested principal sections interlace).

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::systems::{Family, GeneratorSpec, RieszBounds};

/// Below this lower Riesz bound the λ_min bracketing is not enforced:
/// dense double-precision eigen-solvers cannot resolve it.
pub const BRACKETING_FLOOR: f64 = 1e-10;

pub const MAX_SECTION: usize = 401;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramSummary {
    pub spec: GeneratorSpec,
    pub n: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Set when λ_min is below what the solver can resolve.
    pub conditioning: Option<String>,
}

impl GramSummary {
    pub fn condition_number(&self) -> f64 {
        self.lambda_max / self.lambda_min
    }

    /// Absolute eigenvalue error scale of the dense solver.
    pub fn solver_floor(&self) -> f64 {
        self.n as f64 * f64::EPSILON * self.lambda_max.abs()
    }
}

/// Inner product of two shifts that are `offset` apart.
pub fn gram_entry(spec: &GeneratorSpec, offset: i64) -> f64 {
    let s = spec.sigma;
    let d = offset as f64;
    match spec.family {
        Family::Gauss => s * PI.sqrt() * (-d * d / (4.0 * s * s)).exp(),
        Family::Lorentz => 2.0 * PI * s.powi(3) / (4.0 * s * s + d * d),
    }
}

fn check_section(n: usize, max: usize) -> Result<()> {
    if n < 3 || n % 2 == 0 || n > max {
        return Err(Error::InvalidArgument(format!(
            "Gram section size must be odd with 3 <= n <= {max}, got {n}"
        )));
    }
    Ok(())
}

pub fn gram_matrix(spec: &GeneratorSpec, n: usize) -> Result<DMatrix<f64>> {
    spec.validate()?;
    check_section(n, usize::MAX)?;
    let column: Vec<f64> = (0..n as i64).map(|d| gram_entry(spec, d)).collect();
    Ok(DMatrix::from_fn(n, n, |i, j| column[i.abs_diff(j)]))
}

/// Extreme eigenvalues of the `n × n` section, `3 <= n <= 401`, `n` odd.
pub fn gram_eigen_bounds(spec: &GeneratorSpec, n: usize) -> Result<GramSummary> {
    check_section(n, MAX_SECTION)?;
    let matrix = gram_matrix(spec, n)?;
    let eigen = SymmetricEigen::try_new(matrix, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numeric(format!("symmetric eigen-solver did not converge (n={n})")))?;
    let (lambda_min, lambda_max) = eigen
        .eigenvalues
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let mut summary = GramSummary {
        spec: *spec,
        n,
        lambda_min,
        lambda_max,
        conditioning: None,
    };
    let floor = summary.solver_floor();
    if lambda_min <= floor {
        summary.conditioning = Some(format!(
            "lambda_min = {lambda_min:e} is below the solver floor {floor:e}; \
             positive definiteness is not resolved in double precision"
        ));
    }
    Ok(summary)
}

/// Outcome of comparing a Gram section with the Riesz bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bracketing {
    pub lower_enforced: bool,
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// Largest violation found (0 when bracketed).
    pub excess: f64,
}

impl Bracketing {
    pub fn holds(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// `A <= λ_min <= λ_max <= B`, allowing the solver's rounding floor.
///
/// Where `A < BRACKETING_FLOOR` only `λ_min >= -floor` is required.
pub fn check_bracketing(summary: &GramSummary, bounds: &RieszBounds) -> Bracketing {
    let floor = summary.solver_floor();
    let lower_enforced = bounds.lower >= BRACKETING_FLOOR;
    let lower_excess = if lower_enforced {
        bounds.lower - summary.lambda_min - floor
    } else {
        -summary.lambda_min - floor
    };
    let upper_excess = summary.lambda_max - bounds.upper - floor;
    let order_ok = summary.lambda_min <= summary.lambda_max;
    Bracketing {
        lower_enforced,
        lower_ok: lower_excess <= 0.0 && order_ok,
        upper_ok: upper_excess <= 0.0,
        excess: lower_excess.max(upper_excess).max(0.0),
    }
}
