//! Globally adaptive 15-point Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_subdivisions: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // part of `error` that is pure roundoff (50ε ∫|f|)
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

// QUADPACK's error rescaling.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut res_abs = kronrod.abs();
    let mut fv = [(0.0, 0.0); 7];
    for (j, x) in XGK.iter().take(7).enumerate() {
        let dx = half * x;
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let scale = half.abs();
    Panel {
        a,
        b,
        value: kronrod * half,
        error: rescale_error((kronrod - gauss) * half, res_abs * scale, res_asc * scale),
        floor: 50.0 * f64::EPSILON * res_abs * scale,
    }
}

/// Integrate `f` over `[a, b]` to absolute tolerance `config.abs_tol`.
///
/// The error estimate never drops below the roundoff level `50ε ∫|f|`, so
/// that part is excluded when testing against the tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, config: &QuadratureConfig) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidArgument(format!("need finite a < b, got [{a}, {b}]")));
    }
    if !(config.abs_tol > 0.0) {
        return Err(Error::InvalidArgument("quadrature tolerance must be positive".into()));
    }
    let mut heap = BinaryHeap::new();
    let first = gk15(&f, a, b);
    let mut total_value = first.value;
    let mut total_error = first.error;
    let mut total_floor = first.floor;
    heap.push(first);
    let mut evaluations = 15;
    let mut splits = 0;
    while total_error - total_floor > config.abs_tol {
        if splits >= config.max_subdivisions {
            return Err(Error::Convergence {
                what: "adaptive quadrature",
                steps: splits,
                estimate: total_value,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(&f, worst.a, mid);
        let right = gk15(&f, mid, worst.b);
        evaluations += 30;
        splits += 1;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        total_floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
        if splits % 64 == 0 {
            // drift control for the running totals
            total_value = heap.iter().map(|p| p.value).collect::<NeumaierSum>().value();
            total_error = heap.iter().map(|p| p.error).sum();
            total_floor = heap.iter().map(|p| p.floor).sum();
        }
    }
    let value = heap.iter().map(|p| p.value).collect::<NeumaierSum>().value();
    let abs_error = heap.iter().map(|p| p.error).sum();
    Ok(Quadrature {
        value,
        abs_error,
        evaluations,
    })
}

/// `∫_a^b f` to absolute tolerance `tol` (default subdivision budget).
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let config = QuadratureConfig {
        abs_tol: tol,
        ..QuadratureConfig::default()
    };
    Ok(integrate(f, a, b, &config)?.value)
}

/// Integrate across sorted breakpoints (kinks or jumps of `f`), sharing `tol`
/// between panels in proportion to their length.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64], tol: f64) -> Result<f64> {
    if breakpoints.len() < 2 {
        return Err(Error::InvalidArgument("need at least two breakpoints".into()));
    }
    let span = breakpoints[breakpoints.len() - 1] - breakpoints[0];
    let mut acc = NeumaierSum::new();
    for w in breakpoints.windows(2) {
        let share = tol * (w[1] - w[0]) / span;
        acc.add(adaptive_quadrature(&f, w[0], w[1], share)?);
    }
    Ok(acc.value())
}
