//! Compensated accumulation and double-double arithmetic.
//!
//! The Gaussian cardinal coefficients at moderate widths are sums of terms
//! around 1e16 that cancel down to O(1). Plain `f64` loses every digit there,
//! so those paths run on [`DoubleDouble`] (about 32 significant digits).
//! Everything else only needs [`NeumaierSum`].

use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator of `f64`.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<NeumaierSum>().value()
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };
    pub const PI: DoubleDouble = DoubleDouble {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const LN_2: DoubleDouble = DoubleDouble {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        Self { hi: h, lo: l }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Exact product of two `f64`.
    pub fn mul_f64_exact(a: f64, b: f64) -> Self {
        let (p, e) = two_prod(a, b);
        Self { hi: p, lo: e }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::ZERO;
        }
        let x = self.hi.sqrt();
        let r = self - Self::mul_f64_exact(x, x);
        let (s, e) = quick_two_sum(x, r.hi / (2.0 * x));
        Self { hi: s, lo: e }
    }

    /// Multiply by `2^n` exactly (barring overflow/underflow).
    fn ldexp(self, n: i32) -> Self {
        // split so that the scale factor itself never overflows
        let mut out = self;
        let mut n = n;
        while n != 0 {
            let step = n.clamp(-1000, 1000);
            let f = 2f64.powi(step);
            out = Self {
                hi: out.hi * f,
                lo: out.lo * f,
            };
            n -= step;
        }
        out
    }

    /// Natural exponential to roughly double-double accuracy.
    pub fn exp(self) -> Self {
        const SQUARINGS: i32 = 9;
        if self.hi > 709.78 {
            return Self::new(f64::INFINITY, 0.0);
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Self::ONE;
        }
        let m = (self.hi / std::f64::consts::LN_2).round();
        let reduced = self - Self::LN_2 * m;
        let r = reduced.ldexp(-SQUARINGS);

        // exp(r) - 1 by Taylor series; |r| < 7e-4 so a dozen terms suffice
        let mut term = r;
        let mut s = r;
        for n in 2..=14 {
            term = term * r / (n as f64);
            s += term;
            if term.hi.abs() < 1e-36 * s.hi.abs() {
                break;
            }
        }
        // undo the 2^-SQUARINGS scaling: e^{2x} - 1 = 2(e^x - 1) + (e^x - 1)^2
        for _ in 0..SQUARINGS {
            s = s * 2.0 + s.sqr();
        }
        (s + 1.0).ldexp(m as i32)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Add<f64> for DoubleDouble {
    type Output = Self;
    fn add(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Self { hi, lo }
    }
}

impl AddAssign for DoubleDouble {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Sub<f64> for DoubleDouble {
    type Output = Self;
    fn sub(self, b: f64) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    fn mul(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + q3
    }
}

impl Div<f64> for DoubleDouble {
    type Output = Self;
    fn div(self, b: f64) -> Self {
        self / DoubleDouble::from(b)
    }
}

impl Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: DoubleDouble, hi: f64, lo: f64) -> f64 {
        let d = (a - DoubleDouble::from_parts(hi, lo)).to_f64();
        (d / hi).abs()
    }

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(xs), 2.0);
        let naive: f64 = xs.iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn exact_product_captures_rounding() {
        let p = DoubleDouble::mul_f64_exact(0.1, 0.1);
        assert_eq!(p.hi, 0.1 * 0.1);
        assert!(p.lo != 0.0);
    }

    #[test]
    fn division_and_sqrt_round_trip() {
        let three = DoubleDouble::from(3.0);
        let third = DoubleDouble::ONE / three;
        let back = third * three - 1.0;
        assert!(back.to_f64().abs() < 1e-31);

        let two = DoubleDouble::from(2.0);
        let r = two.sqrt();
        assert!((r.sqr() - two).to_f64().abs() < 1e-31);
    }

    #[test]
    fn exp_matches_extended_reference() {
        // exp(x) to 60 digits, split into hi/lo pairs
        let cases = [
            (-80.25, 1.405_619_674_181_521_1e-35, 5.185_562_895_512_768e-52),
            (-3.5, 0.030_197_383_422_318_5, -1.276_010_218_379_310_6e-19),
            (-0.1, 0.904_837_418_035_959_5, 5.055_984_668_733_208e-17),
            (0.7, 2.013_752_707_470_476_6, -2.005_824_354_976_479_3e-16),
            (12.3, 219_695.988_672_137_9, -9.902_103_426_256_728e-12),
            (41.0, 6.398_434_935_300_549e17, 37.222_663_403_515_57),
        ];
        for (x, hi, lo) in cases {
            let e = DoubleDouble::from(x).exp();
            assert!(rel(e, hi, lo) < 1e-30, "exp({x}) rel err {}", rel(e, hi, lo));
        }
        assert_eq!(DoubleDouble::ZERO.exp(), DoubleDouble::ONE);
    }

    #[test]
    fn exp_saturates() {
        assert_eq!(DoubleDouble::from(-800.0).exp(), DoubleDouble::ZERO);
        assert!(DoubleDouble::from(710.0).exp().hi.is_infinite());
    }
}
