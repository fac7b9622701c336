//! Scalar arithmetic backends.
//!
//! The Euler–Maclaurin kernel is generic over [`Real`] so that the same code
//! runs in binary64 and in double-double arithmetic. Double-double keeps about
//! 32 significant digits, which is what the kernel needs in the left half-plane
//! where the partial sums are many orders of magnitude larger than the result.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::num::ParseFloatError;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_complex::Complex;
use num_traits::{Num, One, Zero};

/// Real scalar type usable by the zeta kernel.
pub trait Real: Copy + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self;
    /// Builds a value from an unevaluated double-double pair.
    fn from_parts(hi: f64, lo: f64) -> Self;
    fn to_f64(self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn pi() -> Self;
    fn ln_2() -> Self;
    /// Unit roundoff of the backend.
    fn unit_roundoff() -> f64;
}

impl Real for f64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn from_parts(hi: f64, lo: f64) -> Self {
        hi + lo
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn sin_cos(self) -> (Self, Self) {
        f64::sin_cos(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn pi() -> Self {
        std::f64::consts::PI
    }
    #[inline]
    fn ln_2() -> Self {
        std::f64::consts::LN_2
    }
    fn unit_roundoff() -> f64 {
        f64::EPSILON / 2.0
    }
}

/// Complex exponential for any backend.
#[inline]
pub fn cexp<T: Real>(z: Complex<T>) -> Complex<T> {
    let m = z.re.exp();
    let (s, c) = z.im.sin_cos();
    Complex::new(m * c, m * s)
}

/// `x^(-s)` for real `x > 0`.
#[inline]
pub fn real_pow_neg<T: Real>(x: T, s: Complex<T>) -> Complex<T> {
    let l = x.ln();
    cexp(Complex::new(-s.re * l, -s.im * l))
}

/// Modulus rounded to binary64.
#[inline]
pub fn abs_f64<T: Real>(z: Complex<T>) -> f64 {
    z.re.to_f64().hypot(z.im.to_f64())
}

#[inline]
pub fn to_c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

#[inline]
pub fn from_c64<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::from_f64(z.re), T::from_f64(z.im))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
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

impl DoubleDouble {
    pub const PI: Self = Self::new(std::f64::consts::PI, 1.224_646_799_147_353_2e-16);
    pub const TWO_PI: Self = Self::new(std::f64::consts::TAU, 2.449_293_598_294_706_4e-16);
    pub const FRAC_PI_2: Self = Self::new(std::f64::consts::FRAC_PI_2, 6.123_233_995_736_766e-17);
    pub const LN_2: Self = Self::new(std::f64::consts::LN_2, 2.319_046_813_846_299_6e-17);

    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Self {
        let (h, l) = quick_two_sum(hi, lo);
        Self { hi: h, lo: l }
    }

    #[inline]
    fn mul_pow2(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Self::new(self.hi * f, self.lo * f)
    }

    fn round(self) -> Self {
        let h = self.hi.round();
        if h == self.hi {
            Self::renorm(h, self.lo.round())
        } else if (h - self.hi).abs() == 0.5 && self.lo != 0.0 {
            // tie in hi broken by the sign of lo
            if self.lo > 0.0 && h < self.hi {
                Self::new(h + 1.0, 0.0)
            } else if self.lo < 0.0 && h > self.hi {
                Self::new(h - 1.0, 0.0)
            } else {
                Self::new(h, 0.0)
            }
        } else {
            Self::new(h, 0.0)
        }
    }

    fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            let h = self.hi.floor();
            if h == self.hi {
                Self::renorm(h, self.lo.floor())
            } else {
                Self::new(h, 0.0)
            }
        } else {
            -(-self).trunc()
        }
    }

    /// Sine and cosine by Taylor series on `|r| <= pi/4`.
    fn sin_cos_reduced(r: Self) -> (Self, Self) {
        let r2 = r * r;
        let mut sin = r;
        let mut cos = Self::one();
        let mut term = r;
        let mut n = 1.0;
        loop {
            term = -(term * r2) / Self::from_f64((n + 1.0) * (n + 2.0));
            sin = sin + term;
            n += 2.0;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        term = Self::one();
        n = 0.0;
        loop {
            term = -(term * r2) / Self::from_f64((n + 1.0) * (n + 2.0));
            cos = cos + term;
            n += 2.0;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        (sin, cos)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::new(x, 0.0)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Self::renorm(s1, s2 + t2)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        Self::renorm(p1, p2)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    #[inline]
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b * Self::from(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Self::from(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Self::new(h, l) + Self::from(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - (self / b).trunc() * b
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::new(0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::new(1.0, 0.0)
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = ParseFloatError;
    fn from_str_radix(s: &str, _radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        s.parse::<f64>().map(Self::from)
    }
}

impl Real for DoubleDouble {
    #[inline]
    fn from_f64(x: f64) -> Self {
        Self::from(x)
    }

    #[inline]
    fn from_parts(hi: f64, lo: f64) -> Self {
        Self::renorm(hi, lo)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Self::from(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::zero();
        }
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = (self - Self::LN_2 * Self::from(k)).mul_pow2(-10);
        // expm1 on the scaled argument, then undo the scaling by squaring
        let mut sum = r;
        let mut term = r;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = term * r / Self::from(n);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum.mul_pow2(1) + sum * sum;
        }
        (sum + Self::one()).mul_pow2(k as i32)
    }

    fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from(f64::NAN);
        }
        let x = Self::from(self.hi.ln());
        x + self * (-x).exp() - Self::one()
    }

    fn sin_cos(self) -> (Self, Self) {
        let k = (self / Self::TWO_PI).round();
        let r = self - k * Self::TWO_PI;
        let j = (r / Self::FRAC_PI_2).round();
        let r = r - j * Self::FRAC_PI_2;
        let (s, c) = Self::sin_cos_reduced(r);
        match (j.hi as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::zero();
        }
        let x = self.hi.sqrt();
        let y = Self::from(x);
        y + (self - y * y) * Self::from(0.5 / x)
    }

    #[inline]
    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    fn pi() -> Self {
        Self::PI
    }

    fn ln_2() -> Self {
        Self::LN_2
    }

    fn unit_roundoff() -> f64 {
        // 2^-104
        4.930_380_657_631_324e-32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Dd = DoubleDouble;

    fn close(a: Dd, b: Dd, tol: f64) -> bool {
        let d = (a - b).to_f64().abs();
        d <= tol * b.to_f64().abs().max(1.0)
    }

    #[test]
    fn arithmetic_is_exact_to_dd_precision() {
        let third = Dd::one() / Dd::from(3.0);
        let back = third * Dd::from(3.0);
        assert!((back - Dd::one()).to_f64().abs() < 1e-31);
        let x = Dd::from(2.0).sqrt();
        assert!(((x * x) - Dd::from(2.0)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &v in &[0.7, -3.3, 12.5, 35.3, 1e-5, 300.0] {
            let x = Dd::from(v);
            let y = x.exp().ln();
            assert!(close(y, x, 1e-30), "v={v} err={:e}", (y - x).to_f64());
        }
        // e^1 against its known double-double expansion
        let e = Dd::one().exp();
        assert_eq!(e.hi, std::f64::consts::E);
        assert!((e.lo - 1.445_646_891_729_250_2e-16).abs() < 1e-31);
    }

    #[test]
    fn ln_of_known_values() {
        let l2 = Dd::from(2.0).ln();
        assert!((l2 - Dd::LN_2).to_f64().abs() < 1e-31);
        let l8 = Dd::from(8.0).ln();
        assert!((l8 - Dd::LN_2 * Dd::from(3.0)).to_f64().abs() < 1e-30);
    }

    #[test]
    fn sin_cos_identities() {
        for &v in &[0.1, 1.0, 2.5, -4.0, 100.3, -731.25] {
            let (s, c) = Dd::from(v).sin_cos();
            let one = s * s + c * c;
            assert!((one - Dd::one()).to_f64().abs() < 1e-30, "v={v}");
            assert!((s.to_f64() - v.sin()).abs() < 1e-14);
            assert!((c.to_f64() - v.cos()).abs() < 1e-14);
        }
        // sin(pi_dd) is below the representation error of pi in dd
        let (s, c) = Dd::PI.sin_cos();
        assert!(s.to_f64().abs() < 1e-31);
        assert!((c + Dd::one()).to_f64().abs() < 1e-31);
        // double angle at dd accuracy
        let x = Dd::from(0.375);
        let (s1, c1) = x.sin_cos();
        let (s2, _) = (x * Dd::from(2.0)).sin_cos();
        assert!((s2 - Dd::from(2.0) * s1 * c1).to_f64().abs() < 1e-31);
    }

    #[test]
    fn complex_power_matches_f64() {
        let s = Complex::new(-3.0, 10.0);
        let dd = real_pow_neg(Dd::from(2.5), from_c64::<Dd>(s));
        let f = real_pow_neg(2.5f64, s);
        assert!((to_c64(dd) - f).norm() < 1e-13 * f.norm());
    }
}
