//! Unevaluated sum of two doubles, `hi + lo` with `|lo| <= ulp(hi) / 2`,
//! giving about 106 bits (32 decimal digits) of significand.
//!
//! Built from the usual error-free transformations (Knuth two-sum and an
//! FMA-based two-product).

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

/// ln 2 to double-double precision.
pub const LN_2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

const SERIES_EPS: f64 = 1e-34;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
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
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Renormalizes an arbitrary pair.
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    /// Exact sum of two doubles.
    pub fn sum_of(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        DoubleDouble { hi, lo }
    }

    /// Exact product of two doubles.
    pub fn product_of(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Multiplication by a power of two; exact barring under/overflow.
    pub fn scale(self, factor: f64) -> Self {
        DoubleDouble {
            hi: self.hi * factor,
            lo: self.lo * factor,
        }
    }

    pub fn square(self) -> Self {
        self * self
    }

    /// Natural logarithm. Panics unless `self > 0`.
    pub fn ln(self) -> Self {
        assert!(self.hi > 0.0, "logarithm of non-positive value {self:?}");
        // x = m 2^e with m in [1/sqrt2, sqrt2)
        let mut e = self.hi.log2().floor() as i32;
        let mut m = self.scale(pow2(-e));
        if m.hi >= std::f64::consts::SQRT_2 {
            m = m.scale(0.5);
            e += 1;
        } else if m.hi < std::f64::consts::FRAC_1_SQRT_2 {
            m = m.scale(2.0);
            e -= 1;
        }
        let z = (m - Self::ONE) / (m + Self::ONE);
        LN_2 * Self::from_f64(e as f64) + atanh_series(z).scale(2.0)
    }

    /// `ln(1 + self)`, accurate relative to the result for small arguments.
    pub fn ln_1p(self) -> Self {
        assert!(self.hi > -1.0, "ln_1p argument {self:?} <= -1");
        if self.hi.abs() < 0.5 {
            let z = self / (Self::from_f64(2.0) + self);
            atanh_series(z).scale(2.0)
        } else {
            (Self::ONE + self).ln()
        }
    }

    /// Inverse hyperbolic tangent for `|self| < 1`.
    pub fn atanh(self) -> Self {
        if self.hi.abs() < 0.5 {
            atanh_series(self)
        } else {
            ((Self::ONE + self) / (Self::ONE - self)).ln().scale(0.5)
        }
    }
}

fn pow2(e: i32) -> f64 {
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// `z + z^3/3 + z^5/5 + ...`; intended for `|z| < 0.5`.
pub(crate) fn atanh_series(z: DoubleDouble) -> DoubleDouble {
    let z2 = z.square();
    let mut power = z;
    let mut sum = z;
    let mut n = 3.0;
    loop {
        power = power * z2;
        let term = power / DoubleDouble::from_f64(n);
        sum += term;
        if term.hi.abs() <= SERIES_EPS * sum.hi.abs() {
            break;
        }
        n += 2.0;
    }
    sum
}

/// `atanh(z) - z = z^3/3 + z^5/5 + ...`; intended for `|z| < 0.5`.
pub(crate) fn atanh_minus_linear(z: DoubleDouble) -> DoubleDouble {
    if z.is_zero() {
        return DoubleDouble::ZERO;
    }
    let z2 = z.square();
    let mut power = z * z2;
    let mut sum = power / DoubleDouble::from_f64(3.0);
    let mut n = 5.0;
    loop {
        power = power * z2;
        let term = power / DoubleDouble::from_f64(n);
        sum += term;
        if term.hi.abs() <= SERIES_EPS * sum.hi.abs() {
            break;
        }
        n += 2.0;
    }
    sum
}

/// `(1 + u) ln(1 + u) - u = sum_{n>=2} (-1)^n u^n / (n (n-1))`.
pub(crate) fn entropy_excess(u: DoubleDouble) -> DoubleDouble {
    if u.is_zero() {
        return DoubleDouble::ZERO;
    }
    if u.hi.abs() >= 0.1 {
        return (DoubleDouble::ONE + u) * u.ln_1p() - u;
    }
    let mut power = u;
    let mut sum = DoubleDouble::ZERO;
    let mut n = 2.0;
    loop {
        power = power * u;
        let term = power / DoubleDouble::from_f64(n * (n - 1.0));
        let signed = if n % 2.0 == 0.0 { term } else { -term };
        sum += signed;
        if term.hi.abs() <= SERIES_EPS * sum.hi.abs() {
            break;
        }
        n += 1.0;
    }
    sum
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl AddAssign for DoubleDouble {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * DoubleDouble::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * DoubleDouble::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from_f64(q3)
    }
}
