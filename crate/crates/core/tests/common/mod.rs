//! Test-only helpers: an arbitrary-precision fixed-point evaluator of the
//! difference-of-entropies formula, and small pair builders.
//!
//! Every f64 is a dyadic rational, so converting inputs into fixed point with
//! enough fractional bits is exact and the only error left is the truncation
//! of the logarithm series at the working precision.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use jsd_core::pairgen::{sample_pair, GenSpec};
use jsd_core::{DoubleDouble, WeightedPair};

/// Guard bits carried on top of the requested precision.
const GUARD: u64 = 64;

/// Fixed-point arithmetic with `bits` fractional bits.
#[derive(Debug, Clone, Copy)]
pub struct Fixed {
    pub bits: u64,
}

impl Fixed {
    pub fn new(bits: u64) -> Self {
        Fixed { bits }
    }

    pub fn one(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    /// Exact conversion; panics if `x` has bits below the fixed-point grid.
    pub fn encode(&self, x: f64) -> BigInt {
        if x == 0.0 {
            return BigInt::zero();
        }
        let (mantissa, exponent, sign) = x.integer_decode();
        let m = BigInt::from(mantissa) * BigInt::from(sign);
        let shift = self.bits as i64 + exponent as i64;
        if shift >= 0 {
            m << shift as u64
        } else {
            let r = &m >> (-shift) as u64;
            assert_eq!(
                &r << (-shift) as u64,
                m,
                "{x:e} is not exact at {} bits",
                self.bits
            );
            r
        }
    }

    pub fn decode(&self, v: &BigInt) -> f64 {
        // Keep 80 significant bits before going through f64.
        let len = v.bits();
        if len <= 80 {
            return v.to_f64().unwrap() * 2f64.powi(-(self.bits as i32));
        }
        let drop = len - 80;
        (v >> drop).to_f64().unwrap() * 2f64.powi(drop as i32 - self.bits as i32)
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.bits
    }

    pub fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a << self.bits) / b
    }

    /// `atanh(z)` for `|z| <= 1/2` by its Taylor series.
    fn atanh(&self, z: &BigInt) -> BigInt {
        let z2 = self.mul(z, z);
        let mut term = z.clone();
        let mut sum = z.clone();
        let mut k: u64 = 1;
        loop {
            term = self.mul(&term, &z2);
            if term.is_zero() {
                break;
            }
            sum += &term / BigInt::from(2 * k + 1);
            k += 1;
        }
        sum
    }

    pub fn ln2(&self) -> BigInt {
        // ln 2 = 2 atanh(1/3)
        self.atanh(&(self.one() / 3)) << 1u32
    }

    /// Natural log of a positive fixed-point value.
    pub fn ln(&self, x: &BigInt) -> BigInt {
        assert!(x.is_positive());
        // x = m 2^e with m in [1, 2).
        let e = x.bits() as i64 - 1 - self.bits as i64;
        let m = if e >= 0 {
            x >> e as u64
        } else {
            x << (-e) as u64
        };
        let one = self.one();
        let z = self.div(&(&m - &one), &(&m + &one));
        (self.atanh(&z) << 1u32) + self.ln2() * BigInt::from(e)
    }

    /// `-sum x ln x`, skipping zeros.
    pub fn entropy(&self, p: &[BigInt]) -> BigInt {
        let mut h = BigInt::zero();
        for x in p.iter().filter(|x| !x.is_zero()) {
            h -= self.mul(x, &self.ln(x));
        }
        h
    }
}

/// The textbook formula evaluated at `bits` (plus guard) fractional bits,
/// returned at `bits` fractional bits.
pub fn big_jsd(pair: &WeightedPair, bits: u64) -> BigInt {
    let fx = Fixed::new(bits + GUARD);
    let pi1 = fx.encode(pair.pi1());
    let pi2 = fx.encode(pair.pi2());
    let p1: Vec<BigInt> = pair.p1().iter().map(|&x| fx.encode(x)).collect();
    let p2: Vec<BigInt> = pair.p2().iter().map(|&x| fx.encode(x)).collect();
    let mix: Vec<BigInt> = p1
        .iter()
        .zip(&p2)
        .map(|(a, b)| fx.mul(&pi1, a) + fx.mul(&pi2, b))
        .collect();
    let v = fx.entropy(&mix) - fx.mul(&pi1, &fx.entropy(&p1)) - fx.mul(&pi2, &fx.entropy(&p2));
    v >> GUARD
}

/// `|a - b| / |b|` for two values on the same grid.
pub fn big_rel(fx: &Fixed, a: &BigInt, b: &BigInt) -> f64 {
    let diff = (a - b).abs();
    fx.decode(&diff) / fx.decode(&b.abs())
}

/// Double-double value moved onto the fixed-point grid (exactly).
pub fn dd_to_big(fx: &Fixed, v: DoubleDouble) -> BigInt {
    fx.encode(v.hi) + fx.encode(v.lo)
}

pub fn generated(n: usize, log10_eps: f64, alpha: f64, seed: u64) -> WeightedPair {
    sample_pair(&GenSpec {
        n,
        target_log10_eps: log10_eps,
        alpha,
        seed,
    })
    .expect("generator")
    .pair
}
