//! Expansion coefficients of the per-bin divergence in powers of `eps`.
//!
//! The per-bin term is `delta(eps) = sum_{i>=1} B_i eps^(i+1)` with
//!
//! ```text
//! B_i =  2 (1 - alpha^(i+1)) / (i (i+1))       i odd
//! B_i = -2 (alpha - alpha^(i+1)) / (i (i+1))   i even
//! ```
//!
//! There is no `eps^1` term. Odd coefficients are non-negative for every
//! `alpha` in `[-1, 1]`, and consecutive pairs satisfy
//! `B_{2i} = -((2i-1)/(2i+1)) alpha B_{2i-1}`.

use crate::error::{JsdError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    alpha: f64,
    b: Vec<f64>,
}

impl SeriesCoefficients {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Number of coefficients k.
    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// `B_i` for `1 <= i <= order` (one-based, matching the usual notation).
    pub fn get(&self, i: usize) -> f64 {
        assert!(
            i >= 1 && i <= self.b.len(),
            "coefficient index {i} out of range"
        );
        self.b[i - 1]
    }

    /// All coefficients, `as_slice()[i - 1] == B_i`.
    pub fn as_slice(&self) -> &[f64] {
        &self.b
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(JsdError::AlphaOutOfRange(alpha));
    }
    Ok(())
}

/// Closed-form `B_1..B_order` for weight asymmetry `alpha`.
pub fn series_coefficients(alpha: f64, order: usize) -> Result<SeriesCoefficients> {
    check_alpha(alpha)?;
    if order == 0 {
        return Err(JsdError::InvalidOrder);
    }
    let mut b = Vec::with_capacity(order);
    // alpha^(i+1), advanced by one multiplication per step.
    let mut alpha_pow = alpha;
    for i in 1..=order {
        alpha_pow *= alpha;
        b.push(coefficient_from_power(i, alpha, alpha_pow));
    }
    Ok(SeriesCoefficients { alpha, b })
}

/// `B_i` given `alpha_pow = alpha^(i+1)`.
#[inline]
pub(crate) fn coefficient_from_power(i: usize, alpha: f64, alpha_pow: f64) -> f64 {
    let denom = (i * (i + 1)) as f64;
    if i % 2 == 1 {
        2.0 * (1.0 - alpha_pow) / denom
    } else {
        -2.0 * (alpha - alpha_pow) / denom
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Coefficient assembled from the log-series weights
    /// `c_i = (-1)^(i+1) / i` before simplification.
    fn from_log_weights(i: usize, alpha: f64) -> f64 {
        let c = |n: usize| {
            if n % 2 == 1 {
                1.0 / n as f64
            } else {
                -1.0 / n as f64
            }
        };
        let sign_i = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
        let bracket = sign_i * alpha - 2.0 * alpha.powi(i as i32 + 1) + alpha + 1.0 - sign_i;
        (c(i) + c(i + 1)) * bracket
    }

    #[test]
    fn zero_alpha_kills_even_terms() {
        let b = series_coefficients(0.0, 4).unwrap();
        assert_eq!(b.as_slice(), &[1.0, 0.0, 2.0 / 12.0, 0.0]);
        assert_eq!(b.order(), 4);
    }

    #[test]
    fn third_coefficient_at_half() {
        let b = series_coefficients(0.5, 3).unwrap();
        assert_eq!(b.get(3), 0.15625);
        assert!((from_log_weights(3, 0.5) - 0.15625).abs() < 1e-16);
    }

    #[test]
    fn leading_coefficient() {
        for alpha in [-1.0, -0.7, -0.1, 0.0, 0.25, 0.9, 1.0] {
            let b = series_coefficients(alpha, 1).unwrap();
            assert!((b.get(1) - (1.0 - alpha * alpha)).abs() < 1e-16);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            series_coefficients(1.01, 3),
            Err(JsdError::AlphaOutOfRange(_))
        ));
        assert!(matches!(
            series_coefficients(0.2, 0),
            Err(JsdError::InvalidOrder)
        ));
        assert!(series_coefficients(f64::NAN, 3).is_err());
    }

    #[test]
    fn matches_log_weight_construction() {
        for step in 0..64 {
            let alpha = -1.0 + 2.0 * step as f64 / 63.0;
            let b = series_coefficients(alpha, 30).unwrap();
            for i in 1..=30 {
                let direct = from_log_weights(i, alpha);
                let closed = b.get(i);
                let scale = closed.abs().max(direct.abs());
                assert!(
                    (closed - direct).abs() <= 1e-14 * scale,
                    "i={i} alpha={alpha}: {closed} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn bounds_and_signs() {
        for step in 0..=40 {
            let alpha = -1.0 + step as f64 / 20.0;
            let b = series_coefficients(alpha, 40).unwrap();
            for i in 1..=40 {
                let bi = b.get(i);
                assert!(bi.abs() <= 4.0 / (i * (i + 1)) as f64);
                if i % 2 == 1 {
                    assert!(bi >= 0.0);
                } else {
                    let expected = -(alpha * (1.0 - alpha.powi(i as i32))).signum();
                    if bi != 0.0 {
                        assert_eq!(bi.signum(), expected, "i={i} alpha={alpha}");
                    }
                }
            }
        }
    }
}
