//! Truncated per-bin series `delta_k(eps) = sum_{i=1}^{k} B_i eps^(i+1)`.
//!
//! Terms are never accumulated one at a time. Consecutive terms are
//! combined into groups
//!
//! ```text
//! (B_{2i-1} + B_{2i} eps) eps^(2i) = B_{2i-1} (1 - r_i alpha eps) eps^(2i),
//! r_i = (2i-1)/(2i+1)
//! ```
//!
//! Every factor on the right is non-negative in floating point as well as in
//! exact arithmetic (`B_{2i-1} >= 0`, `|r_i alpha eps| < 1`, even power), so
//! each rounded group is `>= 0` and so is any rounded sum of groups. An odd
//! `k` adds the lone term `B_k eps^(k+1)`, also a product of non-negatives.

use crate::coefficients::{check_alpha, coefficient_from_power};
use crate::error::{JsdError, Result};

/// Precomputed group factors for a fixed `alpha` and truncation order.
#[derive(Debug, Clone)]
pub struct SeriesKernel {
    alpha: f64,
    order: usize,
    /// `B_{2i-1}` for each complete group.
    odd: Vec<f64>,
    /// `r_i * alpha` for each complete group.
    damping: Vec<f64>,
    /// `B_k` when `k` is odd.
    lone: Option<f64>,
}

impl SeriesKernel {
    pub fn new(alpha: f64, order: usize) -> Result<Self> {
        check_alpha(alpha)?;
        if order == 0 {
            return Err(JsdError::InvalidOrder);
        }
        let groups = order / 2;
        let mut odd = Vec::with_capacity(groups);
        let mut damping = Vec::with_capacity(groups);
        let mut lone = None;
        let mut alpha_pow = alpha;
        for i in 1..=order {
            alpha_pow *= alpha;
            if i % 2 == 0 {
                continue;
            }
            let b = coefficient_from_power(i, alpha, alpha_pow);
            if i == order {
                lone = Some(b);
            } else {
                let ratio = i as f64 / (i + 2) as f64;
                odd.push(b);
                damping.push(ratio * alpha);
            }
        }
        Ok(SeriesKernel {
            alpha,
            order,
            odd,
            damping,
            lone,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of complete (B_{2i-1}, B_{2i}) groups.
    pub fn groups(&self) -> usize {
        self.odd.len()
    }

    /// Value of group `g` (zero-based) given `eps^2` raised to `g + 1`.
    #[inline]
    pub(crate) fn group_with_power(&self, g: usize, eps: f64, even_pow: f64) -> f64 {
        self.odd[g] * (1.0 - self.damping[g] * eps) * even_pow
    }

    /// Group `g` (zero-based): `(B_{2g+1} + B_{2g+2} eps) eps^(2g+2)`.
    pub fn group(&self, g: usize, eps: f64) -> f64 {
        let even_pow = (eps * eps).powi(g as i32 + 1);
        self.group_with_power(g, eps, even_pow)
    }

    /// `delta_k(eps)`; caller guarantees `|eps| <= 1`.
    pub fn delta(&self, eps: f64) -> f64 {
        let sq = eps * eps;
        let mut even_pow = 1.0;
        let mut acc = 0.0;
        for g in 0..self.odd.len() {
            even_pow *= sq;
            acc += self.group_with_power(g, eps, even_pow);
        }
        if let Some(b) = self.lone {
            acc += b * even_pow * sq;
        }
        acc
    }
}

/// `delta_k(eps)` for one bin. Always `>= 0`.
pub fn delta_series(eps: f64, alpha: f64, order: usize) -> Result<f64> {
    if !(-1.0..=1.0).contains(&eps) {
        return Err(JsdError::EpsilonOutOfRange(eps));
    }
    Ok(SeriesKernel::new(alpha, order)?.delta(eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::series_coefficients;

    #[test]
    fn vanishes_at_zero() {
        for alpha in [-1.0, -0.4, 0.0, 0.8] {
            for k in [1, 2, 7, 30] {
                assert_eq!(delta_series(0.0, alpha, k).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn single_term() {
        let d = delta_series(0.2, 0.0, 1).unwrap();
        assert!((d - 0.04).abs() < 1e-17);
    }

    #[test]
    fn twelve_terms_at_point_two() {
        // 0.04 + 0.0016/6 + 0.000064/15 + ..., summed at 40 digits.
        let d = delta_series(0.2, 0.0, 12).unwrap();
        assert!((d - 0.040_271_027_099_520_92).abs() < 3e-17, "{d}");
    }

    #[test]
    fn grouping_matches_termwise_sum() {
        for &alpha in &[-0.9, -0.3, 0.0, 0.5, 0.99] {
            for &eps in &[-0.95f64, -0.4, 0.01, 0.3, 0.7] {
                for k in 1..=15 {
                    let b = series_coefficients(alpha, k).unwrap();
                    let termwise: f64 = (1..=k).map(|i| b.get(i) * eps.powi(i as i32 + 1)).sum();
                    let grouped = delta_series(eps, alpha, k).unwrap();
                    assert!(
                        (grouped - termwise).abs() <= 1e-15 * termwise.abs().max(1e-300) + 1e-18,
                        "alpha={alpha} eps={eps} k={k}: {grouped} vs {termwise}"
                    );
                }
            }
        }
    }

    #[test]
    fn no_first_order_term() {
        for alpha in [-0.8, 0.0, 0.3, 0.95] {
            let eps = 1e-5;
            let ratio = delta_series(eps, alpha, 20).unwrap() / (eps * eps);
            assert!((ratio - (1.0 - alpha * alpha)).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(
            delta_series(1.5, 0.0, 3),
            Err(JsdError::EpsilonOutOfRange(_))
        ));
        assert!(delta_series(0.5, -1.5, 3).is_err());
        assert!(delta_series(0.5, 0.0, 0).is_err());
    }

    #[test]
    fn kernel_group_layout() {
        let even = SeriesKernel::new(0.3, 6).unwrap();
        assert_eq!(even.groups(), 3);
        assert!(even.lone.is_none());
        let odd = SeriesKernel::new(0.3, 7).unwrap();
        assert_eq!(odd.groups(), 3);
        assert!(odd.lone.is_some());
        let one = SeriesKernel::new(0.3, 1).unwrap();
        assert_eq!(one.groups(), 0);
        assert!((one.delta(0.5) - 0.91 * 0.25).abs() < 1e-16);
    }

    #[test]
    fn boundary_weights_give_zero() {
        for eps in [-1.0, -0.5, 0.5, 1.0] {
            assert_eq!(delta_series(eps, 1.0, 9).unwrap(), 0.0);
            assert_eq!(delta_series(eps, -1.0, 9).unwrap(), 0.0);
        }
    }
}
