//! Mean/half-difference reparameterization of a weighted pair.

use crate::distribution::WeightedPair;

/// `pbar = (p1 + p2) / 2`, `eta = (p1 - p2) / 2`, `eps = eta / pbar`,
/// `alpha = pi1 - pi2`.
///
/// Bins with `pbar_j = 0` carry `eps_j = 0`; such a bin contributes nothing
/// to any divergence.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedForm {
    pub pbar: Vec<f64>,
    pub eta: Vec<f64>,
    pub eps: Vec<f64>,
    pub alpha: f64,
}

impl ReducedForm {
    pub fn len(&self) -> usize {
        self.pbar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pbar.is_empty()
    }

    pub fn max_abs_eps(&self) -> f64 {
        self.eps.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    /// True when some bin has zero mass in both distributions.
    pub fn has_empty_bins(&self) -> bool {
        self.pbar.contains(&0.0)
    }

    /// True when some bin is supported by only one of the distributions.
    pub fn has_boundary_eps(&self) -> bool {
        self.eps.iter().any(|e| e.abs() == 1.0)
    }
}

pub fn reduce(pair: &WeightedPair) -> ReducedForm {
    let n = pair.len();
    let mut pbar = Vec::with_capacity(n);
    let mut eta = Vec::with_capacity(n);
    let mut eps = Vec::with_capacity(n);
    for (&a, &b) in pair.p1().iter().zip(pair.p2()) {
        let mean = 0.5 * (a + b);
        let half_diff = 0.5 * (a - b);
        let rel = if mean == 0.0 {
            0.0
        } else {
            (half_diff / mean).clamp(-1.0, 1.0)
        };
        pbar.push(mean);
        eta.push(half_diff);
        eps.push(rel);
    }
    ReducedForm {
        pbar,
        eta,
        eps,
        alpha: pair.alpha(),
    }
}

/// Root-mean-square of the relative perturbations, `sqrt(sum eps_j^2 / N)`.
pub fn epsilon_rms_norm(rf: &ReducedForm) -> f64 {
    if rf.eps.is_empty() {
        return 0.0;
    }
    let sum_sq: f64 = rf.eps.iter().map(|e| e * e).sum();
    (sum_sq / rf.eps.len() as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::Distribution;

    fn pair(p1: &[f64], p2: &[f64], pi1: f64) -> WeightedPair {
        WeightedPair::from_slices(p1, p2, pi1, 1.0 - pi1).unwrap()
    }

    #[test]
    fn symmetric_two_point() {
        let rf = reduce(&pair(&[0.6, 0.4], &[0.4, 0.6], 0.5));
        assert_eq!(rf.alpha, 0.0);
        for (got, want) in rf.pbar.iter().zip([0.5, 0.5]) {
            assert!((got - want).abs() < 1e-16);
        }
        for (got, want) in rf.eta.iter().zip([0.1, -0.1]) {
            assert!((got - want).abs() < 1e-16);
        }
        for (got, want) in rf.eps.iter().zip([0.2, -0.2]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn identical_inputs() {
        let rf = reduce(&pair(&[0.3, 0.7], &[0.3, 0.7], 0.8));
        assert_eq!(rf.eta, vec![0.0, 0.0]);
        assert_eq!(rf.eps, vec![0.0, 0.0]);
        assert!((rf.alpha - 0.6).abs() < 1e-15);
    }

    #[test]
    fn empty_bin_gets_zero_eps() {
        let rf = reduce(&pair(&[0.5, 0.5, 0.0], &[0.5, 0.5, 0.0], 0.3));
        assert_eq!(rf.eps, vec![0.0, 0.0, 0.0]);
        assert!(rf.has_empty_bins());
        assert!(!rf.has_boundary_eps());
    }

    #[test]
    fn disjoint_support_hits_boundary() {
        let rf = reduce(&pair(&[1.0, 0.0], &[0.0, 1.0], 0.5));
        assert_eq!(rf.eps, vec![1.0, -1.0]);
        assert!(rf.has_boundary_eps());
    }

    #[test]
    fn rms_norm_examples() {
        let mk = |eps: Vec<f64>| ReducedForm {
            pbar: vec![0.0; eps.len()],
            eta: vec![0.0; eps.len()],
            eps,
            alpha: 0.0,
        };
        assert_eq!(epsilon_rms_norm(&mk(vec![0.0, 0.0, 0.0])), 0.0);
        assert!((epsilon_rms_norm(&mk(vec![0.2, -0.2])) - 0.2).abs() < 1e-16);
        assert_eq!(epsilon_rms_norm(&mk(vec![1.0, 0.0, 0.0, 0.0])), 0.5);
    }

    #[test]
    fn reconstruction_recovers_inputs() {
        let p1 = Distribution::normalized(vec![0.1, 0.0, 0.35, 0.2, 0.35]).unwrap();
        let p2 = Distribution::normalized(vec![0.3, 0.1, 0.05, 0.5, 0.05]).unwrap();
        let pr = WeightedPair::with_pi1(p1, p2, 0.25).unwrap();
        let rf = reduce(&pr);
        for j in 0..pr.len() {
            assert!((rf.pbar[j] * (1.0 + rf.eps[j]) - pr.p1()[j]).abs() <= 1e-15);
            assert!((rf.pbar[j] * (1.0 - rf.eps[j]) - pr.p2()[j]).abs() <= 1e-15);
        }
    }
}
