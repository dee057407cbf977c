//! Validated probability vectors and weighted pairs of them.
//!
//! The on-disk format for a single distribution is UTF-8 text with one
//! non-negative decimal per line. Blank lines are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{JsdError, Result};

/// Allowed deviation of a distribution's sum from 1.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Allowed deviation of `pi1 + pi2` from 1.
pub const WEIGHT_TOLERANCE: f64 = 1e-15;

/// A discrete probability vector: entries in `[0, 1]` summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    /// Validates `values` as a probability vector without modifying it.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_probabilities(&values)?;
        Ok(Distribution(values))
    }

    /// Rescales non-negative weights so they sum to 1, then validates.
    pub fn normalized(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(JsdError::Empty);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(JsdError::InvalidEntry { index, value });
            }
        }
        let total: f64 = values.iter().sum();
        if total <= 0.0 || !total.is_finite() {
            return Err(JsdError::NotNormalized {
                sum: total,
                tolerance: SUM_TOLERANCE,
            });
        }
        values.iter_mut().for_each(|v| *v /= total);
        Self::new(values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Reads a distribution in the one-value-per-line text format.
    pub fn read(path: impl AsRef<Path>, normalize: bool) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| JsdError::io(path, e))?;
        let values = parse_lines(&text, path)?;
        if normalize {
            Self::normalized(values)
        } else {
            Self::new(values)
        }
    }

    /// Writes one value per line with round-trip precision.
    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|e| JsdError::io(path, e))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.0.len() * 24);
        for v in &self.0 {
            // Display for f64 is the shortest string that parses back exactly.
            writeln!(out, "{v}").unwrap();
        }
        out
    }
}

impl AsRef<[f64]> for Distribution {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

fn parse_lines(text: &str, path: &Path) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let parse_err = || JsdError::Parse {
            path: path.to_path_buf(),
            line: lineno + 1,
            text: trimmed.to_string(),
        };
        let value: f64 = trimmed.parse().map_err(|_| parse_err())?;
        if !value.is_finite() || value < 0.0 {
            return Err(parse_err());
        }
        values.push(value);
    }
    Ok(values)
}

pub(crate) fn check_probabilities(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(JsdError::Empty);
    }
    for (index, &value) in values.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(JsdError::InvalidEntry { index, value });
        }
    }
    let sum: f64 = values.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(JsdError::NotNormalized {
            sum,
            tolerance: SUM_TOLERANCE,
        });
    }
    Ok(())
}

/// Two distributions over the same sample space with mixture weights
/// `pi1 + pi2 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPair {
    p1: Distribution,
    p2: Distribution,
    pi1: f64,
    pi2: f64,
}

impl WeightedPair {
    pub fn new(p1: Distribution, p2: Distribution, pi1: f64, pi2: f64) -> Result<Self> {
        if p1.len() != p2.len() {
            return Err(JsdError::LengthMismatch {
                left: p1.len(),
                right: p2.len(),
            });
        }
        let weights_ok = pi1.is_finite()
            && pi2.is_finite()
            && pi1 >= 0.0
            && pi2 >= 0.0
            && (pi1 + pi2 - 1.0).abs() <= WEIGHT_TOLERANCE;
        if !weights_ok {
            return Err(JsdError::InvalidWeights { pi1, pi2 });
        }
        Ok(WeightedPair { p1, p2, pi1, pi2 })
    }

    /// Uses `pi2 = 1 - pi1`.
    pub fn with_pi1(p1: Distribution, p2: Distribution, pi1: f64) -> Result<Self> {
        Self::new(p1, p2, pi1, 1.0 - pi1)
    }

    pub fn equal_weights(p1: Distribution, p2: Distribution) -> Result<Self> {
        Self::new(p1, p2, 0.5, 0.5)
    }

    /// Weights `pi1 = (1 + alpha) / 2`, `pi2 = (1 - alpha) / 2`.
    pub fn from_alpha(p1: Distribution, p2: Distribution, alpha: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&alpha) {
            return Err(JsdError::AlphaOutOfRange(alpha));
        }
        Self::new(p1, p2, 0.5 * (1.0 + alpha), 0.5 * (1.0 - alpha))
    }

    /// Convenience constructor from raw slices; both are validated.
    pub fn from_slices(p1: &[f64], p2: &[f64], pi1: f64, pi2: f64) -> Result<Self> {
        Self::new(
            Distribution::new(p1.to_vec())?,
            Distribution::new(p2.to_vec())?,
            pi1,
            pi2,
        )
    }

    pub fn p1(&self) -> &[f64] {
        self.p1.as_slice()
    }

    pub fn p2(&self) -> &[f64] {
        self.p2.as_slice()
    }

    pub fn pi1(&self) -> f64 {
        self.pi1
    }

    pub fn pi2(&self) -> f64 {
        self.pi2
    }

    /// Sample-space cardinality N.
    pub fn len(&self) -> usize {
        self.p1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p1.is_empty()
    }

    /// Weight asymmetry `pi1 - pi2`.
    pub fn alpha(&self) -> f64 {
        self.pi1 - self.pi2
    }

    /// The same pair with roles exchanged: `(p2, p1; pi2, pi1)`.
    pub fn swapped(&self) -> WeightedPair {
        WeightedPair {
            p1: self.p2.clone(),
            p2: self.p1.clone(),
            pi1: self.pi2,
            pi2: self.pi1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_negative_and_unnormalized() {
        assert!(matches!(
            Distribution::new(vec![1.2, -0.2]),
            Err(JsdError::InvalidEntry { index: 0, .. })
        ));
        assert!(matches!(
            Distribution::new(vec![0.5, 0.4]),
            Err(JsdError::NotNormalized { .. })
        ));
        assert!(matches!(Distribution::new(vec![]), Err(JsdError::Empty)));
        assert!(Distribution::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn tolerates_rounding_residue() {
        assert!(Distribution::new(vec![0.5, 0.5 + 5e-13]).is_ok());
        assert!(Distribution::new(vec![0.5, 0.5 + 5e-12]).is_err());
    }

    #[test]
    fn normalizes_on_request() {
        let d = Distribution::normalized(vec![1.0, 3.0]).unwrap();
        assert_eq!(d.as_slice(), &[0.25, 0.75]);
        assert!(Distribution::normalized(vec![0.0, 0.0]).is_err());
        assert!(Distribution::normalized(vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn weight_validation() {
        let p = || Distribution::new(vec![0.3, 0.7]).unwrap();
        assert!(WeightedPair::new(p(), p(), 0.5, 0.5).is_ok());
        assert!(WeightedPair::new(p(), p(), 0.6, 0.5).is_err());
        assert!(WeightedPair::new(p(), p(), 1.2, -0.2).is_err());
        assert!(WeightedPair::new(p(), p(), 1.0, 0.0).is_ok());
        let q = Distribution::new(vec![1.0]).unwrap();
        assert!(matches!(
            WeightedPair::new(p(), q, 0.5, 0.5),
            Err(JsdError::LengthMismatch { left: 2, right: 1 })
        ));
        assert!(WeightedPair::from_alpha(p(), p(), 1.5).is_err());
    }

    #[test]
    fn text_format_skips_blank_lines() {
        let values = parse_lines("0.25\n\n  0.75  \n\n", Path::new("x")).unwrap();
        assert_eq!(values, vec![0.25, 0.75]);
        let err = parse_lines("0.5\nabc\n", Path::new("x")).unwrap_err();
        assert!(matches!(err, JsdError::Parse { line: 2, .. }));
        assert!(parse_lines("-0.5\n", Path::new("x")).is_err());
    }

    #[test]
    fn text_round_trip_is_exact() {
        let d = Distribution::new(vec![0.1, 0.2, 0.7000000000000001 - 1e-16]).unwrap();
        let back = parse_lines(&d.to_text(), Path::new("x")).unwrap();
        assert_eq!(back, d.as_slice());
    }
}
