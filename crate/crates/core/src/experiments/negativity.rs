use rayon::prelude::*;

use crate::divergence::{jsd_naive, jsd_series, Units};
use crate::error::{JsdError, Result};
use crate::pairgen::{derive_seed, sample_pair, GenSpec};

/// Series order checked alongside the naive formula.
pub const NEGATIVITY_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct NegativityConfig {
    pub n: usize,
    pub trials_per_bucket: usize,
    /// Target `log10 ||eps||` for each bucket.
    pub buckets: Vec<f64>,
    pub alpha: f64,
    pub seed: u64,
}

impl Default for NegativityConfig {
    fn default() -> Self {
        NegativityConfig {
            n: crate::pairgen::DEFAULT_N,
            trials_per_bucket: 1000,
            buckets: bucket_range(-8.0, -1.0, 0.5).expect("static range"),
            alpha: 0.0,
            seed: super::accuracy::DEFAULT_SEED,
        }
    }
}

impl NegativityConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials_per_bucket < 100 {
            return Err(JsdError::Config(format!(
                "trials per bucket = {} (need at least 100)",
                self.trials_per_bucket
            )));
        }
        if self.buckets.is_empty() {
            return Err(JsdError::Config("no buckets".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucketResult {
    pub log10_eps: f64,
    pub trials: usize,
    pub negative_naive: usize,
    pub negative_series: usize,
}

impl BucketResult {
    pub fn fraction_negative_naive(&self) -> f64 {
        self.negative_naive as f64 / self.trials as f64
    }

    pub fn fraction_negative_series(&self) -> f64 {
        self.negative_series as f64 / self.trials as f64
    }
}

/// `start, start + step, ...` up to and including `stop`.
pub fn bucket_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    let ordered = step > 0.0 && start <= stop;
    if !ordered || !start.is_finite() || !stop.is_finite() {
        return Err(JsdError::Config(format!(
            "bad bucket range {start}:{stop}:{step}"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// Parses `START:STOP:STEP`, e.g. `-8:-1:0.5`.
pub fn parse_buckets(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || JsdError::Config(format!("bucket spec {spec:?} is not START:STOP:STEP"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    bucket_range(nums[0], nums[1], nums[2])
}

fn run_one(config: &NegativityConfig, bucket: usize, trial: usize) -> Result<(bool, bool)> {
    let key = ((bucket as u64) << 32) | trial as u64;
    let spec = GenSpec {
        n: config.n,
        target_log10_eps: config.buckets[bucket],
        alpha: config.alpha,
        seed: derive_seed(config.seed, key),
    };
    let generated = sample_pair(&spec).map_err(|e| JsdError::Trial {
        trial,
        source: Box::new(e),
    })?;
    let naive = jsd_naive(&generated.pair, Units::Nats).value;
    let series = jsd_series(&generated.pair, NEGATIVITY_ORDER, Units::Nats)?.value;
    Ok((naive < 0.0, series < 0.0))
}

/// Fraction of strictly negative results from the naive formula and from
/// the order-12 series, per bucket.
pub fn run_negativity_sweep(config: &NegativityConfig) -> Result<Vec<BucketResult>> {
    config.validate()?;
    (0..config.buckets.len())
        .map(|b| {
            let outcomes: Vec<(bool, bool)> = (0..config.trials_per_bucket)
                .into_par_iter()
                .map(|t| run_one(config, b, t))
                .collect::<Result<_>>()?;
            Ok(BucketResult {
                log10_eps: config.buckets[b],
                trials: outcomes.len(),
                negative_naive: outcomes.iter().filter(|o| o.0).count(),
                negative_series: outcomes.iter().filter(|o| o.1).count(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bucket_specs() {
        let b = parse_buckets("-8:-1:0.5").unwrap();
        assert_eq!(b.len(), 15);
        assert_eq!(b[0], -8.0);
        assert_eq!(*b.last().unwrap(), -1.0);
        assert_eq!(parse_buckets("-3:-3:1").unwrap(), vec![-3.0]);
        assert!(parse_buckets("-8:-1").is_err());
        assert!(parse_buckets("-1:-8:0.5").is_err());
        assert!(parse_buckets("-8:-1:0").is_err());
        assert!(parse_buckets("a:b:c").is_err());
    }

    #[test]
    fn rejects_small_buckets() {
        let c = NegativityConfig {
            trials_per_bucket: 50,
            ..NegativityConfig::default()
        };
        assert!(c.validate().is_err());
    }
}
