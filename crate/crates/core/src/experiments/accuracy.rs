use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::divergence::{jsd_exact_reduced, jsd_naive, series_nats, Units};
use crate::error::{JsdError, Result};
use crate::experiments::fit::{fit_loglog_slope, FitResult, FitWindow, NAIVE_NOISE_FLOOR};
use crate::pairgen::{derive_seed, sample_pair, GenSpec};
use crate::precision::jsd_reference;
use crate::reduced::{epsilon_rms_norm, reduce};
use crate::series::SeriesKernel;

pub const DEFAULT_SEED: u64 = 20240101;
pub const DEFAULT_TRIALS: usize = 2000;
pub const DEFAULT_ORDERS: [usize; 4] = [3, 6, 9, 12];

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyConfig {
    pub n: usize,
    pub trials: usize,
    pub orders: Vec<usize>,
    /// Half-open range `[lo, hi)` for the per-trial target `log10 ||eps||`.
    pub log10_eps_range: (f64, f64),
    pub alpha: f64,
    pub seed: u64,
}

impl Default for AccuracyConfig {
    fn default() -> Self {
        AccuracyConfig {
            n: crate::pairgen::DEFAULT_N,
            trials: DEFAULT_TRIALS,
            orders: DEFAULT_ORDERS.to_vec(),
            log10_eps_range: (-4.0, 0.0),
            alpha: 0.0,
            seed: DEFAULT_SEED,
        }
    }
}

impl AccuracyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 10 {
            return Err(JsdError::Config(format!(
                "trials = {} (need at least 10)",
                self.trials
            )));
        }
        if self.orders.is_empty() {
            return Err(JsdError::Config("no series orders requested".into()));
        }
        if self.orders.contains(&0) {
            return Err(JsdError::InvalidOrder);
        }
        let (lo, hi) = self.log10_eps_range;
        if !(lo >= -9.0 && lo < hi && hi <= 0.0) {
            return Err(JsdError::Config(format!(
                "log10 eps range [{lo}, {hi}) must lie within [-9, 0)"
            )));
        }
        Ok(())
    }
}

/// Values from one trial of the accuracy sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub trial: usize,
    /// Achieved `log10 ||eps||_RMS` of the generated pair.
    pub log10_eps_norm: f64,
    pub jsd_oracle: f64,
    pub jsd_naive: f64,
    pub jsd_exact_reduced: f64,
    /// `(k, series value)` for each requested order, in request order.
    pub jsd_series: Vec<(usize, f64)>,
    /// `|series_k - naive| / naive` per order; `None` unless `naive > 0`.
    pub rel_diff_naive_vs_k: Vec<Option<f64>>,
}

fn run_trial(config: &AccuracyConfig, trial: usize) -> Result<SweepRecord> {
    let trial_seed = derive_seed(config.seed, trial as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let (lo, hi) = config.log10_eps_range;
    let target = rng.random_range(lo..hi);
    let spec = GenSpec {
        n: config.n,
        target_log10_eps: target,
        alpha: config.alpha,
        seed: rng.random(),
    };
    let generated = sample_pair(&spec).map_err(|e| JsdError::Trial {
        trial,
        source: Box::new(e),
    })?;
    let pair = &generated.pair;
    let rf = reduce(pair);

    let naive = jsd_naive(pair, Units::Nats).value;
    let mut jsd_series = Vec::with_capacity(config.orders.len());
    let mut rel_diff = Vec::with_capacity(config.orders.len());
    for &k in &config.orders {
        let kernel = SeriesKernel::new(rf.alpha, k)?;
        let value = series_nats(&rf, &kernel);
        jsd_series.push((k, value));
        rel_diff.push((naive > 0.0).then(|| (value - naive).abs() / naive));
    }
    Ok(SweepRecord {
        trial,
        log10_eps_norm: epsilon_rms_norm(&rf).log10(),
        jsd_oracle: jsd_reference(pair).to_f64(),
        jsd_naive: naive,
        jsd_exact_reduced: jsd_exact_reduced(pair, Units::Nats).value,
        jsd_series,
        rel_diff_naive_vs_k: rel_diff,
    })
}

/// Runs every trial (in parallel) and returns the records in trial order.
/// The output depends only on `config`.
pub fn run_accuracy_sweep(config: &AccuracyConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect()
}

/// `(log10 ||eps||, rel_diff)` points for order `k`, skipping missing values.
pub fn points_for_order(records: &[SweepRecord], k: usize) -> Vec<(f64, f64)> {
    records
        .iter()
        .filter_map(|r| {
            let idx = r.jsd_series.iter().position(|&(kk, _)| kk == k)?;
            r.rel_diff_naive_vs_k[idx].map(|d| (r.log10_eps_norm, d))
        })
        .collect()
}

/// Like [`points_for_order`], minus points whose absolute difference is
/// below [`NAIVE_NOISE_FLOOR`].
pub fn fit_points_for_order(records: &[SweepRecord], k: usize) -> Vec<(f64, f64)> {
    records
        .iter()
        .filter_map(|r| {
            let idx = r.jsd_series.iter().position(|&(kk, _)| kk == k)?;
            let d = r.rel_diff_naive_vs_k[idx]?;
            (d * r.jsd_naive >= NAIVE_NOISE_FLOOR).then_some((r.log10_eps_norm, d))
        })
        .collect()
}

/// One log-log fit per requested order. The slope is `d log10(rel_diff) /
/// d log10 ||eps||`, about `+k` at `alpha = 0` for even `k` (`k + 1` for odd
/// `k`, since the even coefficients vanish there).
pub fn fit_orders(
    records: &[SweepRecord],
    orders: &[usize],
    window: FitWindow,
    floor: f64,
) -> Result<Vec<(usize, FitResult)>> {
    orders
        .iter()
        .map(|&k| {
            Ok((
                k,
                fit_loglog_slope(&fit_points_for_order(records, k), window, floor)?,
            ))
        })
        .collect()
}
