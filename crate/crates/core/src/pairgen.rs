//! Seeded generation of distribution pairs with a prescribed `||eps||_RMS`.
//!
//! A pair is built around a mean distribution `pbar` drawn uniformly from the
//! simplex. A Gaussian direction `d` is centred so that `sum pbar_j d_j = 0`
//! and then mapped to relative perturbations
//! `eps_j = clip(s d_j - c)` with the soft clip `clip(x) = x / (1 + |x|^8)^(1/8)`.
//! The shift `c` restores `sum pbar_j eps_j = 0` and the scale `s` is solved
//! for so that the RMS of `eps` hits the target. The clip is the identity to
//! working precision below `|x| ~ 0.01` and stays within a few percent of it
//! up to `|x| ~ 0.6`, so the Gaussian shape of the perturbation survives up to
//! fairly large targets; near 1 it saturates and keeps every `|eps_j| <= 1`.
//! Finally `p1 = pbar (1 + eps)` and `p2 = pbar (1 - eps)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::distribution::{Distribution, WeightedPair};
use crate::error::{JsdError, Result};
use crate::reduced::{epsilon_rms_norm, reduce};

/// Draws allowed before [`sample_pair`] gives up.
pub const MAX_ATTEMPTS: usize = 1000;

/// Allowed gap, in log10 units, between achieved and requested `||eps||_RMS`.
pub const NORM_TOLERANCE_LOG10: f64 = 0.05;

pub const DEFAULT_N: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub target_log10_eps: f64,
    pub alpha: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(JsdError::InvalidSpec(format!(
                "n = {} (need n >= 2)",
                self.n
            )));
        }
        if !(-9.0..0.0).contains(&self.target_log10_eps) {
            return Err(JsdError::InvalidSpec(format!(
                "target log10 eps {} outside [-9, 0)",
                self.target_log10_eps
            )));
        }
        if !(-1.0..=1.0).contains(&self.alpha) {
            return Err(JsdError::AlphaOutOfRange(self.alpha));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedPair {
    pub pair: WeightedPair,
    /// Perturbations used to build the pair, before rounding into `p1`/`p2`.
    pub eps: Vec<f64>,
    /// `||eps||_RMS` recovered from the pair itself.
    pub achieved_rms: f64,
    pub attempts: usize,
}

/// Per-trial seed: `seed XOR splitmix64(trial)`.
pub fn derive_seed(seed: u64, trial: u64) -> u64 {
    seed ^ splitmix64(trial)
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn simplex_point<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
    v
}

/// Uniform draw from the probability simplex (normalized exponentials).
pub fn sample_simplex(n: usize, seed: u64) -> Result<Distribution> {
    if n == 0 {
        return Err(JsdError::InvalidSpec(
            "simplex dimension must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Distribution::new(simplex_point(&mut rng, n))
}

const CLIP_POWER: i32 = 8;

/// `x / (1 + |x|^8)^(1/8)` and its derivative `(1 + |x|^8)^(-9/8)`.
fn soft_clip(x: f64) -> (f64, f64) {
    let m = CLIP_POWER as f64;
    let a = x.abs();
    if a <= 1.0 {
        let base = 1.0 + a.powi(CLIP_POWER);
        (x / base.powf(1.0 / m), base.powf(-(m + 1.0) / m))
    } else {
        // Written in 1/|x| so that large arguments do not overflow.
        let base = 1.0 + a.powi(-CLIP_POWER);
        (
            x.signum() / base.powf(1.0 / m),
            a.powi(-(CLIP_POWER + 1)) * base.powf(-(m + 1.0) / m),
        )
    }
}

/// Perturbation field `clip(scale * d_j - c)` with `c` chosen so that the
/// `pbar`-weighted mean is zero.
struct Saturating<'a> {
    pbar: &'a [f64],
    direction: &'a [f64],
}

impl Saturating<'_> {
    fn eps(&self, scale: f64) -> Vec<f64> {
        let shift = self.balancing_shift(scale);
        self.direction
            .iter()
            .map(|d| soft_clip(scale * d - shift).0)
            .collect()
    }

    fn rms(&self, scale: f64) -> f64 {
        let eps = self.eps(scale);
        (eps.iter().map(|e| e * e).sum::<f64>() / eps.len() as f64).sqrt()
    }

    /// Root of `c -> sum pbar_j clip(scale d_j - c)`, which is decreasing.
    fn balancing_shift(&self, scale: f64) -> f64 {
        let args: Vec<f64> = self.direction.iter().map(|d| scale * d).collect();
        let (mut lo, mut hi) = args
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &a| {
                (l.min(a), h.max(a))
            });
        let mut c = 0.0f64.clamp(lo, hi);
        for _ in 0..200 {
            let (mut f, mut df) = (0.0, 0.0);
            for (&p, &a) in self.pbar.iter().zip(&args) {
                let (t, dt) = soft_clip(a - c);
                f += p * t;
                df += p * dt;
            }
            if f == 0.0 {
                break;
            }
            if f > 0.0 {
                lo = c;
            } else {
                hi = c;
            }
            let newton = c + f / df;
            let next = if df > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (next - c).abs() <= 1e-17 * (1.0 + c.abs()) {
                c = next;
                break;
            }
            c = next;
        }
        c
    }

    /// Scale whose RMS is closest to `target`; `None` if the target cannot be
    /// bracketed.
    fn solve_scale(&self, target: f64) -> Option<f64> {
        let n = self.direction.len() as f64;
        let linear_rms = (self.direction.iter().map(|d| d * d).sum::<f64>() / n).sqrt();
        if linear_rms == 0.0 {
            return None;
        }
        let goal = target.ln();
        let g = |u: f64| self.rms(u.exp()).ln() - goal;

        let start = (target / linear_rms).ln();
        let (mut lo, mut hi) = (start, start);
        let (mut g_lo, mut g_hi) = (g(lo), g(hi));
        let mut steps = 0;
        while g_lo > 0.0 && steps < 60 {
            lo -= 1.0;
            g_lo = g(lo);
            steps += 1;
        }
        steps = 0;
        while g_hi < 0.0 && steps < 60 {
            hi += 1.0;
            g_hi = g(hi);
            steps += 1;
        }
        if g_lo > 0.0 {
            return None;
        }
        if g_hi < 0.0 {
            // Saturated below the target; the caller decides if it is close
            // enough.
            return Some(hi.exp());
        }
        if g_lo == 0.0 {
            return Some(lo.exp());
        }
        // Illinois regula falsi on u = ln(scale).
        let mut side = 0i8;
        let mut u = hi;
        for _ in 0..200 {
            u = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
            let gu = g(u);
            if gu.abs() < 1e-14 || (hi - lo).abs() < 1e-15 * (1.0 + u.abs()) {
                break;
            }
            if gu > 0.0 {
                hi = u;
                g_hi = gu;
                if side == 1 {
                    g_lo *= 0.5;
                }
                side = 1;
            } else {
                lo = u;
                g_lo = gu;
                if side == -1 {
                    g_hi *= 0.5;
                }
                side = -1;
            }
        }
        Some(u.exp())
    }
}

/// Draws a pair whose achieved `log10 ||eps||_RMS` is within 0.05 of the
/// target, with weights `pi1 = (1 + alpha) / 2`, `pi2 = (1 - alpha) / 2`.
pub fn sample_pair(spec: &GenSpec) -> Result<GeneratedPair> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let target = 10f64.powf(spec.target_log10_eps);

    for attempt in 1..=MAX_ATTEMPTS {
        let pbar = simplex_point(&mut rng, spec.n);
        let raw: Vec<f64> = (0..spec.n)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        let mean: f64 = pbar.iter().zip(&raw).map(|(p, g)| p * g).sum();
        let direction: Vec<f64> = raw.iter().map(|g| g - mean).collect();

        let field = Saturating {
            pbar: &pbar,
            direction: &direction,
        };
        let Some(scale) = field.solve_scale(target) else {
            continue;
        };
        let eps = field.eps(scale);

        let p1: Vec<f64> = pbar.iter().zip(&eps).map(|(p, e)| p * (1.0 + e)).collect();
        let p2: Vec<f64> = pbar.iter().zip(&eps).map(|(p, e)| p * (1.0 - e)).collect();
        let (Ok(p1), Ok(p2)) = (Distribution::new(p1), Distribution::new(p2)) else {
            continue;
        };
        let pair = WeightedPair::from_alpha(p1, p2, spec.alpha)?;
        let achieved_rms = epsilon_rms_norm(&reduce(&pair));
        if (achieved_rms.log10() - spec.target_log10_eps).abs() > NORM_TOLERANCE_LOG10 {
            continue;
        }
        return Ok(GeneratedPair {
            pair,
            eps,
            achieved_rms,
            attempts: attempt,
        });
    }
    Err(JsdError::Infeasible {
        target: spec.target_log10_eps,
        attempts: MAX_ATTEMPTS,
    })
}
