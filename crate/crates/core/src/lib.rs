//! Jensen-Shannon divergence between two weighted discrete distributions,
//! with an evaluator that stays non-negative when the distributions nearly
//! coincide.
//!
//! Writing `pbar = (p1 + p2)/2`, `eps = (p1 - p2)/(p1 + p2)` and
//! `alpha = pi1 - pi2`, the divergence is `1/2 sum_j pbar_j delta(eps_j)` with
//! `delta(eps) = sum_i B_i(alpha) eps^(i+1)`. Grouping consecutive terms
//! gives pieces that are each non-negative, so every truncation of the
//! series is non-negative too; [`jsd_series`] evaluates it that way and its
//! result is `>= 0` bit for bit. The textbook difference of entropies
//! ([`jsd_naive`]) loses all significant digits once `||eps||` drops to
//! around `1e-7` and returns negative values about half the time.
//!
//! ```
//! use jsd_core::{jsd_naive, jsd_series, Units, WeightedPair};
//!
//! let pair = WeightedPair::from_slices(&[0.6, 0.4], &[0.4, 0.6], 0.5, 0.5)?;
//! let series = jsd_series(&pair, 12, Units::Nats)?;
//! let naive = jsd_naive(&pair, Units::Nats);
//! assert!((series.value - naive.value).abs() < 1e-12);
//! # Ok::<(), jsd_core::JsdError>(())
//! ```
//!
//! Besides the evaluators the crate carries a double-double reference
//! ([`precision::jsd_reference`]), a seeded pair generator ([`pairgen`]) and
//! the sweeps behind the `jsd` binary ([`experiments`]).

pub mod coefficients;
pub mod distribution;
pub mod divergence;
pub mod error;
pub mod experiments;
pub mod pairgen;
pub mod precision;
pub mod reduced;
pub mod series;

pub use coefficients::{series_coefficients, SeriesCoefficients};
pub use distribution::{Distribution, WeightedPair};
pub use divergence::{
    entropy, jsd_auto, jsd_exact_reduced, jsd_naive, jsd_series, Diagnostics, EvalResult, Method,
    Units,
};
pub use error::{JsdError, Result};
pub use precision::{jsd_reference, relative_difference, DoubleDouble, WideValue};
pub use reduced::{epsilon_rms_norm, reduce, ReducedForm};
pub use series::{delta_series, SeriesKernel};
