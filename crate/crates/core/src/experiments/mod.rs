//! Seeded sweeps measuring how the evaluators behave as the two
//! distributions approach each other.
//!
//! * [`run_accuracy_sweep`]: relative gap between each truncated series and
//!   the naive formula against `||eps||_RMS`, with log-log slope fits.
//! * [`run_negativity_sweep`]: how often each evaluator returns a negative
//!   value at a given `||eps||_RMS`.

pub mod accuracy;
pub mod fit;
pub mod negativity;
pub mod output;

pub use accuracy::{fit_orders, run_accuracy_sweep, AccuracyConfig, SweepRecord};
pub use fit::{
    fit_loglog_slope, FitResult, FitWindow, DEFAULT_FLOOR, DEFAULT_WINDOW, NAIVE_NOISE_FLOOR,
};
pub use negativity::{parse_buckets, run_negativity_sweep, BucketResult, NegativityConfig};
pub use output::{emit_csv, render_svg_scatter};
