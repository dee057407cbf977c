//! Entropy and the four Jensen-Shannon evaluators.
//!
//! | evaluator | form | notes |
//! |-----------|------|-------|
//! | [`jsd_naive`] | `H[pi1 p1 + pi2 p2] - pi1 H[p1] - pi2 H[p2]` | cancels catastrophically for close inputs, may go negative |
//! | [`jsd_exact_reduced`] | per-bin closed form in `(pbar, eps, alpha)` | exact, one log-difference per bin |
//! | [`jsd_series`] | truncated pair-grouped series | `>= 0` bit for bit, for every order |
//! | [`jsd_auto`] | series with adaptive order, or exact form for large `eps` | |

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use crate::distribution::{check_probabilities, WeightedPair};
use crate::error::{JsdError, Result};
use crate::reduced::{reduce, ReducedForm};
use crate::series::SeriesKernel;

/// Largest `max_j |eps_j|` for which [`jsd_auto`] uses the series.
pub const AUTO_SERIES_THRESHOLD: f64 = 0.5;

/// Highest order [`jsd_auto`] will grow the series to.
pub const AUTO_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

impl Units {
    /// Converts a value in nats into these units.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / LN_2,
        }
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        })
    }
}

impl FromStr for Units {
    type Err = JsdError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nats" => Ok(Units::Nats),
            "bits" => Ok(Units::Bits),
            other => Err(JsdError::Config(format!("unknown units {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Naive,
    ExactReduced,
    Series,
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Naive => "naive",
            Method::ExactReduced => "exact_reduced",
            Method::Series => "series",
            Method::Auto => "auto",
        })
    }
}

impl FromStr for Method {
    type Err = JsdError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "exact" | "exact_reduced" => Ok(Method::ExactReduced),
            "series" => Ok(Method::Series),
            "auto" => Ok(Method::Auto),
            other => Err(JsdError::Config(format!("unknown method {other:?}"))),
        }
    }
}

/// Input conditions worth reporting alongside a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Diagnostics {
    /// Some bin has zero mass in both distributions (its `eps` was set to 0).
    pub empty_bins: bool,
    /// Some bin has `|eps| = 1`, i.e. mass in only one distribution.
    pub boundary_eps: bool,
}

impl Diagnostics {
    fn of(rf: &ReducedForm) -> Self {
        Diagnostics {
            empty_bins: rf.has_empty_bins(),
            boundary_eps: rf.has_boundary_eps(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub units: Units,
    /// The evaluator that produced `value`. For [`jsd_auto`] this is the
    /// resolved method, never [`Method::Auto`].
    pub method: Method,
    /// True when the method was chosen by [`jsd_auto`].
    pub auto_selected: bool,
    /// Series truncation order; present exactly when `method` is `Series`.
    pub order: Option<usize>,
    pub diagnostics: Diagnostics,
}

#[inline]
fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.ln()
    } else {
        0.0
    }
}

fn entropy_unchecked(p: impl IntoIterator<Item = f64>) -> f64 {
    -p.into_iter().map(plogp).sum::<f64>()
}

/// Shannon entropy in nats with `0 ln 0 = 0`.
pub fn entropy(p: &[f64]) -> Result<f64> {
    check_probabilities(p)?;
    Ok(entropy_unchecked(p.iter().copied()))
}

/// Mixture entropy minus the weighted component entropies, evaluated as
/// written. Near-identical inputs lose most of their significant digits to
/// cancellation and can produce small negative values.
pub fn jsd_naive(pair: &WeightedPair, units: Units) -> EvalResult {
    let (pi1, pi2) = (pair.pi1(), pair.pi2());
    let mixture = pair
        .p1()
        .iter()
        .zip(pair.p2())
        .map(|(&a, &b)| pi1 * a + pi2 * b);
    let mixed = entropy_unchecked(mixture);
    let h1 = entropy_unchecked(pair.p1().iter().copied());
    let h2 = entropy_unchecked(pair.p2().iter().copied());
    let nats = mixed - (pi1 * h1 + pi2 * h2);
    EvalResult {
        value: units.from_nats(nats),
        units,
        method: Method::Naive,
        auto_selected: false,
        order: None,
        diagnostics: Diagnostics::of(&reduce(pair)),
    }
}

/// Per-bin bracket
/// `(1 + a e) ln((1 - e^2) / (1 + a e)^2) + (a + e) ln((1 + e) / (1 - e))`.
///
/// For `|e| >= 1/2` the same quantity is evaluated as
/// `(1 + a)(1 + e) ln(1 + e) + (1 - a)(1 - e) ln(1 - e) - 2 (1 + a e) ln(1 + a e)`,
/// which avoids cancelling two large `ln(1 - e)` terms as `|e| -> 1` and
/// has the finite limit `-2 (1 + a e) ln((1 + a e) / 2)` at `|e| = 1`.
pub(crate) fn exact_bracket(eps: f64, alpha: f64) -> f64 {
    if eps == 0.0 {
        return 0.0;
    }
    if eps.abs() < 0.5 {
        let log_one_minus_sq = (-eps * eps).ln_1p();
        let log_ratio = 2.0 * eps.atanh();
        return (1.0 + alpha * eps) * (log_one_minus_sq - 2.0 * (alpha * eps).ln_1p())
            + (alpha + eps) * log_ratio;
    }
    xlogx_bracket(eps, alpha)
}

fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

fn xlogx_bracket(eps: f64, alpha: f64) -> f64 {
    (1.0 + alpha) * xlogx(1.0 + eps) + (1.0 - alpha) * xlogx(1.0 - eps)
        - 2.0 * xlogx(1.0 + alpha * eps)
}

fn exact_reduced_nats(rf: &ReducedForm) -> f64 {
    let sum: f64 = rf
        .pbar
        .iter()
        .zip(&rf.eps)
        .map(|(&p, &e)| p * exact_bracket(e, rf.alpha))
        .sum();
    0.5 * sum
}

/// Closed-form divergence in the reduced variables.
pub fn jsd_exact_reduced(pair: &WeightedPair, units: Units) -> EvalResult {
    let rf = reduce(pair);
    EvalResult {
        value: units.from_nats(exact_reduced_nats(&rf)),
        units,
        method: Method::ExactReduced,
        auto_selected: false,
        order: None,
        diagnostics: Diagnostics::of(&rf),
    }
}

pub(crate) fn series_nats(rf: &ReducedForm, kernel: &SeriesKernel) -> f64 {
    let sum: f64 = rf
        .pbar
        .iter()
        .zip(&rf.eps)
        .map(|(&p, &e)| p * kernel.delta(e))
        .sum();
    0.5 * sum
}

/// Series truncated after `order` terms (highest power `eps^(order+1)`).
///
/// The value is non-negative for every input and every order, and for even
/// orders it is nondecreasing in the order.
pub fn jsd_series(pair: &WeightedPair, order: usize, units: Units) -> Result<EvalResult> {
    let rf = reduce(pair);
    let kernel = SeriesKernel::new(rf.alpha, order)?;
    Ok(EvalResult {
        value: units.from_nats(series_nats(&rf, &kernel)),
        units,
        method: Method::Series,
        auto_selected: false,
        order: Some(order),
        diagnostics: Diagnostics::of(&rf),
    })
}

/// Picks the series when every `|eps_j| < 0.5` and grows it two terms at a
/// time until the newest group adds less than `rel_tol` of the running total
/// (or the order reaches 64). Larger perturbations go to the exact form.
pub fn jsd_auto(pair: &WeightedPair, rel_tol: f64, units: Units) -> Result<EvalResult> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(JsdError::InvalidTolerance(rel_tol));
    }
    let rf = reduce(pair);
    let diagnostics = Diagnostics::of(&rf);
    if rf.max_abs_eps() >= AUTO_SERIES_THRESHOLD {
        return Ok(EvalResult {
            value: units.from_nats(exact_reduced_nats(&rf)),
            units,
            method: Method::ExactReduced,
            auto_selected: true,
            order: None,
            diagnostics,
        });
    }

    let kernel = SeriesKernel::new(rf.alpha, AUTO_MAX_ORDER)?;
    let squares: Vec<f64> = rf.eps.iter().map(|e| e * e).collect();
    let mut powers = vec![1.0; rf.len()];
    let mut total = 0.0;
    let mut order = AUTO_MAX_ORDER;
    for g in 0..kernel.groups() {
        let mut group_sum = 0.0;
        for j in 0..rf.len() {
            powers[j] *= squares[j];
            group_sum += rf.pbar[j] * kernel.group_with_power(g, rf.eps[j], powers[j]);
        }
        let contribution = 0.5 * group_sum;
        total += contribution;
        if contribution <= rel_tol * total {
            order = 2 * (g + 1);
            break;
        }
    }
    Ok(EvalResult {
        value: units.from_nats(total),
        units,
        method: Method::Series,
        auto_selected: true,
        order: Some(order),
        diagnostics,
    })
}
