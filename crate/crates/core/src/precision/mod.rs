//! Double-double reference evaluation, used as ground truth when measuring
//! the error of the native-precision evaluators.

mod double_double;

pub use double_double::{DoubleDouble, LN_2};

use double_double::{atanh_minus_linear, entropy_excess};

use crate::distribution::WeightedPair;
use crate::error::{JsdError, Result};

/// Extended-precision value returned by the reference evaluator.
pub type WideValue = DoubleDouble;

/// Per-bin bracket of the reduced closed form in double-double.
///
/// For `|eps| < 1/2` the two terms linear in `eps` (`-2 alpha eps` from the
/// mixture logarithm, `+2 alpha eps` from the log-ratio) are removed
/// analytically, leaving
/// `(1+u) ln(1-eps^2) - 2 F(u) + 2 alpha G(eps) + 2 eps atanh(eps)` with
/// `u = alpha eps`, `F(u) = (1+u) ln(1+u) - u` and `G(e) = atanh(e) - e`.
/// Every remaining term is at least quadratic in `eps`.
fn wide_bracket(eps: DoubleDouble, alpha: DoubleDouble) -> DoubleDouble {
    if eps.is_zero() {
        return DoubleDouble::ZERO;
    }
    if eps.hi.abs() < 0.5 {
        bracket_small(eps, alpha)
    } else {
        bracket_direct(eps, alpha)
    }
}

fn bracket_small(eps: DoubleDouble, alpha: DoubleDouble) -> DoubleDouble {
    let u = alpha * eps;
    let log_one_minus_sq = (-eps.square()).ln_1p();
    (DoubleDouble::ONE + u) * log_one_minus_sq - entropy_excess(u).scale(2.0)
        + (alpha * atanh_minus_linear(eps)).scale(2.0)
        + (eps * eps.atanh()).scale(2.0)
}

/// `(1 + a)(1 + e) ln(1 + e) + (1 - a)(1 - e) ln(1 - e) - 2 (1 + u) ln(1 + u)`.
fn bracket_direct(eps: DoubleDouble, alpha: DoubleDouble) -> DoubleDouble {
    let one = DoubleDouble::ONE;
    (one + alpha) * xlogx(one + eps) + (one - alpha) * xlogx(one - eps)
        - xlogx(one + alpha * eps).scale(2.0)
}

fn xlogx(x: DoubleDouble) -> DoubleDouble {
    if x.hi > 0.0 {
        x * x.ln()
    } else {
        DoubleDouble::ZERO
    }
}

/// Divergence in nats, evaluated entirely in double-double with the
/// reduced variables formed exactly from the inputs. Bins are accumulated
/// in double-double, which compensates the summation.
pub fn jsd_reference(pair: &WeightedPair) -> WideValue {
    let alpha = DoubleDouble::sum_of(pair.pi1(), -pair.pi2());
    let mut total = DoubleDouble::ZERO;
    for (&a, &b) in pair.p1().iter().zip(pair.p2()) {
        let pbar = DoubleDouble::sum_of(a, b).scale(0.5);
        if pbar.is_zero() {
            continue;
        }
        let eta = DoubleDouble::sum_of(a, -b).scale(0.5);
        let eps = eta / pbar;
        total += pbar * wide_bracket(eps, alpha);
    }
    total.scale(0.5)
}

/// `|a - reference| / |reference|`, with `0/0` defined as 0.
pub fn relative_difference(a: f64, reference: WideValue) -> Result<f64> {
    if reference.is_zero() {
        return if a == 0.0 {
            Ok(0.0)
        } else {
            Err(JsdError::UndefinedRelativeError(a))
        };
    }
    let diff = (DoubleDouble::from_f64(a) - reference).abs();
    Ok((diff / reference.abs()).to_f64())
}
