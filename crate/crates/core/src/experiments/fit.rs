use crate::error::{JsdError, Result};

/// Inclusive bounds on `x` (here `log10 ||eps||`) for points entering a fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitWindow {
    pub lo: f64,
    pub hi: f64,
}

impl FitWindow {
    pub const UNBOUNDED: FitWindow = FitWindow {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// Points beyond `log10 ||eps|| = -0.3` are excluded: the series converges
/// slowly there and the truncation error stops following a power law.
pub const DEFAULT_WINDOW: FitWindow = FitWindow {
    lo: f64::NEG_INFINITY,
    hi: -0.3,
};

/// Relative differences at or below this are rounding noise, not truncation
/// error, and are left out of fits.
pub const DEFAULT_FLOOR: f64 = 1e-13;

/// Absolute differences `|series - naive|` (nats) below this are left out of
/// accuracy fits. The naive formula's own rounding error is a few `1e-15` for
/// `n ~ 100` and does not shrink with `||eps||`, so a relative floor alone
/// lets it swamp the truncation error at small `||eps||`.
pub const NAIVE_NOISE_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
    /// Smallest and largest `x` among the points actually used.
    pub fit_window: (f64, f64),
}

/// Ordinary least squares of `log10 y` on `x`, using only points with `x`
/// inside `window` and `y > floor`.
pub fn fit_loglog_slope(points: &[(f64, f64)], window: FitWindow, floor: f64) -> Result<FitResult> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| x.is_finite() && window.contains(*x) && *y > floor && y.is_finite())
        .map(|&(x, y)| (x, y.log10()))
        .collect();
    let n = usable.len();
    if n < 2 {
        return Err(JsdError::InsufficientData(n));
    }
    let nf = n as f64;
    let mean_x = usable.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = usable.iter().map(|p| p.1).sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &usable {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        // All x identical: the slope is undetermined.
        return Err(JsdError::InsufficientData(1));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    let lo = usable.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = usable.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        n_points: n,
        fit_window: (lo, hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = (0..20)
            .map(|i| {
                let x = -4.0 + 0.2 * i as f64;
                (x, 10f64.powf(-3.0 * x + 1.0))
            })
            .collect();
        let fit = fit_loglog_slope(&pts, FitWindow::UNBOUNDED, 0.0).unwrap();
        assert!((fit.slope + 3.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-11);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.n_points, 20);
    }

    #[test]
    fn window_and_floor_filter_points() {
        let pts = [
            (-3.0, 1e-6),
            (-2.0, 1e-4),
            (-1.0, 1e-2),
            (-0.1, 0.5),
            (-3.5, 1e-20),
        ];
        let fit = fit_loglog_slope(&pts, DEFAULT_WINDOW, DEFAULT_FLOOR).unwrap();
        assert_eq!(fit.n_points, 3);
        assert_eq!(fit.fit_window, (-3.0, -1.0));
        assert!((fit.slope - 2.0).abs() < 1e-12);
    }

    #[test]
    fn insufficient_data() {
        assert!(matches!(
            fit_loglog_slope(&[(-1.0, 0.1)], FitWindow::UNBOUNDED, 0.0),
            Err(JsdError::InsufficientData(1))
        ));
        assert!(matches!(
            fit_loglog_slope(&[(-1.0, 0.1), (-2.0, 0.0)], FitWindow::UNBOUNDED, 0.0),
            Err(JsdError::InsufficientData(1))
        ));
        assert!(fit_loglog_slope(&[(-1.0, 0.1), (-1.0, 0.2)], FitWindow::UNBOUNDED, 0.0).is_err());
    }
}
