//! Pairwise Granger causality via nested least-squares autoregressions.
//!
//! For each direction, a restricted model (own lags only) is compared against
//! a full model (own plus the other series' lags) with an F-test on the
//! residual sum of squares. The lag order is selected by BIC on the bivariate
//! model. Least squares uses Householder QR; a relative rank tolerance of
//! 1e-10 raises a conditioning error for constant or collinear inputs.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, FisherSnedecor};

use crate::error::{Error, Result};
use crate::signal::TimeSeries;

pub const DEFAULT_MAX_ORDER: usize = 20;
pub const DEFAULT_ALPHA: f64 = 0.05;

const RANK_TOLERANCE: f64 = 1e-10;

/// One direction of the test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrangerDirection {
    pub f_statistic: f64,
    pub p_value: f64,
    /// Residual variance of the restricted (own-lags) model.
    pub var_restricted: f64,
    /// Residual variance of the full model; never exceeds the restricted one.
    pub var_full: f64,
}

impl GrangerDirection {
    pub fn detected(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrangerResult {
    /// BIC-selected lag order.
    pub order: usize,
    pub x_to_y: GrangerDirection,
    pub y_to_x: GrangerDirection,
}

/// Runs the pairwise test with BIC order selection over `1..=max_order`
/// (clipped to what the sample size supports).
pub fn granger_pairwise(x: &TimeSeries, y: &TimeSeries, max_order: usize) -> Result<GrangerResult> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "series lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if max_order == 0 {
        return Err(Error::invalid("max_order must be >= 1"));
    }
    let n = x.len();
    // Clip the order so the widest regression keeps a few residual degrees
    // of freedom.
    let supportable = n.saturating_sub(6) / 3;
    let max_order = max_order.min(supportable);
    if max_order == 0 {
        return Err(Error::invalid(format!(
            "series too short for Granger regression: {n} samples"
        )));
    }

    let xs = x.samples();
    let ys = y.samples();
    let order = select_order_bic(xs, ys, max_order)?;
    let x_to_y = direction_test(xs, ys, order)?;
    let y_to_x = direction_test(ys, xs, order)?;
    Ok(GrangerResult {
        order,
        x_to_y,
        y_to_x,
    })
}

/// BIC over the bivariate VAR, evaluated on the common sample implied by
/// `max_order` so candidate orders stay comparable. Ties go to the smaller
/// order.
fn select_order_bic(xs: &[f64], ys: &[f64], max_order: usize) -> Result<usize> {
    let mut best = (f64::INFINITY, 1usize);
    for p in 1..=max_order {
        let rx = regression_residuals(xs, ys, xs, p, max_order)?;
        let ry = regression_residuals(ys, xs, ys, p, max_order)?;
        let t = rx.len() as f64;
        let var_x = rx.iter().map(|v| v * v).sum::<f64>() / t;
        let var_y = ry.iter().map(|v| v * v).sum::<f64>() / t;
        let cov = rx.iter().zip(&ry).map(|(a, b)| a * b).sum::<f64>() / t;
        let det = (var_x * var_y - cov * cov).max(f64::MIN_POSITIVE);
        let params = 2.0 * (1.0 + 2.0 * p as f64);
        let bic = det.ln() + params * t.ln() / t;
        if bic < best.0 {
            best = (bic, p);
        }
    }
    Ok(best.1)
}

/// F-test of "the other series' lags add explanatory power" for the
/// direction `other -> target`.
fn direction_test(other: &[f64], target: &[f64], p: usize) -> Result<GrangerDirection> {
    let rss_restricted = regression_rss(target, other, target, p, p, false)?;
    let rss_full = regression_rss(target, other, target, p, p, true)?;
    let t_eff = target.len() - p;
    let k_full = 2 * p + 1;
    if t_eff <= k_full {
        return Err(Error::invalid("too few samples for the full model"));
    }
    let df1 = p as f64;
    let df2 = (t_eff - k_full) as f64;
    let numerator = ((rss_restricted - rss_full) / df1).max(0.0);
    let denominator = rss_full / df2;
    let f_statistic = if denominator > 0.0 {
        numerator / denominator
    } else if numerator > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    let p_value = if f_statistic.is_finite() {
        let dist = FisherSnedecor::new(df1, df2)
            .map_err(|e| Error::invalid(format!("F distribution: {e}")))?;
        (1.0 - dist.cdf(f_statistic)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    Ok(GrangerDirection {
        f_statistic,
        p_value,
        var_restricted: rss_restricted / t_eff as f64,
        var_full: rss_full / t_eff as f64,
    })
}

/// RSS of `target[t] ~ 1 + target lags 1..=p (+ other lags 1..=p)`, with
/// rows starting at `start >= p`.
fn regression_rss(
    target: &[f64],
    other: &[f64],
    response: &[f64],
    p: usize,
    start: usize,
    include_other: bool,
) -> Result<f64> {
    let (_, rss) = lagged_least_squares(target, other, response, p, start, include_other)?;
    Ok(rss)
}

fn regression_residuals(
    target: &[f64],
    other: &[f64],
    response: &[f64],
    p: usize,
    start: usize,
) -> Result<Vec<f64>> {
    let n = response.len();
    let rows = n - start;
    let (coeffs, _) = lagged_least_squares(target, other, response, p, start, true)?;
    let mut residuals = Vec::with_capacity(rows);
    for t in start..n {
        let mut fit = coeffs[0];
        for lag in 1..=p {
            fit += coeffs[lag] * target[t - lag];
            fit += coeffs[p + lag] * other[t - lag];
        }
        residuals.push(response[t] - fit);
    }
    Ok(residuals)
}

fn lagged_least_squares(
    target: &[f64],
    other: &[f64],
    response: &[f64],
    p: usize,
    start: usize,
    include_other: bool,
) -> Result<(Vec<f64>, f64)> {
    let n = response.len();
    debug_assert!(start >= p);
    let rows = n - start;
    let cols = if include_other { 2 * p + 1 } else { p + 1 };
    let mut a = vec![0.0; rows * cols];
    let mut b = Vec::with_capacity(rows);
    for (r, t) in (start..n).enumerate() {
        a[r * cols] = 1.0;
        for lag in 1..=p {
            a[r * cols + lag] = target[t - lag];
            if include_other {
                a[r * cols + p + lag] = other[t - lag];
            }
        }
        b.push(response[t]);
    }
    householder_least_squares(&mut a, rows, cols, &mut b)
}

/// In-place Householder QR least squares on a row-major matrix. Returns the
/// coefficients and the residual sum of squares (the squared tail of Qᵀb).
fn householder_least_squares(
    a: &mut [f64],
    rows: usize,
    cols: usize,
    b: &mut [f64],
) -> Result<(Vec<f64>, f64)> {
    if rows < cols {
        return Err(Error::invalid("least squares needs rows >= cols"));
    }
    for j in 0..cols {
        // Householder vector for column j below the diagonal.
        let mut norm = 0.0;
        for i in j..rows {
            let v = a[i * cols + j];
            norm += v * v;
        }
        let norm = norm.sqrt();
        if norm == 0.0 {
            continue;
        }
        let pivot = a[j * cols + j];
        let alpha = if pivot >= 0.0 { -norm } else { norm };
        let v0 = pivot - alpha;
        let mut vnorm2 = v0 * v0;
        for i in j + 1..rows {
            let v = a[i * cols + j];
            vnorm2 += v * v;
        }
        if vnorm2 == 0.0 {
            continue;
        }
        // Apply H = I - 2 v vᵀ / (vᵀv) to the trailing columns and to b.
        for col in j..cols {
            let mut dot = v0 * a[j * cols + col];
            for i in j + 1..rows {
                dot += a[i * cols + j] * a[i * cols + col];
            }
            let scale = 2.0 * dot / vnorm2;
            if col == j {
                a[j * cols + j] -= scale * v0;
                // Sub-diagonal elements hold the reflector; they are not part
                // of R and are ignored after this column.
            } else {
                a[j * cols + col] -= scale * v0;
                for i in j + 1..rows {
                    a[i * cols + col] -= scale * a[i * cols + j];
                }
            }
        }
        let mut dot = v0 * b[j];
        for i in j + 1..rows {
            dot += a[i * cols + j] * b[i];
        }
        let scale = 2.0 * dot / vnorm2;
        b[j] -= scale * v0;
        for i in j + 1..rows {
            b[i] -= scale * a[i * cols + j];
        }
    }

    // Rank check on the diagonal of R.
    let mut dmax: f64 = 0.0;
    let mut dmin = f64::INFINITY;
    for j in 0..cols {
        let d = a[j * cols + j].abs();
        dmax = dmax.max(d);
        dmin = dmin.min(d);
    }
    if dmax == 0.0 || dmin / dmax < RANK_TOLERANCE {
        return Err(Error::IllConditioned(format!(
            "regressor matrix is rank deficient (diag ratio {:.3e})",
            if dmax == 0.0 { 0.0 } else { dmin / dmax }
        )));
    }

    // Back substitution on R x = (Qᵀ b)[..cols].
    let mut coeffs = vec![0.0; cols];
    for j in (0..cols).rev() {
        let mut sum = b[j];
        for k in j + 1..cols {
            sum -= a[j * cols + k] * coeffs[k];
        }
        coeffs[j] = sum / a[j * cols + j];
    }
    let rss = b[cols..rows].iter().map(|v| v * v).sum();
    Ok((coeffs, rss))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use rand_distr::{Distribution, StandardNormal};

    fn noise_series(label: &str, n: usize, seed: u64, stream: u64) -> TimeSeries {
        let mut rng = stream_rng(seed, stream);
        let samples: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        TimeSeries::new(label, samples, 1.0).unwrap()
    }

    fn lagged_pair(n: usize, seed: u64) -> (TimeSeries, TimeSeries) {
        // y follows x with one lag plus noise: x should Granger-cause y.
        let mut rng = stream_rng(seed, 0);
        let mut rng2 = stream_rng(seed, 1);
        let mut x = vec![0.0; n];
        let mut y = vec![0.0; n];
        for t in 1..n {
            let wx: f64 = StandardNormal.sample(&mut rng);
            let wy: f64 = StandardNormal.sample(&mut rng2);
            x[t] = 0.5 * x[t - 1] + wx;
            y[t] = 0.8 * x[t - 1] + 0.2 * y[t - 1] + 0.5 * wy;
        }
        (
            TimeSeries::new("x", x, 1.0).unwrap(),
            TimeSeries::new("y", y, 1.0).unwrap(),
        )
    }

    #[test]
    fn detects_lagged_coupling_direction() {
        let (x, y) = lagged_pair(800, 42);
        let r = granger_pairwise(&x, &y, 10).unwrap();
        assert!(r.x_to_y.p_value < 0.01, "p(x->y) = {}", r.x_to_y.p_value);
        assert!(r.y_to_x.p_value > r.x_to_y.p_value);
    }

    #[test]
    fn nested_models_never_lose_fit() {
        let (x, y) = lagged_pair(400, 7);
        let r = granger_pairwise(&x, &y, 8).unwrap();
        assert!(r.x_to_y.var_full <= r.x_to_y.var_restricted + 1e-12);
        assert!(r.y_to_x.var_full <= r.y_to_x.var_restricted + 1e-12);
        assert!(r.x_to_y.f_statistic >= 0.0);
        assert!((0.0..=1.0).contains(&r.x_to_y.p_value));
    }

    #[test]
    fn affine_scaling_leaves_f_unchanged() {
        let (x, y) = lagged_pair(500, 19);
        let base = granger_pairwise(&x, &y, 6).unwrap();
        let x2 = TimeSeries::new(
            "x2",
            x.samples().iter().map(|v| 3.5 * v - 2.0).collect(),
            1.0,
        )
        .unwrap();
        let y2 = TimeSeries::new(
            "y2",
            y.samples().iter().map(|v| -0.25 * v + 10.0).collect(),
            1.0,
        )
        .unwrap();
        let scaled = granger_pairwise(&x2, &y2, 6).unwrap();
        assert_eq!(base.order, scaled.order);
        assert!((base.x_to_y.f_statistic - scaled.x_to_y.f_statistic).abs() < 1e-8);
        assert!((base.y_to_x.f_statistic - scaled.y_to_x.f_statistic).abs() < 1e-8);
    }

    #[test]
    fn deterministic_copy_is_degenerate() {
        // y(t) = x(t-1) exactly: either flagged as ill-conditioned or
        // detected with vanishing p.
        let x = noise_series("x", 300, 3, 0);
        let mut ys = vec![0.0; 300];
        for t in 1..300 {
            ys[t] = x.samples()[t - 1];
        }
        let y = TimeSeries::new("y", ys, 1.0).unwrap();
        match granger_pairwise(&x, &y, 5) {
            Err(Error::IllConditioned(_)) => {}
            Ok(r) => {
                assert!(r.x_to_y.p_value < 1e-6);
                assert!(r.y_to_x.p_value > 0.01);
            }
            Err(e) => panic!("unexpected error: {e}"),
        }
    }

    #[test]
    fn constant_input_is_ill_conditioned() {
        let x = TimeSeries::new("x", vec![1.0; 200], 1.0).unwrap();
        let y = noise_series("y", 200, 5, 0);
        assert!(matches!(
            granger_pairwise(&x, &y, 5),
            Err(Error::IllConditioned(_))
        ));
    }

    #[test]
    fn independent_noise_rarely_detected() {
        let mut hits = 0;
        let seeds = 40;
        for seed in 0..seeds {
            let x = noise_series("x", 300, seed, 0);
            let y = noise_series("y", 300, seed, 1);
            let r = granger_pairwise(&x, &y, 5).unwrap();
            if r.x_to_y.detected(DEFAULT_ALPHA) {
                hits += 1;
            }
        }
        // Test size ~5%; allow headroom on 40 draws.
        assert!(hits <= 6, "{hits}/{seeds} false positives");
    }

    #[test]
    fn rejects_short_series() {
        let x = noise_series("x", 8, 1, 0);
        let y = noise_series("y", 8, 1, 1);
        assert!(granger_pairwise(&x, &y, 20).is_err());
    }
}
