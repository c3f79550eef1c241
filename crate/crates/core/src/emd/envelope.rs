//! Envelope construction for sifting.
//!
//! Extrema are mirrored across each signal edge before spline fitting so the
//! envelopes cover the whole record without end swings.

use crate::error::{Error, Result};
use crate::signal::TimeSeries;

use super::extrema::{find_extrema, local_extrema};
use super::spline::cubic_interp_at_indices;

/// Knot set for one envelope: extremum positions extended by mirror images,
/// with the value at each mirrored position copied from its source extremum.
/// `values[i]` belongs to position `positions[i]`; positions strictly
/// increase and bracket `[0, n-1]`.
pub(super) fn mirrored_knots(
    indices: &[usize],
    values_at: impl Fn(usize) -> f64,
    n: usize,
    extension: usize,
) -> (Vec<f64>, Vec<f64>) {
    let k = indices.len();
    let last = (n - 1) as f64;
    let mut xs = Vec::with_capacity(k + 2 * extension);
    let mut ys = Vec::with_capacity(k + 2 * extension);

    // Left edge: mirror across index 0. An extremum exactly at 0 maps onto
    // itself and is skipped.
    let left: Vec<usize> = indices
        .iter()
        .copied()
        .filter(|&i| i > 0)
        .take(extension)
        .collect();
    for &i in left.iter().rev() {
        xs.push(-(i as f64));
        ys.push(values_at(i));
    }

    for &i in indices {
        xs.push(i as f64);
        ys.push(values_at(i));
    }

    let right: Vec<usize> = indices
        .iter()
        .rev()
        .copied()
        .filter(|&i| i < n - 1)
        .take(extension)
        .collect();
    for &i in &right {
        xs.push(2.0 * last - i as f64);
        ys.push(values_at(i));
    }

    debug_assert!(xs.windows(2).all(|w| w[0] < w[1]));
    (xs, ys)
}

/// One spline envelope of a scalar signal through the given extremum indices.
pub(super) fn envelope_curve(
    samples: &[f64],
    indices: &[usize],
    extension: usize,
) -> Result<Vec<f64>> {
    if indices.len() < 2 {
        return Err(Error::NotEnoughExtrema(format!(
            "{} extrema, need 2",
            indices.len()
        )));
    }
    let (xs, ys) = mirrored_knots(indices, |i| samples[i], samples.len(), extension);
    Ok(cubic_interp_at_indices(&xs, &ys, samples.len()))
}

/// Pointwise mean of the upper and lower cubic-spline envelopes, evaluated at
/// every sample. `extrema` comes from [`find_extrema`].
pub fn envelope_mean(
    series: &TimeSeries,
    extrema: &(Vec<usize>, Vec<usize>),
    extension: usize,
) -> Result<TimeSeries> {
    let (maxima, minima) = extrema;
    let upper = envelope_curve(series.samples(), maxima, extension)?;
    let lower = envelope_curve(series.samples(), minima, extension)?;
    let mean: Vec<f64> = upper
        .iter()
        .zip(&lower)
        .map(|(u, l)| 0.5 * (u + l))
        .collect();
    TimeSeries::new("envelope_mean", mean, series.sample_rate())
}

/// Convenience wrapper: locate extrema, then compute the envelope mean.
pub fn envelope_mean_auto(series: &TimeSeries, extension: usize) -> Result<TimeSeries> {
    let extrema = find_extrema(series)?;
    envelope_mean(series, &extrema, extension)
}

/// Directional envelope mean for multivariate sifting: project the channels
/// onto a direction, take the projection's extremum locations, and spline
/// every channel through its own values at those locations. Returns the
/// per-channel mean of upper and lower envelopes, or `None` when the
/// projection lacks two maxima or two minima.
pub(super) fn directional_envelope_mean(
    channels: &[Vec<f64>],
    projection: &[f64],
    extension: usize,
) -> Option<Vec<Vec<f64>>> {
    let (maxima, minima) = local_extrema(projection);
    if maxima.len() < 2 || minima.len() < 2 {
        return None;
    }
    let n = projection.len();
    let mut means = Vec::with_capacity(channels.len());
    for ch in channels {
        let (xs_u, ys_u) = mirrored_knots(&maxima, |i| ch[i], n, extension);
        let upper = cubic_interp_at_indices(&xs_u, &ys_u, n);
        let (xs_l, ys_l) = mirrored_knots(&minima, |i| ch[i], n, extension);
        let lower = cubic_interp_at_indices(&xs_l, &ys_l, n);
        means.push(
            upper
                .iter()
                .zip(&lower)
                .map(|(u, l)| 0.5 * (u + l))
                .collect(),
        );
    }
    Some(means)
}
