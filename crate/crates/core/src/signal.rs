//! Signal containers and elementary transformations shared by all analyses.
//!
//! All types are immutable after construction and every operation is a pure
//! function, so concurrent use on shared inputs is safe.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Minimum length accepted at the decomposition boundary. Below this, spline
/// envelopes are meaningless.
pub const MIN_DECOMPOSITION_LEN: usize = 8;

/// A uniformly sampled real-valued signal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    samples: Vec<f64>,
    sample_rate: f64,
    label: String,
}

impl TimeSeries {
    /// Builds a series, rejecting non-finite samples and non-positive rates.
    pub fn new(label: impl Into<String>, samples: Vec<f64>, sample_rate: f64) -> Result<Self> {
        if !(sample_rate > 0.0) || !sample_rate.is_finite() {
            return Err(Error::invalid(format!(
                "sample_rate must be finite and > 0, got {sample_rate}"
            )));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "sample {i} is not finite ({})",
                samples[i]
            )));
        }
        Ok(Self {
            samples,
            sample_rate,
            label: label.into(),
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Population standard deviation.
    pub fn std(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        let m = self.mean();
        let var =
            self.samples.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / self.samples.len() as f64;
        var.sqrt()
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// Same samples under a new label.
    pub fn relabel(&self, label: impl Into<String>) -> Self {
        Self {
            samples: self.samples.clone(),
            sample_rate: self.sample_rate,
            label: label.into(),
        }
    }
}

/// An ordered set of equally long, equally sampled channels. The first
/// `data_channel_count` channels carry data; any remainder is auxiliary
/// (e.g. injected noise).
#[derive(Debug, Clone)]
pub struct MultichannelSignal {
    channels: Vec<TimeSeries>,
    data_channel_count: usize,
}

impl MultichannelSignal {
    pub fn new(channels: Vec<TimeSeries>, data_channel_count: usize) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::invalid("at least one channel required"));
        }
        if data_channel_count > channels.len() {
            return Err(Error::invalid(format!(
                "data_channel_count {} exceeds channel count {}",
                data_channel_count,
                channels.len()
            )));
        }
        let len = channels[0].len();
        let rate = channels[0].sample_rate();
        for ch in &channels[1..] {
            if ch.len() != len {
                return Err(Error::invalid(format!(
                    "channel '{}' length {} differs from {}",
                    ch.label(),
                    ch.len(),
                    len
                )));
            }
            if ch.sample_rate() != rate {
                return Err(Error::invalid(format!(
                    "channel '{}' sample rate {} differs from {}",
                    ch.label(),
                    ch.sample_rate(),
                    rate
                )));
            }
        }
        Ok(Self {
            channels,
            data_channel_count,
        })
    }

    pub fn channels(&self) -> &[TimeSeries] {
        &self.channels
    }

    pub fn channel(&self, index: usize) -> &TimeSeries {
        &self.channels[index]
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    pub fn data_channel_count(&self) -> usize {
        self.data_channel_count
    }

    pub fn len(&self) -> usize {
        self.channels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sample_rate(&self) -> f64 {
        self.channels[0].sample_rate()
    }
}

/// Tiling of a series into fixed-size non-overlapping windows; any partial
/// trailing window is discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPlan {
    pub window_length: usize,
    pub hop: usize,
    pub count: usize,
}

/// Keeps every `factor`-th sample starting at index 0; the sample rate is
/// divided accordingly. No anti-alias filter is applied: stride decimation is
/// used deliberately to degrade fast dynamics in robustness experiments.
pub fn decimate(series: &TimeSeries, factor: usize) -> Result<TimeSeries> {
    if factor == 0 {
        return Err(Error::invalid("decimation factor must be >= 1"));
    }
    if factor > series.len() {
        return Err(Error::invalid(format!(
            "decimation factor {} exceeds series length {}",
            factor,
            series.len()
        )));
    }
    if factor == 1 {
        return Ok(series.clone());
    }
    let samples: Vec<f64> = series.samples().iter().copied().step_by(factor).collect();
    TimeSeries::new(
        series.label(),
        samples,
        series.sample_rate() / factor as f64,
    )
}

/// Shifts a series in time and returns only the overlap segment, so a shifted
/// series stays alignable with an unshifted partner of the same length.
///
/// A positive shift delays the series (the last `shift` samples fall outside
/// the overlap); a negative shift advances it (the first `|shift|` samples
/// fall outside). No zero padding is performed — padding would inject
/// artificial extrema into downstream envelope fitting.
pub fn lag_shift(series: &TimeSeries, shift: i64) -> Result<TimeSeries> {
    let n = series.len() as i64;
    if shift.abs() >= n {
        return Err(Error::invalid(format!(
            "|shift| = {} must be < series length {}",
            shift.abs(),
            n
        )));
    }
    let samples = if shift >= 0 {
        series.samples()[..(n - shift) as usize].to_vec()
    } else {
        series.samples()[(-shift) as usize..].to_vec()
    };
    TimeSeries::new(series.label(), samples, series.sample_rate())
}

/// Crops `reference` to the region that overlaps `lag_shift(shifted, shift)`.
/// Returns `(reference_overlap, shifted_overlap)`, both of length
/// `len - |shift|`.
pub fn align_shifted_pair(
    reference: &TimeSeries,
    shifted: &TimeSeries,
    shift: i64,
) -> Result<(TimeSeries, TimeSeries)> {
    if reference.len() != shifted.len() {
        return Err(Error::invalid(format!(
            "pair lengths differ: {} vs {}",
            reference.len(),
            shifted.len()
        )));
    }
    let n = reference.len() as i64;
    if shift.abs() >= n {
        return Err(Error::invalid(format!(
            "|shift| = {} must be < series length {}",
            shift.abs(),
            n
        )));
    }
    let moved = lag_shift(shifted, shift)?;
    let samples = if shift >= 0 {
        reference.samples()[shift as usize..].to_vec()
    } else {
        reference.samples()[..(n + shift) as usize].to_vec()
    };
    let cropped = TimeSeries::new(reference.label(), samples, reference.sample_rate())?;
    Ok((cropped, moved))
}

/// Splits a series into non-overlapping windows of `window_length` samples
/// (hop = window length); the trailing partial window is discarded.
pub fn segment(series: &TimeSeries, window_length: usize) -> Result<(WindowPlan, Vec<TimeSeries>)> {
    if window_length < MIN_DECOMPOSITION_LEN {
        return Err(Error::invalid(format!(
            "window length {} below minimum {}",
            window_length, MIN_DECOMPOSITION_LEN
        )));
    }
    if window_length > series.len() {
        return Err(Error::invalid(format!(
            "window length {} exceeds series length {}",
            window_length,
            series.len()
        )));
    }
    let count = (series.len() - window_length) / window_length + 1;
    let plan = WindowPlan {
        window_length,
        hop: window_length,
        count,
    };
    let mut windows = Vec::with_capacity(count);
    for w in 0..count {
        let start = w * window_length;
        let chunk = series.samples()[start..start + window_length].to_vec();
        windows.push(TimeSeries::new(
            format!("{}[{}]", series.label(), w),
            chunk,
            series.sample_rate(),
        )?);
    }
    Ok((plan, windows))
}
