//! Empirical mode decomposition engines.
//!
//! Four variants share one sifting core:
//!
//! - [`emd`] — univariate sifting with cubic-spline envelopes,
//! - [`eemd`] — ensemble averaging over noise-perturbed copies (noise is
//!   added in complementary ± pairs so the ensemble mean of the inputs stays
//!   on the original signal),
//! - [`memd`] — multivariate sifting over quasi-random direction vectors,
//! - [`na_memd`] — MEMD on the two data channels augmented with independent
//!   white Gaussian noise channels; noise channels are dropped from the
//!   output.
//!
//! Multivariate sifting guarantees the same IMF count for every channel,
//! which is what makes same-index IMFs comparable across channels.

mod diagnostics;
mod directions;
mod envelope;
mod extrema;
mod spline;

pub use diagnostics::{orthogonality_index, separability_index};
pub use directions::{first_primes, generate_directions, halton, project, DirectionSet};
pub use envelope::{envelope_mean, envelope_mean_auto};
pub use extrema::{find_extrema, local_extrema, zero_crossing_count};

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::signal::{MultichannelSignal, TimeSeries, MIN_DECOMPOSITION_LEN};

use envelope::{directional_envelope_mean, envelope_curve};
use extrema::zero_crossing_count as crossings;

/// Sifting parameters. Defaults follow community practice: stop a sift when
/// the normalized squared change drops below 0.2 or after 15 iterations,
/// mirror two extrema per edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmdConfig {
    pub max_sift_iterations: usize,
    pub sift_tolerance: f64,
    pub max_imf_count: Option<usize>,
    pub boundary_extension: usize,
}

impl Default for EmdConfig {
    fn default() -> Self {
        Self {
            max_sift_iterations: 15,
            sift_tolerance: 0.2,
            max_imf_count: None,
            boundary_extension: 2,
        }
    }
}

impl EmdConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_sift_iterations < 1 {
            return Err(Error::invalid("max_sift_iterations must be >= 1"));
        }
        if self.boundary_extension < 1 {
            return Err(Error::invalid("boundary_extension must be >= 1"));
        }
        if !(self.sift_tolerance > 0.0) {
            return Err(Error::invalid("sift_tolerance must be > 0"));
        }
        Ok(())
    }
}

/// Noise-injection parameters for EEMD and NA-MEMD. The level is a multiple
/// of the data's standard deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub noise_channel_count: usize,
    pub noise_level: f64,
    pub seed: u64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            noise_channel_count: 2,
            noise_level: 0.1,
            seed: 0,
        }
    }
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<()> {
        if self.noise_channel_count < 1 {
            return Err(Error::invalid("noise_channel_count must be >= 1"));
        }
        if !(self.noise_level > 0.0) {
            return Err(Error::invalid("noise_level must be > 0"));
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }
}

/// IMFs and residual of one channel.
#[derive(Debug, Clone)]
pub struct ChannelModes {
    label: String,
    imfs: Vec<Vec<f64>>,
    residual: Vec<f64>,
}

impl ChannelModes {
    pub fn new(label: impl Into<String>, imfs: Vec<Vec<f64>>, residual: Vec<f64>) -> Self {
        Self {
            label: label.into(),
            imfs,
            residual,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn imfs(&self) -> &[Vec<f64>] {
        &self.imfs
    }

    pub fn residual(&self) -> &[f64] {
        &self.residual
    }
}

/// Channel-aligned decomposition: every channel carries the same number of
/// IMFs plus a residual trend, and summing them reproduces the channel input.
#[derive(Debug, Clone)]
pub struct Decomposition {
    channels: Vec<ChannelModes>,
    sample_rate: f64,
}

impl Decomposition {
    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    /// IMF count K, identical across channels by construction.
    pub fn imf_count(&self) -> usize {
        self.channels[0].imfs.len()
    }

    pub fn len(&self) -> usize {
        self.channels[0].residual.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn channel(&self, index: usize) -> &ChannelModes {
        &self.channels[index]
    }

    pub fn channels(&self) -> &[ChannelModes] {
        &self.channels
    }

    pub fn imf(&self, channel: usize, k: usize) -> &[f64] {
        &self.channels[channel].imfs[k]
    }

    /// IMF as a standalone series (for Hilbert analysis).
    pub fn imf_series(&self, channel: usize, k: usize) -> TimeSeries {
        TimeSeries::new(
            format!("{}:imf{}", self.channels[channel].label, k),
            self.channels[channel].imfs[k].clone(),
            self.sample_rate,
        )
        .expect("IMF samples are finite by construction")
    }

    pub fn residual(&self, channel: usize) -> &[f64] {
        &self.channels[channel].residual
    }

    /// Sum of IMFs plus residual.
    pub fn reconstruct(&self, channel: usize) -> Vec<f64> {
        let ch = &self.channels[channel];
        let mut out = vec![0.0; ch.residual.len()];
        for imf in &ch.imfs {
            for (o, v) in out.iter_mut().zip(imf) {
                *o += v;
            }
        }
        for (o, v) in out.iter_mut().zip(&ch.residual) {
            *o += v;
        }
        out
    }

    /// Builds a decomposition from raw parts, enforcing equal IMF counts.
    pub fn from_parts(channels: Vec<ChannelModes>, sample_rate: f64) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::invalid("decomposition needs at least one channel"));
        }
        let k = channels[0].imfs.len();
        if channels.iter().any(|c| c.imfs.len() != k) {
            return Err(Error::invalid("IMF counts differ across channels"));
        }
        Ok(Self {
            channels,
            sample_rate,
        })
    }

    /// Assembles a single-channel decomposition (test and diagnostic helper).
    pub fn single_channel(
        label: impl Into<String>,
        imfs: Vec<Vec<f64>>,
        residual: Vec<f64>,
        sample_rate: f64,
    ) -> Result<Self> {
        Self::from_parts(
            vec![ChannelModes {
                label: label.into(),
                imfs,
                residual,
            }],
            sample_rate,
        )
    }
}

fn check_decomposable(len: usize) -> Result<()> {
    if len < MIN_DECOMPOSITION_LEN {
        return Err(Error::invalid(format!(
            "series length {len} below decomposition minimum {MIN_DECOMPOSITION_LEN}"
        )));
    }
    Ok(())
}

/// Safety cap on extraction when no explicit limit is set. A dyadic filter
/// bank yields about log2(n) IMFs; anything past this bound would mean the
/// sift stopped making progress.
fn imf_hard_cap(n: usize, config: &EmdConfig) -> usize {
    config
        .max_imf_count
        .unwrap_or_else(|| (usize::BITS - n.leading_zeros()) as usize + 8)
}

/// Univariate empirical mode decomposition.
///
/// Sifting repeats until the residual is monotonic or lacks two maxima and
/// two minima; degenerate inputs yield zero IMFs with the input as residual.
pub fn emd(series: &TimeSeries, config: &EmdConfig) -> Result<Decomposition> {
    config.validate()?;
    check_decomposable(series.len())?;

    let mut residue = series.samples().to_vec();
    let mut imfs: Vec<Vec<f64>> = Vec::new();
    let cap = imf_hard_cap(series.len(), config);

    loop {
        if imfs.len() >= cap {
            break;
        }
        let (maxima, minima) = local_extrema(&residue);
        if maxima.len() < 2 || minima.len() < 2 {
            break;
        }

        let mut h = residue.clone();
        for _ in 0..config.max_sift_iterations {
            let (mx, mn) = local_extrema(&h);
            if mx.len() < 2 || mn.len() < 2 {
                break;
            }
            let upper = envelope_curve(&h, &mx, config.boundary_extension)?;
            let lower = envelope_curve(&h, &mn, config.boundary_extension)?;
            let mut sd_num = 0.0;
            let mut sd_den = 0.0;
            for i in 0..h.len() {
                let m = 0.5 * (upper[i] + lower[i]);
                sd_num += m * m;
                sd_den += h[i] * h[i];
                h[i] -= m;
            }
            if sd_den == 0.0 || sd_num / sd_den < config.sift_tolerance {
                break;
            }
        }

        for (r, v) in residue.iter_mut().zip(&h) {
            *r -= v;
        }
        imfs.push(h);
    }

    Decomposition::single_channel(series.label(), imfs, residue, series.sample_rate())
}

/// Ensemble EMD: averages decompositions of noise-perturbed copies.
///
/// Noise realizations are applied in complementary ± pairs (members 2p and
/// 2p+1 share realization p with opposite sign), so for even ensemble sizes
/// the averaged members reconstruct the original signal to round-off.
/// Members whose IMF count deviates from the ensemble's modal count are
/// aligned by folding extra IMFs into the residual (or zero-padding missing
/// ones) before averaging.
pub fn eemd(
    series: &TimeSeries,
    ensemble_size: usize,
    noise: &NoiseConfig,
    config: &EmdConfig,
) -> Result<Decomposition> {
    if ensemble_size < 1 {
        return Err(Error::invalid("ensemble_size must be >= 1"));
    }
    noise.validate()?;
    config.validate()?;
    check_decomposable(series.len())?;

    let amp = noise.noise_level * series.std();
    let n = series.len();

    let members: Vec<Decomposition> = (0..ensemble_size)
        .into_par_iter()
        .map(|member| {
            let pair = (member / 2) as u64;
            let sign = if member % 2 == 0 { 1.0 } else { -1.0 };
            let mut rng = stream_rng(noise.seed, pair);
            let mut samples = series.samples().to_vec();
            for s in samples.iter_mut() {
                let z: f64 = StandardNormal.sample(&mut rng);
                *s += sign * amp * z;
            }
            let noisy = TimeSeries::new(series.label(), samples, series.sample_rate())?;
            emd(&noisy, config)
        })
        .collect::<Result<Vec<_>>>()?;

    // Modal IMF count; ties resolve to the smaller count.
    let mut counts: Vec<usize> = members.iter().map(|d| d.imf_count()).collect();
    counts.sort_unstable();
    let modal = {
        let mut best = counts[0];
        let mut best_freq = 0;
        let mut i = 0;
        while i < counts.len() {
            let j = counts[i..].iter().take_while(|c| **c == counts[i]).count();
            if j > best_freq {
                best_freq = j;
                best = counts[i];
            }
            i += j;
        }
        best
    };

    let mut imfs = vec![vec![0.0; n]; modal];
    let mut residual = vec![0.0; n];
    for member in &members {
        let k = member.imf_count();
        for (slot, acc) in imfs.iter_mut().enumerate() {
            if slot < k {
                for (a, v) in acc.iter_mut().zip(member.imf(0, slot)) {
                    *a += v;
                }
            }
            // Members with fewer IMFs contribute zeros at missing slots.
        }
        for (a, v) in residual.iter_mut().zip(member.residual(0)) {
            *a += v;
        }
        // Fold surplus IMFs into the residual so each member keeps its sum.
        for extra in modal..k {
            for (a, v) in residual.iter_mut().zip(member.imf(0, extra)) {
                *a += v;
            }
        }
    }
    let scale = 1.0 / ensemble_size as f64;
    for imf in &mut imfs {
        for v in imf.iter_mut() {
            *v *= scale;
        }
    }
    for v in residual.iter_mut() {
        *v *= scale;
    }

    Decomposition::single_channel(series.label(), imfs, residual, series.sample_rate())
}

struct DirectionalPass {
    /// Per-channel envelope mean averaged over usable directions.
    mean: Option<Vec<Vec<f64>>>,
    /// True when every projection satisfies |crossings - extrema| <= 1.
    aligned: bool,
}

fn directional_pass(
    channels: &[Vec<f64>],
    directions: &DirectionSet,
    extension: usize,
) -> DirectionalPass {
    let passes: Vec<(Option<Vec<Vec<f64>>>, bool)> = directions
        .unit_vectors()
        .par_iter()
        .map(|dir| {
            let projection = directions::project_channels(channels, dir);
            let (maxima, minima) = local_extrema(&projection);
            let ne = maxima.len() + minima.len();
            let nz = crossings(&projection);
            let aligned = nz.abs_diff(ne) <= 1;
            let mean = directional_envelope_mean(channels, &projection, extension);
            (mean, aligned)
        })
        .collect();

    let mut aligned = true;
    let mut usable = 0usize;
    let mut acc: Option<Vec<Vec<f64>>> = None;
    for (mean, ok) in passes {
        aligned &= ok;
        if let Some(mean) = mean {
            usable += 1;
            match &mut acc {
                None => acc = Some(mean),
                Some(acc) => {
                    for (a, m) in acc.iter_mut().zip(&mean) {
                        for (x, y) in a.iter_mut().zip(m) {
                            *x += y;
                        }
                    }
                }
            }
        }
    }
    if let Some(acc) = &mut acc {
        let scale = 1.0 / usable as f64;
        for ch in acc.iter_mut() {
            for v in ch.iter_mut() {
                *v *= scale;
            }
        }
    }
    DirectionalPass { mean: acc, aligned }
}

/// Multivariate EMD over a fixed direction set.
///
/// Each sifting pass projects the channel vector onto every direction,
/// splines the full signal through the projection's extremum locations, and
/// subtracts the direction-averaged envelope mean from all channels at once.
/// A sift ends when every projection satisfies the extrema/zero-crossing
/// tolerance or the iteration cap is reached; extraction ends when no
/// projection retains enough extrema. All channels therefore yield the same
/// IMF count.
pub fn memd(
    signal: &MultichannelSignal,
    directions: &DirectionSet,
    config: &EmdConfig,
) -> Result<Decomposition> {
    config.validate()?;
    check_decomposable(signal.len())?;
    if signal.channel_count() < 2 {
        return Err(Error::invalid("MEMD needs at least two channels"));
    }
    if directions.dimension() != signal.channel_count() {
        return Err(Error::invalid(format!(
            "direction dimension {} does not match channel count {}",
            directions.dimension(),
            signal.channel_count()
        )));
    }

    let mut residue: Vec<Vec<f64>> = signal
        .channels()
        .iter()
        .map(|c| c.samples().to_vec())
        .collect();
    let n_ch = residue.len();
    let mut imfs: Vec<Vec<Vec<f64>>> = vec![Vec::new(); n_ch];
    let cap = imf_hard_cap(signal.len(), config);

    loop {
        if imfs[0].len() >= cap {
            break;
        }

        let mut h = residue.clone();
        let mut extracted = false;
        for iter in 0..config.max_sift_iterations {
            let pass = directional_pass(&h, directions, config.boundary_extension);
            let Some(mean) = pass.mean else {
                // No projection retains enough extrema.
                if iter == 0 {
                    extracted = false;
                }
                break;
            };
            extracted = true;
            if pass.aligned && iter > 0 {
                break;
            }
            for (hc, mc) in h.iter_mut().zip(&mean) {
                for (x, m) in hc.iter_mut().zip(mc) {
                    *x -= m;
                }
            }
        }
        if !extracted {
            break;
        }

        for (c, hc) in h.into_iter().enumerate() {
            for (r, v) in residue[c].iter_mut().zip(&hc) {
                *r -= v;
            }
            imfs[c].push(hc);
        }
    }

    let channels = signal
        .channels()
        .iter()
        .zip(imfs)
        .zip(residue)
        .map(|((src, imfs), residual)| ChannelModes {
            label: src.label().to_string(),
            imfs,
            residual,
        })
        .collect();
    Decomposition::from_parts(channels, signal.sample_rate())
}

/// Lexicographic order of the sample vectors; used to canonicalize channel
/// order so that results never depend on which series is passed first.
fn canonical_swap(u1: &TimeSeries, u2: &TimeSeries) -> bool {
    for (a, b) in u1.samples().iter().zip(u2.samples()) {
        if a < b {
            return false;
        }
        if a > b {
            return true;
        }
    }
    false
}

/// Noise-assisted MEMD of a pair of series.
///
/// The pair is stacked with `noise.noise_channel_count` independent white
/// Gaussian channels at amplitude `noise.noise_level` times the mean of the
/// two data standard deviations, decomposed by [`memd`], and the noise
/// channels are discarded. The two data channels are internally ordered by a
/// canonical comparison of their samples before decomposition (outputs are
/// mapped back to argument order), so swapping the arguments mirrors the
/// result exactly.
pub fn na_memd(
    u1: &TimeSeries,
    u2: &TimeSeries,
    noise: &NoiseConfig,
    direction_count: usize,
    config: &EmdConfig,
) -> Result<Decomposition> {
    noise.validate()?;
    config.validate()?;
    if u1.len() != u2.len() {
        return Err(Error::invalid(format!(
            "series lengths differ: {} vs {}",
            u1.len(),
            u2.len()
        )));
    }
    if u1.sample_rate() != u2.sample_rate() {
        return Err(Error::invalid("series sample rates differ"));
    }
    check_decomposable(u1.len())?;

    let swap = canonical_swap(u1, u2);
    let (a, b) = if swap { (u2, u1) } else { (u1, u2) };

    let amp = noise.noise_level * 0.5 * (a.std() + b.std());
    let n = a.len();
    let mut channels = vec![a.clone(), b.clone()];
    for k in 0..noise.noise_channel_count {
        let mut rng = stream_rng(noise.seed, k as u64);
        let samples: Vec<f64> = (0..n)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                amp * z
            })
            .collect();
        channels.push(TimeSeries::new(
            format!("noise{k}"),
            samples,
            a.sample_rate(),
        )?);
    }

    let signal = MultichannelSignal::new(channels, 2)?;
    let directions = generate_directions(signal.channel_count(), direction_count)?;
    let full = memd(&signal, &directions, config)?;

    let mut data: Vec<ChannelModes> = full.channels.into_iter().take(2).collect();
    if swap {
        data.swap(0, 1);
    }
    data[0].label = u1.label().to_string();
    data[1].label = u2.label().to_string();
    Decomposition::from_parts(data, u1.sample_rate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tone_mix(rate: f64, n: usize, components: &[(f64, f64)]) -> TimeSeries {
        let samples: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 / rate;
                components
                    .iter()
                    .map(|(f, a)| a * (2.0 * PI * f * t).cos())
                    .sum()
            })
            .collect();
        TimeSeries::new("mix", samples, rate).unwrap()
    }

    fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()))
    }

    #[test]
    fn emd_reconstructs_input() {
        let s = tone_mix(1000.0, 1500, &[(50.0, 1.0), (5.0, 1.0)]);
        let d = emd(&s, &EmdConfig::default()).unwrap();
        assert!(d.imf_count() >= 2);
        let err = max_abs_diff(&d.reconstruct(0), s.samples());
        assert!(err <= 1e-8 * s.max_abs(), "reconstruction error {err}");
    }

    #[test]
    fn emd_rejects_short_input() {
        let s = TimeSeries::new("short", vec![0.0; 7], 1.0).unwrap();
        assert!(emd(&s, &EmdConfig::default()).is_err());
    }

    #[test]
    fn emd_on_monotonic_input_returns_residual_only() {
        let s = TimeSeries::new("ramp", (0..64).map(|i| i as f64).collect(), 1.0).unwrap();
        let d = emd(&s, &EmdConfig::default()).unwrap();
        assert_eq!(d.imf_count(), 0);
        assert_eq!(d.residual(0), s.samples());
    }

    #[test]
    fn memd_counts_match_across_channels() {
        let rate = 1000.0;
        let n = 1000;
        let a = tone_mix(rate, n, &[(40.0, 1.0), (4.0, 0.8)]);
        let b = tone_mix(rate, n, &[(40.0, 0.7), (4.0, 1.2)]);
        let sig = MultichannelSignal::new(vec![a.clone(), b.clone()], 2).unwrap();
        let dirs = generate_directions(2, 32).unwrap();
        let d = memd(&sig, &dirs, &EmdConfig::default()).unwrap();
        assert!(d.imf_count() >= 1);
        for c in 0..2 {
            assert_eq!(d.channel(c).imfs().len(), d.imf_count());
        }
        let err0 = max_abs_diff(&d.reconstruct(0), a.samples());
        let err1 = max_abs_diff(&d.reconstruct(1), b.samples());
        assert!(err0 <= 1e-8 * a.max_abs());
        assert!(err1 <= 1e-8 * b.max_abs());
    }

    #[test]
    fn memd_is_deterministic() {
        let a = tone_mix(100.0, 400, &[(10.0, 1.0)]);
        let b = tone_mix(100.0, 400, &[(3.0, 1.0)]);
        let sig = MultichannelSignal::new(vec![a, b], 2).unwrap();
        let dirs = generate_directions(2, 16).unwrap();
        let d1 = memd(&sig, &dirs, &EmdConfig::default()).unwrap();
        let d2 = memd(&sig, &dirs, &EmdConfig::default()).unwrap();
        for c in 0..2 {
            assert_eq!(d1.residual(c), d2.residual(c));
            for k in 0..d1.imf_count() {
                assert_eq!(d1.imf(c, k), d2.imf(c, k));
            }
        }
    }

    #[test]
    fn na_memd_aligns_and_reconstructs() {
        let u1 = tone_mix(1000.0, 600, &[(50.0, 1.0), (5.0, 0.5)]);
        let u2 = tone_mix(1000.0, 600, &[(50.0, 0.6), (5.0, 1.0)]);
        let noise = NoiseConfig {
            seed: 11,
            ..NoiseConfig::default()
        };
        let d = na_memd(&u1, &u2, &noise, 64, &EmdConfig::default()).unwrap();
        assert_eq!(d.channel_count(), 2);
        assert_eq!(d.channel(0).imfs().len(), d.channel(1).imfs().len());
        assert!(max_abs_diff(&d.reconstruct(0), u1.samples()) <= 1e-8 * u1.max_abs());
        assert!(max_abs_diff(&d.reconstruct(1), u2.samples()) <= 1e-8 * u2.max_abs());
    }

    #[test]
    fn na_memd_seed_determinism() {
        let u1 = tone_mix(100.0, 300, &[(20.0, 1.0)]);
        let u2 = tone_mix(100.0, 300, &[(6.0, 1.0)]);
        let noise = NoiseConfig {
            seed: 5,
            ..NoiseConfig::default()
        };
        let d1 = na_memd(&u1, &u2, &noise, 32, &EmdConfig::default()).unwrap();
        let d2 = na_memd(&u1, &u2, &noise, 32, &EmdConfig::default()).unwrap();
        assert_eq!(d1.imf_count(), d2.imf_count());
        for k in 0..d1.imf_count() {
            assert_eq!(d1.imf(0, k), d2.imf(0, k));
            assert_eq!(d1.imf(1, k), d2.imf(1, k));
        }
    }

    #[test]
    fn na_memd_swap_mirrors_exactly() {
        let u1 = tone_mix(100.0, 300, &[(20.0, 1.0), (2.0, 0.4)]);
        let u2 = tone_mix(100.0, 300, &[(6.0, 1.0)]);
        let noise = NoiseConfig {
            seed: 9,
            ..NoiseConfig::default()
        };
        let d12 = na_memd(&u1, &u2, &noise, 32, &EmdConfig::default()).unwrap();
        let d21 = na_memd(&u2, &u1, &noise, 32, &EmdConfig::default()).unwrap();
        assert_eq!(d12.imf_count(), d21.imf_count());
        for k in 0..d12.imf_count() {
            assert_eq!(d12.imf(0, k), d21.imf(1, k));
            assert_eq!(d12.imf(1, k), d21.imf(0, k));
        }
        assert_eq!(d12.residual(0), d21.residual(1));
    }

    #[test]
    fn na_memd_rejects_mismatched_lengths() {
        let u1 = tone_mix(100.0, 300, &[(20.0, 1.0)]);
        let u2 = tone_mix(100.0, 301, &[(6.0, 1.0)]);
        assert!(na_memd(&u1, &u2, &NoiseConfig::default(), 16, &EmdConfig::default()).is_err());
    }

    #[test]
    fn eemd_fixed_seed_is_bit_identical() {
        let s = tone_mix(100.0, 256, &[(12.0, 1.0), (3.0, 0.7)]);
        let noise = NoiseConfig {
            seed: 21,
            ..NoiseConfig::default()
        };
        let d1 = eemd(&s, 10, &noise, &EmdConfig::default()).unwrap();
        let d2 = eemd(&s, 10, &noise, &EmdConfig::default()).unwrap();
        assert_eq!(d1.imf_count(), d2.imf_count());
        for k in 0..d1.imf_count() {
            assert_eq!(d1.imf(0, k), d2.imf(0, k));
        }
        assert_eq!(d1.residual(0), d2.residual(0));
    }

    #[test]
    fn eemd_degenerates_to_emd_at_vanishing_noise() {
        let s = tone_mix(1000.0, 1024, &[(30.0, 1.0), (4.0, 0.5)]);
        let noise = NoiseConfig {
            noise_level: 1e-8,
            seed: 3,
            ..NoiseConfig::default()
        };
        let de = eemd(&s, 1, &noise, &EmdConfig::default()).unwrap();
        let dp = emd(&s, &EmdConfig::default()).unwrap();
        assert_eq!(de.imf_count(), dp.imf_count());
        let tol = 1e-4 * s.std();
        for k in 0..de.imf_count() {
            assert!(max_abs_diff(de.imf(0, k), dp.imf(0, k)) < tol);
        }
    }

    #[test]
    fn eemd_even_ensemble_reconstructs_input() {
        let s = tone_mix(1000.0, 512, &[(40.0, 1.0), (6.0, 0.8)]);
        let noise = NoiseConfig {
            seed: 8,
            ..NoiseConfig::default()
        };
        let d = eemd(&s, 8, &noise, &EmdConfig::default()).unwrap();
        let err = max_abs_diff(&d.reconstruct(0), s.samples());
        assert!(err <= 1e-8 * s.max_abs(), "reconstruction error {err}");
    }
}
