//! Analytic-signal construction and instantaneous phase / frequency / energy
//! quantities.
//!
//! The analytic signal is built in the frequency domain (negative bins
//! zeroed, positive doubled, DC and Nyquist kept). Before the transform the
//! record is extended by even reflection about its first and last interior
//! extremum — the slope vanishes there, so the periodic extension seen by
//! the DFT stays smooth and the wrap-around ripple that otherwise
//! contaminates a large share of the record disappears. The extension is
//! cropped away afterwards.
//!
//! Instantaneous frequency is the central-difference derivative of the
//! unwrapped phase. Time averages exclude a trimmed fraction at each end,
//! where residual edge bias concentrates.

use rustfft::num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::emd::local_extrema;
use crate::error::{Error, Result};
use crate::fft::{fft_real, ifft};
use crate::signal::TimeSeries;

/// Fraction of samples excluded at each end when averaging.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeTrim {
    pub fraction: f64,
}

impl Default for EdgeTrim {
    fn default() -> Self {
        Self { fraction: 0.05 }
    }
}

impl EdgeTrim {
    pub fn new(fraction: f64) -> Result<Self> {
        if !(0.0..0.5).contains(&fraction) {
            return Err(Error::invalid(format!(
                "trim fraction must lie in [0, 0.5), got {fraction}"
            )));
        }
        Ok(Self { fraction })
    }

    /// Index range of the trimmed interior.
    pub fn interior(&self, len: usize) -> std::ops::Range<usize> {
        let cut = (len as f64 * self.fraction).floor() as usize;
        cut..len - cut
    }
}

/// Instantaneous amplitude, unwrapped phase, and instantaneous frequency of
/// one oscillatory component.
#[derive(Debug, Clone)]
pub struct AnalyticSeries {
    amplitude: Vec<f64>,
    phase: Vec<f64>,
    inst_frequency: Vec<f64>,
    sample_rate: f64,
}

impl AnalyticSeries {
    pub fn amplitude(&self) -> &[f64] {
        &self.amplitude
    }

    /// Unwrapped phase in radians; adjacent differences lie in (-π, π].
    pub fn phase(&self) -> &[f64] {
        &self.phase
    }

    /// Instantaneous frequency in Hz.
    pub fn inst_frequency(&self) -> &[f64] {
        &self.inst_frequency
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.amplitude.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitude.is_empty()
    }
}

/// Unwraps phase values so no adjacent step exceeds π in magnitude.
pub fn unwrap_phase(wrapped: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(wrapped.len());
    let mut offset = 0.0;
    for (i, &p) in wrapped.iter().enumerate() {
        if i == 0 {
            out.push(p);
            continue;
        }
        let mut step = p + offset - out[i - 1];
        while step > std::f64::consts::PI {
            offset -= 2.0 * std::f64::consts::PI;
            step -= 2.0 * std::f64::consts::PI;
        }
        while step <= -std::f64::consts::PI {
            offset += 2.0 * std::f64::consts::PI;
            step += 2.0 * std::f64::consts::PI;
        }
        out.push(p + offset);
    }
    out
}

/// Frequency-domain analytic signal of a raw record: keep DC, double
/// strictly positive bins, keep Nyquist for even lengths, zero the negative
/// half. Satisfies `Re(z) == x` and the Parseval identity
/// `Σ|z|² = 2Σx² − (DC + Nyquist terms)`.
pub(crate) fn analytic_kernel(samples: &[f64]) -> Vec<Complex<f64>> {
    let n = samples.len();
    let mut spectrum = fft_real(samples);
    let half = n / 2;
    for k in 1..n {
        let positive = k < half || (n % 2 == 1 && k == half);
        let nyquist = n % 2 == 0 && k == half;
        if positive {
            spectrum[k] *= 2.0;
        } else if !nyquist {
            spectrum[k] = Complex::new(0.0, 0.0);
        }
    }
    ifft(&spectrum)
}

/// Even reflection about the first and last interior extremum. Returns the
/// extended record and the offset of the original segment within it; inputs
/// without interior extrema come back unchanged.
fn extend_about_extrema(x: &[f64]) -> (Vec<f64>, usize) {
    let n = x.len();
    let (maxima, minima) = local_extrema(x);
    let first = match (maxima.first(), minima.first()) {
        (Some(a), Some(b)) => *a.min(b),
        (Some(a), None) => *a,
        (None, Some(b)) => *b,
        (None, None) => return (x.to_vec(), 0),
    };
    let last = match (maxima.last(), minima.last()) {
        (Some(a), Some(b)) => *a.max(b),
        (Some(a), None) => *a,
        (None, Some(b)) => *b,
        (None, None) => unreachable!(),
    };
    // x_ext(-k) = x(2·first + k); x_ext(n-1+k) = x(2·last - n + 1 - k).
    let left_len = (n - 1).saturating_sub(2 * first);
    let right_len = (2 * last + 1).saturating_sub(n);
    let mut ext = Vec::with_capacity(left_len + n + right_len);
    for k in (1..=left_len).rev() {
        ext.push(x[2 * first + k]);
    }
    ext.extend_from_slice(x);
    for k in 1..=right_len {
        ext.push(x[2 * last + 1 - n - k]);
    }
    (ext, left_len)
}

/// Builds the analytic signal of an IMF.
pub fn analytic_signal(imf: &TimeSeries) -> Result<AnalyticSeries> {
    let n = imf.len();
    if n < 8 {
        return Err(Error::invalid(format!(
            "analytic signal needs >= 8 samples, got {n}"
        )));
    }
    if imf.energy() == 0.0 {
        return Err(Error::UndefinedPhase("all-zero input".into()));
    }

    let (extended, offset) = extend_about_extrema(imf.samples());
    let analytic = &analytic_kernel(&extended)[offset..offset + n];

    let amplitude: Vec<f64> = analytic.iter().map(|z| z.norm()).collect();
    let wrapped: Vec<f64> = analytic.iter().map(|z| z.im.atan2(z.re)).collect();
    let phase = unwrap_phase(&wrapped);

    let rate = imf.sample_rate();
    let scale = rate / (2.0 * std::f64::consts::PI);
    let mut inst_frequency = vec![0.0; n];
    inst_frequency[0] = (phase[1] - phase[0]) * scale;
    inst_frequency[n - 1] = (phase[n - 1] - phase[n - 2]) * scale;
    for i in 1..n - 1 {
        inst_frequency[i] = (phase[i + 1] - phase[i - 1]) * 0.5 * scale;
    }

    Ok(AnalyticSeries {
        amplitude,
        phase,
        inst_frequency,
        sample_rate: rate,
    })
}

/// Arithmetic mean of the unwrapped phase over the trimmed interior.
pub fn mean_phase(a: &AnalyticSeries, trim: EdgeTrim) -> f64 {
    let range = trim.interior(a.len());
    let slice = &a.phase[range];
    slice.iter().sum::<f64>() / slice.len() as f64
}

/// Amplitude-weighted mean instantaneous frequency over the trimmed
/// interior: `Σ a²f / Σ a²`. Invariant under amplitude scaling.
pub fn mean_frequency(a: &AnalyticSeries, trim: EdgeTrim) -> Result<f64> {
    let range = trim.interior(a.len());
    let mut num = 0.0;
    let mut den = 0.0;
    for i in range {
        let w = a.amplitude[i] * a.amplitude[i];
        num += w * a.inst_frequency[i];
        den += w;
    }
    if den == 0.0 {
        return Err(Error::UndefinedRatio(
            "zero energy in trimmed interior".into(),
        ));
    }
    Ok(num / den)
}

/// Frequency-weighted energy of an IMF pair over the trimmed interior,
/// `Σ_t (a₁²f₁ + a₂²f₂) / rate`. Used solely to rank candidate pairs, so
/// negative instantaneous frequencies (unwrap glitches) are clamped to zero
/// here and only here.
pub fn hilbert_energy(a1: &AnalyticSeries, a2: &AnalyticSeries, trim: EdgeTrim) -> f64 {
    debug_assert_eq!(a1.len(), a2.len());
    let range = trim.interior(a1.len());
    let mut sum = 0.0;
    for i in range {
        let f1 = a1.inst_frequency[i].max(0.0);
        let f2 = a2.inst_frequency[i].max(0.0);
        sum += a1.amplitude[i] * a1.amplitude[i] * f1 + a2.amplitude[i] * a2.amplitude[i] * f2;
    }
    sum / a1.sample_rate
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cosine(freq: f64, rate: f64, n: usize, amp: f64) -> TimeSeries {
        let samples: Vec<f64> = (0..n)
            .map(|i| amp * (2.0 * PI * freq * i as f64 / rate).cos())
            .collect();
        TimeSeries::new("tone", samples, rate).unwrap()
    }

    #[test]
    fn pure_tone_amplitude_and_frequency() {
        let s = cosine(10.0, 1000.0, 1024, 1.0);
        let a = analytic_signal(&s).unwrap();
        let trim = EdgeTrim::default();
        let range = trim.interior(a.len());
        let mut freq_ok = 0usize;
        let mut amp_ok = 0usize;
        let total = range.len();
        for i in range {
            if (a.inst_frequency()[i] - 10.0).abs() < 0.1 {
                freq_ok += 1;
            }
            if (a.amplitude()[i] - 1.0).abs() < 0.01 {
                amp_ok += 1;
            }
        }
        assert!(freq_ok * 10 >= total * 9, "{freq_ok}/{total} within 1%");
        assert!(amp_ok * 10 >= total * 9, "{amp_ok}/{total} within 1%");
    }

    #[test]
    fn amplitude_scales_linearly_phase_unchanged() {
        let s1 = cosine(10.0, 1000.0, 512, 1.0);
        let s3 = cosine(10.0, 1000.0, 512, 3.0);
        let a1 = analytic_signal(&s1).unwrap();
        let a3 = analytic_signal(&s3).unwrap();
        for i in 0..a1.len() {
            assert!((a3.amplitude()[i] - 3.0 * a1.amplitude()[i]).abs() < 1e-9);
            assert!((a3.phase()[i] - a1.phase()[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn real_part_matches_input() {
        let s = cosine(7.0, 100.0, 256, 2.0);
        let a = analytic_signal(&s).unwrap();
        // Reconstruct the real part from amplitude and phase.
        for (i, &x) in s.samples().iter().enumerate() {
            let re = a.amplitude()[i] * a.phase()[i].cos();
            assert!((re - x).abs() < 1e-9 * s.max_abs().max(1.0));
        }
    }

    #[test]
    fn kernel_satisfies_parseval() {
        // Energy of the analytic signal = 2x input energy minus the DC and
        // Nyquist contributions.
        for n in [256usize, 255] {
            let x: Vec<f64> = (0..n)
                .map(|i| (2.0 * PI * 9.3 * i as f64 / n as f64).cos() + 0.25)
                .collect();
            let z = analytic_kernel(&x);
            let energy_x: f64 = x.iter().map(|v| v * v).sum();
            let energy_z: f64 = z.iter().map(|v| v.norm_sqr()).sum();
            let spec = fft_real(&x);
            let mut corrections = spec[0].norm_sqr() / n as f64;
            if n % 2 == 0 {
                corrections += spec[n / 2].norm_sqr() / n as f64;
            }
            let expected = 2.0 * energy_x - corrections;
            assert!(
                (energy_z - expected).abs() <= 1e-9 * expected.abs(),
                "n={n}: {energy_z} vs {expected}"
            );
        }
    }

    #[test]
    fn kernel_real_part_is_identity() {
        let x: Vec<f64> = (0..200).map(|i| ((i * 13) % 17) as f64 - 8.0).collect();
        let z = analytic_kernel(&x);
        let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (a, b) in x.iter().zip(&z) {
            assert!((a - b.re).abs() <= 1e-9 * max);
        }
    }

    #[test]
    fn chirp_frequency_increases() {
        let rate = 1000.0;
        let n = 1024;
        // Linear chirp 5 -> 20 Hz over the window.
        let dur = n as f64 / rate;
        let k = (20.0 - 5.0) / dur;
        let samples: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 / rate;
                (2.0 * PI * (5.0 * t + 0.5 * k * t * t)).cos()
            })
            .collect();
        let s = TimeSeries::new("chirp", samples, rate).unwrap();
        let a = analytic_signal(&s).unwrap();
        let range = EdgeTrim::default().interior(n);
        let f = &a.inst_frequency()[range];
        for w in f.windows(2) {
            assert!(w[1] >= w[0] - 0.05, "frequency dipped: {} -> {}", w[0], w[1]);
        }
        assert!(f[f.len() - 1] > f[0] + 10.0, "chirp span not recovered");
    }

    #[test]
    fn zero_input_has_undefined_phase() {
        let s = TimeSeries::new("zero", vec![0.0; 64], 1.0).unwrap();
        assert!(matches!(
            analytic_signal(&s),
            Err(Error::UndefinedPhase(_))
        ));
    }

    #[test]
    fn mean_phase_of_constant_and_ramp() {
        let a = AnalyticSeries {
            amplitude: vec![1.0; 100],
            phase: vec![PI / 4.0; 100],
            inst_frequency: vec![0.0; 100],
            sample_rate: 1.0,
        };
        let trim = EdgeTrim::new(0.0).unwrap();
        assert!((mean_phase(&a, trim) - PI / 4.0).abs() < 1e-12);

        let n = 1000;
        let ramp = AnalyticSeries {
            amplitude: vec![1.0; n],
            phase: (0..n)
                .map(|i| 2.0 * PI * i as f64 / (n - 1) as f64)
                .collect(),
            inst_frequency: vec![0.0; n],
            sample_rate: 1.0,
        };
        assert!((mean_phase(&ramp, trim) - PI).abs() < 1e-9);
    }

    #[test]
    fn mean_frequency_of_tone_is_accurate_and_scale_free() {
        let s = cosine(10.0, 1000.0, 1024, 1.0);
        let a = analytic_signal(&s).unwrap();
        let f = mean_frequency(&a, EdgeTrim::default()).unwrap();
        assert!((f - 10.0).abs() < 0.1, "mean frequency {f}");

        let s5 = cosine(10.0, 1000.0, 1024, 5.0);
        let a5 = analytic_signal(&s5).unwrap();
        let f5 = mean_frequency(&a5, EdgeTrim::default()).unwrap();
        assert!((f - f5).abs() < 1e-9);
    }

    #[test]
    fn hilbert_energy_ranks_fast_pair_above_slow_pair() {
        let fast1 = analytic_signal(&cosine(50.0, 1000.0, 1024, 1.0)).unwrap();
        let fast2 = analytic_signal(&cosine(50.0, 1000.0, 1024, 1.0)).unwrap();
        let slow1 = analytic_signal(&cosine(5.0, 1000.0, 1024, 1.0)).unwrap();
        let slow2 = analytic_signal(&cosine(5.0, 1000.0, 1024, 1.0)).unwrap();
        let trim = EdgeTrim::default();
        let fast = hilbert_energy(&fast1, &fast2, trim);
        let slow = hilbert_energy(&slow1, &slow2, trim);
        assert!(fast > slow, "fast {fast} <= slow {slow}");
    }

    #[test]
    fn hilbert_energy_quadratic_in_amplitude() {
        let a1 = analytic_signal(&cosine(20.0, 1000.0, 512, 1.0)).unwrap();
        let a2 = analytic_signal(&cosine(20.0, 1000.0, 512, 2.0)).unwrap();
        let trim = EdgeTrim::default();
        let e1 = hilbert_energy(&a1, &a1, trim);
        let e2 = hilbert_energy(&a2, &a2, trim);
        assert!((e2 / e1 - 4.0).abs() < 1e-6, "ratio {}", e2 / e1);
    }

    #[test]
    fn zero_pair_energy_is_zero() {
        let a = AnalyticSeries {
            amplitude: vec![0.0; 64],
            phase: vec![0.0; 64],
            inst_frequency: vec![1.0; 64],
            sample_rate: 1.0,
        };
        assert_eq!(hilbert_energy(&a, &a, EdgeTrim::default()), 0.0);
    }

    #[test]
    fn unwrapped_steps_stay_within_pi() {
        let s = cosine(37.0, 1000.0, 777, 1.0);
        let a = analytic_signal(&s).unwrap();
        for w in a.phase().windows(2) {
            let d = w[1] - w[0];
            assert!(d > -PI && d <= PI + 1e-12, "step {d}");
        }
    }
}
