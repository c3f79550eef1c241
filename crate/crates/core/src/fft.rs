//! Thin FFT wrappers shared by the analytic-signal and spectrum code.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Forward DFT of a real signal.
pub fn fft_real(samples: &[f64]) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

/// Inverse DFT with 1/N normalization.
pub fn ifft(spectrum: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let mut buf = spectrum.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    let scale = 1.0 / buf.len() as f64;
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// Magnitudes of the non-negative-frequency DFT bins (length N/2 + 1).
pub fn half_spectrum_magnitudes(samples: &[f64]) -> Vec<f64> {
    let spec = fft_real(samples);
    let half = spec.len() / 2;
    spec[..=half].iter().map(|c| c.norm()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fft_ifft_round_trip() {
        let x: Vec<f64> = (0..64).map(|i| ((i * 7) % 13) as f64 - 6.0).collect();
        let back = ifft(&fft_real(&x));
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b.re).abs() < 1e-12);
            assert!(b.im.abs() < 1e-12);
        }
    }

    #[test]
    fn tone_peaks_at_its_bin() {
        let n = 128;
        let x: Vec<f64> = (0..n)
            .map(|i| (2.0 * std::f64::consts::PI * 8.0 * i as f64 / n as f64).cos())
            .collect();
        let mags = half_spectrum_magnitudes(&x);
        let peak = mags
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(peak, 8);
    }
}
