//! Decomposition-quality diagnostics used to tune the injected noise level:
//! a cross-term orthogonality index and a spectral-overlap separability
//! index. Near-zero orthogonality means the modes barely share energy;
//! lower separability means adjacent modes occupy more distinct bands.

use crate::error::{Error, Result};
use crate::fft::half_spectrum_magnitudes;

use super::Decomposition;

/// Normalized cross-term energy between the IMFs of one channel:
/// `|Σ_t Σ_{j≠k} c_j(t) c_k(t)| / Σ_t x(t)²` with `x` the reconstructed
/// channel. Zero for exactly orthogonal modes.
pub fn orthogonality_index(d: &Decomposition, channel: usize) -> Result<f64> {
    if channel >= d.channel_count() {
        return Err(Error::invalid(format!(
            "channel {channel} out of range ({} channels)",
            d.channel_count()
        )));
    }
    let imfs = d.channel(channel).imfs();
    if imfs.len() < 2 {
        return Err(Error::invalid(format!(
            "orthogonality needs >= 2 IMFs, got {}",
            imfs.len()
        )));
    }
    let x = d.reconstruct(channel);
    let total: f64 = x.iter().map(|v| v * v).sum();
    if total == 0.0 {
        return Err(Error::UndefinedRatio(
            "zero-energy input in orthogonality index".into(),
        ));
    }
    let mut cross = 0.0;
    for j in 0..imfs.len() {
        for k in 0..imfs.len() {
            if j != k {
                cross += imfs[j]
                    .iter()
                    .zip(&imfs[k])
                    .map(|(a, b)| a * b)
                    .sum::<f64>();
            }
        }
    }
    Ok(cross.abs() / total)
}

/// Mean spectral overlap of adjacent same-channel IMF pairs: the inner
/// product of unit-normalized magnitude spectra, averaged over pairs and
/// channels. 1 means identical spectra, 0 disjoint bands.
pub fn separability_index(d: &Decomposition) -> Result<f64> {
    if d.imf_count() < 2 {
        return Err(Error::invalid(format!(
            "separability needs >= 2 IMFs per channel, got {}",
            d.imf_count()
        )));
    }
    let mut sum = 0.0;
    let mut pairs = 0usize;
    for c in 0..d.channel_count() {
        let imfs = d.channel(c).imfs();
        for k in 0..imfs.len() - 1 {
            sum += spectral_overlap(&imfs[k], &imfs[k + 1]);
            pairs += 1;
        }
    }
    Ok(sum / pairs as f64)
}

fn spectral_overlap(a: &[f64], b: &[f64]) -> f64 {
    let ma = half_spectrum_magnitudes(a);
    let mb = half_spectrum_magnitudes(b);
    let na: f64 = ma.iter().map(|v| v * v).sum::<f64>().sqrt();
    let nb: f64 = mb.iter().map(|v| v * v).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        // A silent mode overlaps nothing.
        return 0.0;
    }
    let dot: f64 = ma.iter().zip(&mb).map(|(x, y)| x * y).sum();
    (dot / (na * nb)).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tone(freq: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| (2.0 * PI * freq * i as f64 / n as f64).sin())
            .collect()
    }

    fn injected(imfs: Vec<Vec<f64>>) -> Decomposition {
        let residual = vec![0.0; imfs[0].len()];
        Decomposition::single_channel("test", imfs, residual, 1.0).unwrap()
    }

    #[test]
    fn orthogonal_tones_have_near_zero_index() {
        // Integer-cycle sinusoids over the window are exactly orthogonal.
        let d = injected(vec![tone(8.0, 256), tone(3.0, 256)]);
        let io = orthogonality_index(&d, 0).unwrap();
        assert!(io < 1e-10, "index {io}");
    }

    #[test]
    fn duplicated_imf_gives_half() {
        let c = tone(5.0, 128);
        let d = injected(vec![c.clone(), c]);
        let io = orthogonality_index(&d, 0).unwrap();
        assert!((io - 0.5).abs() < 1e-12, "index {io}");
    }

    #[test]
    fn zero_energy_input_is_undefined() {
        let d = injected(vec![vec![0.0; 32], vec![0.0; 32]]);
        assert!(matches!(
            orthogonality_index(&d, 0),
            Err(Error::UndefinedRatio(_))
        ));
    }

    #[test]
    fn disjoint_bands_separate_well() {
        let d = injected(vec![tone(40.0, 512), tone(3.0, 512)]);
        let s = separability_index(&d).unwrap();
        assert!(s < 0.1, "index {s}");
    }

    #[test]
    fn identical_adjacent_imfs_fully_overlap() {
        let c = tone(7.0, 128);
        let d = injected(vec![c.clone(), c]);
        let s = separability_index(&d).unwrap();
        assert!((s - 1.0).abs() < 1e-12, "index {s}");
    }
}
