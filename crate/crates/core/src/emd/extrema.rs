//! Local extremum and zero-crossing detection.

use crate::error::{Error, Result};
use crate::signal::TimeSeries;

/// Strict interior maxima and minima, in ascending index order. A plateau of
/// equal samples counts once, at its midpoint index (deterministic
/// tie-breaking; endpoints never qualify).
pub fn local_extrema(samples: &[f64]) -> (Vec<usize>, Vec<usize>) {
    let n = samples.len();
    let mut maxima = Vec::new();
    let mut minima = Vec::new();
    if n < 3 {
        return (maxima, minima);
    }
    let mut i = 1;
    while i < n - 1 {
        let prev = samples[i - 1];
        let cur = samples[i];
        if cur == samples[i + 1] {
            // Plateau [i, j]; classify by the samples flanking it.
            let mut j = i + 1;
            while j + 1 < n && samples[j + 1] == cur {
                j += 1;
            }
            if j + 1 < n {
                let next = samples[j + 1];
                let mid = (i + j) / 2;
                if prev < cur && next < cur {
                    maxima.push(mid);
                } else if prev > cur && next > cur {
                    minima.push(mid);
                }
            }
            i = j + 1;
        } else {
            let next = samples[i + 1];
            if cur > prev && cur > next {
                maxima.push(i);
            } else if cur < prev && cur < next {
                minima.push(i);
            }
            i += 1;
        }
    }
    (maxima, minima)
}

/// Extremum indices of a series, failing with `NotEnoughExtrema` when fewer
/// than two maxima or two minima exist. The error marks the natural end of
/// sifting, not a defect in the input.
pub fn find_extrema(series: &TimeSeries) -> Result<(Vec<usize>, Vec<usize>)> {
    if series.len() < 3 {
        return Err(Error::invalid(format!(
            "need at least 3 samples, got {}",
            series.len()
        )));
    }
    let (maxima, minima) = local_extrema(series.samples());
    if maxima.len() < 2 || minima.len() < 2 {
        return Err(Error::NotEnoughExtrema(format!(
            "{} maxima, {} minima",
            maxima.len(),
            minima.len()
        )));
    }
    Ok((maxima, minima))
}

/// Number of sign changes; samples exactly at zero bridge their neighbours.
pub fn zero_crossing_count(samples: &[f64]) -> usize {
    let mut count = 0;
    let mut last_sign = 0i8;
    for &v in samples {
        let sign = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        if sign != 0 {
            if last_sign != 0 && sign != last_sign {
                count += 1;
            }
            last_sign = sign;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sine_has_one_extremum_pair_per_period() {
        let n = 300;
        let samples: Vec<f64> = (0..n)
            .map(|i| (2.0 * PI * 3.0 * i as f64 / n as f64).sin())
            .collect();
        let ts = TimeSeries::new("sine", samples, 100.0).unwrap();
        let (maxima, minima) = find_extrema(&ts).unwrap();
        assert_eq!(maxima.len(), 3);
        assert_eq!(minima.len(), 3);
    }

    #[test]
    fn monotonic_ramp_has_no_extrema() {
        let ts = TimeSeries::new("ramp", (0..50).map(|i| i as f64).collect(), 1.0).unwrap();
        match find_extrema(&ts) {
            Err(Error::NotEnoughExtrema(_)) => {}
            other => panic!("expected NotEnoughExtrema, got {other:?}"),
        }
    }

    #[test]
    fn plateau_counts_once_at_midpoint() {
        let (maxima, minima) = local_extrema(&[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(maxima, vec![1]);
        assert!(minima.is_empty());

        let (maxima, _) = local_extrema(&[0.0, 2.0, 2.0, 2.0, 0.0]);
        assert_eq!(maxima, vec![2]);
    }

    #[test]
    fn plateau_shoulder_is_not_an_extremum() {
        // Rising plateau: 0 1 1 2 — plateau is neither max nor min.
        let (maxima, minima) = local_extrema(&[0.0, 1.0, 1.0, 2.0]);
        assert!(maxima.is_empty());
        assert!(minima.is_empty());
    }

    #[test]
    fn zero_crossings_of_sine() {
        // Two periods sampled on (0, 4π): sign changes at π, 2π, 3π.
        let n = 200;
        let samples: Vec<f64> = (0..n)
            .map(|i| (2.0 * PI * 2.0 * (i as f64 + 0.5) / n as f64).sin())
            .collect();
        assert_eq!(zero_crossing_count(&samples), 3);
    }
}
