//! Quasi-random direction vectors on the unit hypersphere.
//!
//! Directions are derived from a Hammersley point set: the first coordinate
//! is equispaced, the remaining coordinates are Halton radical inverses in
//! consecutive prime bases. Each point maps to spherical angles (all but the
//! last scaled to [0, π], the last to [0, 2π)) and then to Cartesian
//! coordinates, giving a low-discrepancy covering of the sphere.

use crate::error::{Error, Result};
use crate::signal::{MultichannelSignal, TimeSeries};

/// Radical inverse of `index` in the given base: the base-p digits of the
/// integer mirrored at the radix point.
pub fn halton(index: u64, base: u64) -> f64 {
    debug_assert!(base >= 2);
    let mut i = index;
    let mut f = 1.0;
    let mut value = 0.0;
    let b = base as f64;
    while i > 0 {
        f /= b;
        value += f * (i % base) as f64;
        i /= base;
    }
    value
}

/// First `count` primes (2, 3, 5, ...).
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes.iter().all(|p| candidate % p != 0) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Hammersley points and their unit direction vectors in `R^dimension`.
#[derive(Debug, Clone)]
pub struct DirectionSet {
    dimension: usize,
    hammersley_points: Vec<Vec<f64>>,
    unit_vectors: Vec<Vec<f64>>,
}

impl DirectionSet {
    pub fn point_count(&self) -> usize {
        self.unit_vectors.len()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn hammersley_points(&self) -> &[Vec<f64>] {
        &self.hammersley_points
    }

    pub fn unit_vectors(&self) -> &[Vec<f64>] {
        &self.unit_vectors
    }
}

/// Builds `count` direction vectors for a `dimension`-channel signal.
///
/// Point i (1-based) is `((i-1)/count, d_i^{p1}, ..., d_i^{p_{dimension-1}})`
/// with `d` the Halton radical inverse. The first `dimension - 1` coordinates
/// become spherical angles; the final Halton coordinate is kept in the stored
/// point but is not consumed by the angular mapping.
pub fn generate_directions(dimension: usize, count: usize) -> Result<DirectionSet> {
    if dimension < 2 {
        return Err(Error::invalid(format!(
            "direction dimension must be >= 2, got {dimension}"
        )));
    }
    if count == 0 {
        return Err(Error::invalid("direction count must be >= 1"));
    }
    let primes = first_primes(dimension - 1);
    let mut hammersley_points = Vec::with_capacity(count);
    let mut unit_vectors = Vec::with_capacity(count);
    for i in 1..=count as u64 {
        let mut point = Vec::with_capacity(dimension);
        point.push((i - 1) as f64 / count as f64);
        for p in &primes {
            point.push(halton(i, *p));
        }

        // Spherical angles: coordinates 0..dim-3 scale to [0, π], the
        // coordinate at dim-2 to [0, 2π).
        let n_angles = dimension - 1;
        let mut angles = Vec::with_capacity(n_angles);
        for coord in point.iter().take(n_angles - 1) {
            angles.push(coord * std::f64::consts::PI);
        }
        angles.push(point[n_angles - 1] * 2.0 * std::f64::consts::PI);

        let mut v = vec![0.0; dimension];
        let mut sin_prod = 1.0;
        for (k, angle) in angles.iter().enumerate() {
            v[k] = sin_prod * angle.cos();
            sin_prod *= angle.sin();
        }
        v[dimension - 1] = sin_prod;
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut v {
            *x /= norm;
        }

        hammersley_points.push(point);
        unit_vectors.push(v);
    }
    Ok(DirectionSet {
        dimension,
        hammersley_points,
        unit_vectors,
    })
}

/// Per-sample inner product of the channels with a direction vector.
pub fn project(signal: &MultichannelSignal, direction: &[f64]) -> Result<TimeSeries> {
    if direction.len() != signal.channel_count() {
        return Err(Error::invalid(format!(
            "direction dimension {} does not match channel count {}",
            direction.len(),
            signal.channel_count()
        )));
    }
    let samples = project_channels(
        &signal
            .channels()
            .iter()
            .map(|c| c.samples().to_vec())
            .collect::<Vec<_>>(),
        direction,
    );
    TimeSeries::new("projection", samples, signal.sample_rate())
}

/// Projection on raw channel buffers, accumulated in channel order.
pub(super) fn project_channels(channels: &[Vec<f64>], direction: &[f64]) -> Vec<f64> {
    let n = channels[0].len();
    let mut out = vec![0.0; n];
    for (ch, w) in channels.iter().zip(direction) {
        for (o, v) in out.iter_mut().zip(ch) {
            *o += w * v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_base2_prefix() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(2, 2), 0.25);
        assert_eq!(halton(3, 2), 0.75);
        assert_eq!(halton(4, 2), 0.125);
    }

    #[test]
    fn halton_base3_prefix() {
        assert!((halton(1, 3) - 1.0 / 3.0).abs() < 1e-15);
        assert!((halton(2, 3) - 2.0 / 3.0).abs() < 1e-15);
        assert!((halton(3, 3) - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn primes_prefix() {
        assert_eq!(first_primes(5), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn directions_are_unit_norm() {
        let set = generate_directions(4, 64).unwrap();
        assert_eq!(set.point_count(), 64);
        for v in set.unit_vectors() {
            assert_eq!(v.len(), 4);
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hammersley_first_coordinate_equispaced() {
        let set = generate_directions(3, 16).unwrap();
        for (i, p) in set.hammersley_points().iter().enumerate() {
            assert_eq!(p[0], i as f64 / 16.0);
            assert!(p.iter().all(|c| (0.0..1.0).contains(c)));
        }
    }

    #[test]
    fn projection_on_basis_vector_returns_channel() {
        let a = TimeSeries::new("a", vec![1.0, -2.0, 3.0], 1.0).unwrap();
        let b = TimeSeries::new("b", vec![5.0, 6.0, 7.0], 1.0).unwrap();
        let sig = MultichannelSignal::new(vec![a.clone(), b], 2).unwrap();
        let proj = project(&sig, &[1.0, 0.0]).unwrap();
        assert_eq!(proj.samples(), a.samples());
    }

    #[test]
    fn projection_is_linear() {
        let a = TimeSeries::new("a", vec![1.0, 2.0], 1.0).unwrap();
        let sig = MultichannelSignal::new(vec![a.clone(), a.clone()], 2).unwrap();
        let w = 1.0 / 2f64.sqrt();
        let proj = project(&sig, &[w, w]).unwrap();
        for (p, x) in proj.samples().iter().zip(a.samples()) {
            assert!((p - 2f64.sqrt() * x).abs() < 1e-15);
        }
    }

    #[test]
    fn projection_dimension_mismatch_rejected() {
        let a = TimeSeries::new("a", vec![1.0, 2.0], 1.0).unwrap();
        let sig = MultichannelSignal::new(vec![a.clone(), a], 2).unwrap();
        assert!(project(&sig, &[1.0, 0.0, 0.0]).is_err());
    }
}
