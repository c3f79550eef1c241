//! Benchmark system generators: a coupled logistic map (deterministic), a
//! lag-coupled autoregressive pair (stochastic), and independent white-noise
//! pairs. All stochastic generators are bit-reproducible from their seed.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::signal::TimeSeries;

/// Default lengths used in the robustness evaluations.
pub const DETERMINISTIC_DEFAULT_LEN: usize = 80;
pub const STOCHASTIC_DEFAULT_LEN: usize = 100;
/// Default transient discard for the AR system.
pub const AR_DEFAULT_BURN_IN: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    DeterministicLogistic,
    StochasticAr,
    WhiteNoisePair,
}

impl std::fmt::Display for SystemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SystemKind::DeterministicLogistic => write!(f, "deterministic"),
            SystemKind::StochasticAr => write!(f, "stochastic"),
            SystemKind::WhiteNoisePair => write!(f, "white_noise"),
        }
    }
}

/// Generator request: which system, how many samples, the seed (ignored by
/// the deterministic map), and how many leading samples to discard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub kind: SystemKind,
    pub length: usize,
    pub seed: u64,
    pub burn_in: usize,
}

impl SystemSpec {
    pub fn generate(&self) -> Result<(TimeSeries, TimeSeries)> {
        if self.length == 0 {
            return Err(Error::invalid("length must be >= 1"));
        }
        match self.kind {
            SystemKind::DeterministicLogistic => logistic_coupled(self.length, self.burn_in),
            SystemKind::StochasticAr => ar_stochastic(self.length, self.seed, self.burn_in),
            SystemKind::WhiteNoisePair => {
                if self.burn_in != 0 {
                    return Err(Error::invalid("white noise has no transient to discard"));
                }
                white_noise_pair(self.length, self.seed)
            }
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }
}

/// Coupled two-species logistic difference system from x(1) = 0.2,
/// y(1) = 0.4:
///
/// ```text
/// X(t+1) = X(t) [3.8 − 3.8 X(t) − 0.02 Y(t)]
/// Y(t+1) = Y(t) [3.5 − 3.5 Y(t) − 0.10 X(t)]
/// ```
///
/// The X term in the Y equation is five times the reverse coupling, so the
/// dominant causal direction is X → Y.
pub fn logistic_coupled(length: usize, burn_in: usize) -> Result<(TimeSeries, TimeSeries)> {
    if length == 0 {
        return Err(Error::invalid("length must be >= 1"));
    }
    let total = length + burn_in;
    let mut xs = Vec::with_capacity(length);
    let mut ys = Vec::with_capacity(length);
    let mut x = 0.2f64;
    let mut y = 0.4f64;
    for t in 0..total {
        if !(-10.0..=10.0).contains(&x) || !(-10.0..=10.0).contains(&y) {
            return Err(Error::Divergence(format!(
                "logistic trajectory left [-10, 10] at step {t}: x={x}, y={y}"
            )));
        }
        if t >= burn_in {
            xs.push(x);
            ys.push(y);
        }
        let xn = x * (3.8 - 3.8 * x - 0.02 * y);
        let yn = y * (3.5 - 3.5 * y - 0.1 * x);
        x = xn;
        y = yn;
    }
    Ok((
        TimeSeries::new("x", xs, 1.0)?,
        TimeSeries::new("y", ys, 1.0)?,
    ))
}

/// Lag-coupled autoregressive pair with standard-normal innovations:
///
/// ```text
/// X(t+1) = 0.95·√2·X(t) − 0.9025·X(t−1) + w₁(t)
/// Y(t+1) = 0.5·X(t−1) + w₂(t)
/// ```
///
/// Y is driven by X alone, so the ground-truth direction is X → Y. Initial
/// values are standard normal; `burn_in` samples are discarded before
/// recording (the evaluation default is [`AR_DEFAULT_BURN_IN`]).
pub fn ar_stochastic(length: usize, seed: u64, burn_in: usize) -> Result<(TimeSeries, TimeSeries)> {
    if length == 0 {
        return Err(Error::invalid("length must be >= 1"));
    }
    let mut w1 = stream_rng(seed, 0);
    let mut w2 = stream_rng(seed, 1);
    let mut init = stream_rng(seed, 2);
    let initial = (
        StandardNormal.sample(&mut init),
        StandardNormal.sample(&mut init),
        StandardNormal.sample(&mut init),
    );
    let (xs, ys) = ar_recurrence(
        initial,
        length,
        burn_in,
        |_| StandardNormal.sample(&mut w1),
        |_| StandardNormal.sample(&mut w2),
    );
    Ok((
        TimeSeries::new("x", xs, 1.0)?,
        TimeSeries::new("y", ys, 1.0)?,
    ))
}

/// The recurrence with injectable innovations;
/// `initial = (x_prev, x_cur, y_cur)`.
fn ar_recurrence(
    initial: (f64, f64, f64),
    length: usize,
    burn_in: usize,
    mut w1: impl FnMut(usize) -> f64,
    mut w2: impl FnMut(usize) -> f64,
) -> (Vec<f64>, Vec<f64>) {
    let a1 = 0.95 * 2f64.sqrt();
    let a2 = 0.9025;
    let (mut x_prev, mut x_cur, mut y_cur) = initial;
    let mut xs = Vec::with_capacity(length);
    let mut ys = Vec::with_capacity(length);
    for t in 0..length + burn_in {
        if t >= burn_in {
            xs.push(x_cur);
            ys.push(y_cur);
        }
        let x_next = a1 * x_cur - a2 * x_prev + w1(t);
        let y_next = 0.5 * x_prev + w2(t);
        x_prev = x_cur;
        x_cur = x_next;
        y_cur = y_next;
    }
    (xs, ys)
}

/// Two independent standard-normal series from separate streams of the seed.
pub fn white_noise_pair(length: usize, seed: u64) -> Result<(TimeSeries, TimeSeries)> {
    if length == 0 {
        return Err(Error::invalid("length must be >= 1"));
    }
    let mut ra = stream_rng(seed, 0);
    let mut rb = stream_rng(seed, 1);
    let xs: Vec<f64> = (0..length).map(|_| StandardNormal.sample(&mut ra)).collect();
    let ys: Vec<f64> = (0..length).map(|_| StandardNormal.sample(&mut rb)).collect();
    Ok((
        TimeSeries::new("x", xs, 1.0)?,
        TimeSeries::new("y", ys, 1.0)?,
    ))
}
