//! Phase-dependent causal decomposition of a pair of time series.
//!
//! The pipeline: decompose the pair into channel-aligned IMFs, pick the
//! causal IMF pair (the same-scale pair whose averaged instantaneous phases
//! agree and whose frequency-weighted Hilbert energy is maximal), then for
//! each direction remove the selected IMF from the candidate effect series,
//! re-decompose with the identical noise realization, and measure how much
//! the pair's phase coherence moved. The two coherence changes are the
//! absolute causal strengths; their normalized ratio is the relative causal
//! strength, 0.5 meaning no or reciprocal causality.
//!
//! Results are exchange-symmetric: swapping the input series swaps the
//! directional quantities exactly. Internally every decomposition runs on a
//! canonically ordered pair and outputs are mirrored back, so argument order
//! and noise seeding can never leak into the direction estimate.

use serde::{Deserialize, Serialize};

use crate::emd::{self, Decomposition, EmdConfig, NoiseConfig};
use crate::error::{Error, Result};
use crate::hilbert::{analytic_signal, hilbert_energy, mean_frequency, mean_phase, EdgeTrim};
use crate::rng::{derive_seed, hash_key};
use crate::signal::{segment, TimeSeries, WindowPlan};

/// Which decomposition backs the causal analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionMethod {
    /// Noise-assisted multivariate EMD of the pair (channel-aligned IMFs).
    NaMemd,
    /// Independent ensemble EMD per channel, index-paired and truncated to
    /// the smaller IMF count. Kept as the comparison baseline; it cannot
    /// guarantee mode alignment.
    Eemd,
}

impl std::fmt::Display for DecompositionMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecompositionMethod::NaMemd => write!(f, "na-memd"),
            DecompositionMethod::Eemd => write!(f, "eemd"),
        }
    }
}

/// Constraint and averaging parameters for causal-pair selection. The phase
/// constraint is a ratio test: a scale passes when
/// `|mean φ₁ / mean φ₂ − gamma| < delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairSelectionConfig {
    pub gamma: f64,
    pub delta: f64,
    pub trim: EdgeTrim,
}

impl Default for PairSelectionConfig {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            delta: 0.1,
            trim: EdgeTrim::default(),
        }
    }
}

impl PairSelectionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0) {
            return Err(Error::invalid("gamma must be > 0"));
        }
        if !(self.delta > 0.0) {
            return Err(Error::invalid("delta must be > 0"));
        }
        Ok(())
    }
}

/// Full configuration of a causal decomposition run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausalConfig {
    pub method: DecompositionMethod,
    pub emd: EmdConfig,
    pub noise: NoiseConfig,
    pub direction_count: usize,
    pub ensemble_size: usize,
    pub selection: PairSelectionConfig,
    /// Number of derived noise realizations the directional strengths are
    /// averaged over. Within each realization the baseline and both removal
    /// re-decompositions share one seed, so each term still isolates the
    /// effect of IMF removal; averaging across realizations only reduces
    /// estimator variance. 1 disables averaging.
    pub realization_count: usize,
}

impl Default for CausalConfig {
    fn default() -> Self {
        Self {
            method: DecompositionMethod::NaMemd,
            emd: EmdConfig::default(),
            noise: NoiseConfig::default(),
            direction_count: 64,
            ensemble_size: 100,
            selection: PairSelectionConfig::default(),
            realization_count: 1,
        }
    }
}

impl CausalConfig {
    pub fn validate(&self) -> Result<()> {
        self.emd.validate()?;
        self.noise.validate()?;
        self.selection.validate()?;
        if self.direction_count == 0 {
            return Err(Error::invalid("direction_count must be >= 1"));
        }
        if self.ensemble_size == 0 {
            return Err(Error::invalid("ensemble_size must be >= 1"));
        }
        if self.realization_count == 0 {
            return Err(Error::invalid("realization_count must be >= 1"));
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            noise: self.noise.with_seed(seed),
            ..self.clone()
        }
    }
}

/// The causal IMF pair chosen from a decomposition.
#[derive(Debug, Clone)]
pub struct SelectedPair {
    pub imf_index: usize,
    pub f1: TimeSeries,
    pub f2: TimeSeries,
    pub mean_frequencies: (f64, f64),
    pub phase_ratio: f64,
    /// Set when no scale satisfied the phase constraint and the nearest
    /// scale was chosen instead.
    pub fallback: bool,
}

impl SelectedPair {
    fn pair_frequency(&self) -> f64 {
        0.5 * (self.mean_frequencies.0 + self.mean_frequencies.1)
    }
}

/// Directional coherence changes caused by IMF removal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbsoluteStrengths {
    pub u1_to_u2: f64,
    pub u2_to_u1: f64,
}

/// Normalized directional strengths; always sums to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelativeStrengths {
    pub u1_to_u2: f64,
    pub u2_to_u1: f64,
}

/// Outcome of a causal decomposition.
#[derive(Debug, Clone)]
pub struct CausalResult {
    pub pair: SelectedPair,
    pub eta_baseline: f64,
    pub sigma: AbsoluteStrengths,
    pub relative: RelativeStrengths,
    pub per_imf: Option<Vec<RelativeStrengths>>,
}

impl CausalResult {
    fn mirrored(mut self) -> Self {
        std::mem::swap(&mut self.pair.f1, &mut self.pair.f2);
        self.pair.mean_frequencies = (self.pair.mean_frequencies.1, self.pair.mean_frequencies.0);
        self.pair.phase_ratio = 1.0 / self.pair.phase_ratio;
        self.sigma = AbsoluteStrengths {
            u1_to_u2: self.sigma.u2_to_u1,
            u2_to_u1: self.sigma.u1_to_u2,
        };
        self.relative = RelativeStrengths {
            u1_to_u2: self.relative.u2_to_u1,
            u2_to_u1: self.relative.u1_to_u2,
        };
        if let Some(per_imf) = &mut self.per_imf {
            for entry in per_imf.iter_mut() {
                *entry = RelativeStrengths {
                    u1_to_u2: entry.u2_to_u1,
                    u2_to_u1: entry.u1_to_u2,
                };
            }
        }
        self
    }
}

/// Per-window causal results with accumulation metrics: `e1`/`e2` sum the
/// directional relative strengths over windows, `n1`/`n2` count the windows
/// each direction dominates.
#[derive(Debug, Clone)]
pub struct WindowedCausality {
    pub plan: WindowPlan,
    pub windows: Vec<CausalResult>,
    pub e1: f64,
    pub e2: f64,
    pub n1: usize,
    pub n2: usize,
    pub ties: usize,
}

/// Lexicographic sample order; `true` when `u2` should come first.
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

/// Decomposes an (already canonically ordered) pair with the configured
/// method. For EEMD each channel gets its own derived noise stream and the
/// two stacks are truncated to the smaller IMF count, surplus modes folding
/// into the residual.
fn decompose_ordered_pair(
    a: &TimeSeries,
    b: &TimeSeries,
    config: &CausalConfig,
) -> Result<Decomposition> {
    match config.method {
        DecompositionMethod::NaMemd => {
            emd::na_memd(a, b, &config.noise, config.direction_count, &config.emd)
        }
        DecompositionMethod::Eemd => {
            let noise_a = config
                .noise
                .with_seed(derive_seed(config.noise.seed, hash_key("eemd-first")));
            let noise_b = config
                .noise
                .with_seed(derive_seed(config.noise.seed, hash_key("eemd-second")));
            let da = emd::eemd(a, config.ensemble_size, &noise_a, &config.emd)?;
            let db = emd::eemd(b, config.ensemble_size, &noise_b, &config.emd)?;
            align_pair(da, db)
        }
    }
}

fn decompose_pair(u1: &TimeSeries, u2: &TimeSeries, config: &CausalConfig) -> Result<Decomposition> {
    if u1.len() != u2.len() {
        return Err(Error::invalid(format!(
            "series lengths differ: {} vs {}",
            u1.len(),
            u2.len()
        )));
    }
    match config.method {
        // na_memd canonicalizes internally.
        DecompositionMethod::NaMemd => decompose_ordered_pair(u1, u2, config),
        DecompositionMethod::Eemd => {
            let swap = canonical_swap(u1, u2);
            let (a, b) = if swap { (u2, u1) } else { (u1, u2) };
            let d = decompose_ordered_pair(a, b, config)?;
            if swap {
                let mut channels: Vec<emd::ChannelModes> = d.channels().to_vec();
                channels.swap(0, 1);
                Decomposition::from_parts(channels, d.sample_rate())
            } else {
                Ok(d)
            }
        }
    }
}

/// Truncates two single-channel decompositions to a common IMF count and
/// stacks them as one two-channel decomposition.
fn align_pair(da: Decomposition, db: Decomposition) -> Result<Decomposition> {
    let k = da.imf_count().min(db.imf_count());
    let fold = |d: &Decomposition| -> emd::ChannelModes {
        let ch = d.channel(0);
        let mut residual = ch.residual().to_vec();
        for extra in ch.imfs().iter().skip(k) {
            for (r, v) in residual.iter_mut().zip(extra) {
                *r += v;
            }
        }
        emd::ChannelModes::new(
            ch.label().to_string(),
            ch.imfs().iter().take(k).cloned().collect(),
            residual,
        )
    };
    Decomposition::from_parts(vec![fold(&da), fold(&db)], da.sample_rate())
}

struct ScaleStats {
    phase_ratio: f64,
    mean_frequencies: (f64, f64),
    energy: f64,
}

fn scale_stats(d: &Decomposition, k: usize, trim: EdgeTrim) -> Result<ScaleStats> {
    let a1 = analytic_signal(&d.imf_series(0, k))?;
    let a2 = analytic_signal(&d.imf_series(1, k))?;
    let p1 = mean_phase(&a1, trim);
    let p2 = mean_phase(&a2, trim);
    let ratio = p1 / p2;
    let mf1 = mean_frequency(&a1, trim)?;
    let mf2 = mean_frequency(&a2, trim)?;
    let energy = hilbert_energy(&a1, &a2, trim);
    Ok(ScaleStats {
        phase_ratio: ratio,
        mean_frequencies: (mf1, mf2),
        energy,
    })
}

/// Selects the causal IMF pair: among scales whose mean-phase ratio passes
/// the constraint, the one with maximal frequency-weighted Hilbert energy.
/// When no scale passes, falls back to the scale with the ratio closest to
/// `gamma` and flags the fallback.
pub fn select_imf_pair(d: &Decomposition, cfg: &PairSelectionConfig) -> Result<SelectedPair> {
    cfg.validate()?;
    if d.imf_count() == 0 {
        return Err(Error::EmptyDecomposition);
    }
    if d.channel_count() < 2 {
        return Err(Error::invalid("pair selection needs two channels"));
    }

    let mut stats: Vec<(usize, ScaleStats)> = Vec::new();
    for k in 0..d.imf_count() {
        if let Ok(s) = scale_stats(d, k, cfg.trim) {
            stats.push((k, s));
        }
    }
    if stats.is_empty() {
        return Err(Error::UndefinedPhase(
            "no scale with computable phase statistics".into(),
        ));
    }

    let passing: Vec<&(usize, ScaleStats)> = stats
        .iter()
        .filter(|(_, s)| (s.phase_ratio - cfg.gamma).abs() < cfg.delta)
        .collect();

    let (index, chosen, fallback) = if passing.is_empty() {
        let best = stats
            .iter()
            .min_by(|a, b| {
                let da = (a.1.phase_ratio - cfg.gamma).abs();
                let db = (b.1.phase_ratio - cfg.gamma).abs();
                da.total_cmp(&db)
            })
            .expect("stats nonempty");
        (best.0, &best.1, true)
    } else {
        let best = passing
            .iter()
            .max_by(|a, b| a.1.energy.total_cmp(&b.1.energy))
            .expect("passing nonempty");
        (best.0, &best.1, false)
    };

    Ok(SelectedPair {
        imf_index: index,
        f1: d.imf_series(0, index),
        f2: d.imf_series(1, index),
        mean_frequencies: chosen.mean_frequencies,
        phase_ratio: chosen.phase_ratio,
        fallback,
    })
}

/// Phase coherence of an IMF pair: the modulus of the time-averaged unit
/// phasor of the phase difference, over the full record. 1 means locked,
/// 0 incoherent.
pub fn phase_coherence(f1: &TimeSeries, f2: &TimeSeries) -> Result<f64> {
    if f1.len() != f2.len() {
        return Err(Error::invalid(format!(
            "pair lengths differ: {} vs {}",
            f1.len(),
            f2.len()
        )));
    }
    let a1 = analytic_signal(f1)?;
    let a2 = analytic_signal(f2)?;
    let mut re = 0.0;
    let mut im = 0.0;
    for (p1, p2) in a1.phase().iter().zip(a2.phase()) {
        let d = p1 - p2;
        re += d.cos();
        im += d.sin();
    }
    let n = f1.len() as f64;
    Ok((re * re + im * im).sqrt() / n)
}

/// Relative half-width of the frequency band used to re-find the selected
/// scale after removal: a candidate IMF matches when its mean frequency is
/// within a factor of two of the original pair's.
const REMATCH_BAND: f64 = 0.5;

/// Post-removal coherence: in the re-decomposition `d`, find the scale of
/// the modified channel whose mean frequency is nearest `target_freq`
/// (removal can renumber IMFs, so matching is by frequency rather than
/// index) and measure its coherence against the intact channel's original
/// IMF. The unmodified series keeps its original phase reference, mirroring
/// the strength definition where only one series changes per direction.
///
/// When no post-removal scale falls inside the match band, the removal has
/// eliminated that rhythm from the channel and the coherence at the selected
/// scale is zero by definition.
fn coherence_after_removal(
    d: &Decomposition,
    modified_channel: usize,
    intact_reference: &TimeSeries,
    target_freq: f64,
    trim: EdgeTrim,
) -> Result<f64> {
    if d.imf_count() == 0 {
        return Err(Error::DegenerateRemoval(
            "re-decomposition produced no IMFs".into(),
        ));
    }
    let mut best: Option<(f64, usize)> = None;
    let mut any_usable = false;
    for k in 0..d.imf_count() {
        let a = match analytic_signal(&d.imf_series(modified_channel, k)) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let Ok(mf) = mean_frequency(&a, trim) else {
            continue;
        };
        any_usable = true;
        let dist = (mf - target_freq).abs();
        if dist <= REMATCH_BAND * target_freq.abs() && best.map_or(true, |(d0, _)| dist < d0) {
            best = Some((dist, k));
        }
    }
    if !any_usable {
        return Err(Error::DegenerateRemoval(
            "no scale usable after removal".into(),
        ));
    }
    let Some((_, k)) = best else {
        // The rhythm is gone from the modified channel: no phase dependency
        // remains at the selected scale.
        return Ok(0.0);
    };
    let replaced = d.imf_series(modified_channel, k);
    if modified_channel == 0 {
        phase_coherence(&replaced, intact_reference)
    } else {
        phase_coherence(intact_reference, &replaced)
    }
}

fn subtract(series: &TimeSeries, component: &[f64]) -> TimeSeries {
    let samples: Vec<f64> = series
        .samples()
        .iter()
        .zip(component)
        .map(|(a, b)| a - b)
        .collect();
    TimeSeries::new(series.label(), samples, series.sample_rate())
        .expect("difference of finite samples is finite")
}

/// Computes the directional strengths for the pair at scale `k` of `d`:
/// per direction, the selected IMF is removed from the candidate effect
/// series, the pair is re-decomposed with the same seed, and the coherence
/// change is taken as the strength.
/// Single-realization strength kernel: the baseline coherence of the pair
/// and both removal re-decompositions all use `config`'s seed, so the
/// coherence change isolates the effect of IMF removal rather than noise
/// resampling.
fn strengths_from_pair(
    u1: &TimeSeries,
    u2: &TimeSeries,
    f1: &TimeSeries,
    f2: &TimeSeries,
    config: &CausalConfig,
) -> Result<AbsoluteStrengths> {
    let eta0 = phase_coherence(f1, f2)?;
    let trim = config.selection.trim;
    let a1 = analytic_signal(f1)?;
    let a2 = analytic_signal(f2)?;
    let target = 0.5 * (mean_frequency(&a1, trim)? + mean_frequency(&a2, trim)?);

    // u1 -> u2: remove the effect-side IMF from u2 and re-decompose.
    let u2_removed = subtract(u2, f2.samples());
    let d_fwd = decompose_pair(u1, &u2_removed, config)?;
    let eta_fwd = coherence_after_removal(&d_fwd, 1, f1, target, trim)?;

    // u2 -> u1: mirror.
    let u1_removed = subtract(u1, f1.samples());
    let d_rev = decompose_pair(&u1_removed, u2, config)?;
    let eta_rev = coherence_after_removal(&d_rev, 0, f2, target, trim)?;

    Ok(AbsoluteStrengths {
        u1_to_u2: (eta0 - eta_fwd).abs(),
        u2_to_u1: (eta0 - eta_rev).abs(),
    })
}

/// Scale of `d` whose pair mean frequency is nearest `target`.
fn nearest_pair_scale(d: &Decomposition, target: f64, trim: EdgeTrim) -> Result<usize> {
    let mut best: Option<(f64, usize)> = None;
    for k in 0..d.imf_count() {
        let (Ok(a1), Ok(a2)) = (
            analytic_signal(&d.imf_series(0, k)),
            analytic_signal(&d.imf_series(1, k)),
        ) else {
            continue;
        };
        let (Ok(mf1), Ok(mf2)) = (mean_frequency(&a1, trim), mean_frequency(&a2, trim)) else {
            continue;
        };
        let dist = (0.5 * (mf1 + mf2) - target).abs();
        if best.map_or(true, |(d0, _)| dist < d0) {
            best = Some((dist, k));
        }
    }
    best.map(|(_, k)| k).ok_or_else(|| {
        Error::DegenerateRemoval("no scale with computable pair frequency".into())
    })
}

/// Directional strengths for the anchor pair, averaged over
/// `config.realization_count` derived noise realizations. Realization 0 uses
/// the anchor pair as-is; each further realization re-decomposes the pair
/// under its own derived seed, re-anchors at the scale nearest the anchor
/// frequency, and contributes its own removal contrast.
fn averaged_strengths(
    u1: &TimeSeries,
    u2: &TimeSeries,
    f1: &TimeSeries,
    f2: &TimeSeries,
    anchor_freq: f64,
    config: &CausalConfig,
) -> Result<AbsoluteStrengths> {
    let mut sum = AbsoluteStrengths {
        u1_to_u2: 0.0,
        u2_to_u1: 0.0,
    };
    for r in 0..config.realization_count {
        let s = if r == 0 {
            strengths_from_pair(u1, u2, f1, f2, config)?
        } else {
            let cfg_r = config.with_seed(derive_seed(
                config.noise.seed,
                hash_key(&format!("realization-{r}")),
            ));
            let d_r = decompose_pair(u1, u2, &cfg_r)?;
            let k_r = nearest_pair_scale(&d_r, anchor_freq, config.selection.trim)?;
            strengths_from_pair(u1, u2, &d_r.imf_series(0, k_r), &d_r.imf_series(1, k_r), &cfg_r)?
        };
        sum.u1_to_u2 += s.u1_to_u2;
        sum.u2_to_u1 += s.u2_to_u1;
    }
    let scale = 1.0 / config.realization_count as f64;
    Ok(AbsoluteStrengths {
        u1_to_u2: sum.u1_to_u2 * scale,
        u2_to_u1: sum.u2_to_u1 * scale,
    })
}

/// Absolute causal strengths for a pair previously selected from the
/// decomposition of `(u1, u2)`.
pub fn causal_strengths(
    u1: &TimeSeries,
    u2: &TimeSeries,
    pair: &SelectedPair,
    config: &CausalConfig,
) -> Result<AbsoluteStrengths> {
    config.validate()?;
    averaged_strengths(
        u1,
        u2,
        &pair.f1,
        &pair.f2,
        pair.pair_frequency(),
        config,
    )
}

/// Normalizes absolute strengths into relative strengths summing to one.
/// Two zero strengths yield (0.5, 0.5): an uninformative outcome reads as
/// no (or fully reciprocal) causality.
pub fn relative_strength(sigma: AbsoluteStrengths) -> RelativeStrengths {
    let total = sigma.u1_to_u2 + sigma.u2_to_u1;
    if total == 0.0 {
        return RelativeStrengths {
            u1_to_u2: 0.5,
            u2_to_u1: 0.5,
        };
    }
    let c12 = sigma.u1_to_u2 / total;
    RelativeStrengths {
        u1_to_u2: c12,
        u2_to_u1: 1.0 - c12,
    }
}

fn causal_core(
    u1: &TimeSeries,
    u2: &TimeSeries,
    config: &CausalConfig,
    per_imf: bool,
) -> Result<CausalResult> {
    let d = decompose_pair(u1, u2, config)?;
    let pair = select_imf_pair(&d, &config.selection)?;
    let eta_baseline = phase_coherence(&pair.f1, &pair.f2)?;
    let sigma = causal_strengths(u1, u2, &pair, config)?;
    let relative = relative_strength(sigma);

    let per_imf = if per_imf {
        let trim = config.selection.trim;
        let mut all = Vec::with_capacity(d.imf_count());
        for k in 0..d.imf_count() {
            let f1 = d.imf_series(0, k);
            let f2 = d.imf_series(1, k);
            let anchor = match (analytic_signal(&f1), analytic_signal(&f2)) {
                (Ok(a1), Ok(a2)) => {
                    0.5 * (mean_frequency(&a1, trim)? + mean_frequency(&a2, trim)?)
                }
                _ => {
                    all.push(RelativeStrengths {
                        u1_to_u2: 0.5,
                        u2_to_u1: 0.5,
                    });
                    continue;
                }
            };
            let s = averaged_strengths(u1, u2, &f1, &f2, anchor, config)?;
            all.push(relative_strength(s));
        }
        Some(all)
    } else {
        None
    };

    Ok(CausalResult {
        pair,
        eta_baseline,
        sigma,
        relative,
        per_imf,
    })
}

/// Full causal decomposition of a pair. Swapping the arguments mirrors the
/// directional outputs exactly (given the same configuration and seed).
pub fn causal_decompose(
    u1: &TimeSeries,
    u2: &TimeSeries,
    config: &CausalConfig,
) -> Result<CausalResult> {
    causal_decompose_opts(u1, u2, config, false)
}

/// As [`causal_decompose`], optionally also computing the per-scale relative
/// strengths across every IMF index.
pub fn causal_decompose_opts(
    u1: &TimeSeries,
    u2: &TimeSeries,
    config: &CausalConfig,
    per_imf: bool,
) -> Result<CausalResult> {
    config.validate()?;
    if u1.len() != u2.len() {
        return Err(Error::invalid(format!(
            "series lengths differ: {} vs {}",
            u1.len(),
            u2.len()
        )));
    }
    let swap = canonical_swap(u1, u2);
    let (a, b) = if swap { (u2, u1) } else { (u1, u2) };
    let result = causal_core(a, b, config, per_imf)?;
    Ok(if swap { result.mirrored() } else { result })
}

/// Relative strengths recomputed independently at every scale.
pub fn per_imf_causality(
    u1: &TimeSeries,
    u2: &TimeSeries,
    config: &CausalConfig,
) -> Result<Vec<RelativeStrengths>> {
    let result = causal_decompose_opts(u1, u2, config, true)?;
    Ok(result.per_imf.expect("per-imf requested"))
}

/// Segments both series into non-overlapping windows, runs the causal
/// decomposition per window, and accumulates the directional metrics.
pub fn windowed_causality(
    u1: &TimeSeries,
    u2: &TimeSeries,
    window_length: usize,
    config: &CausalConfig,
) -> Result<WindowedCausality> {
    if u1.len() != u2.len() {
        return Err(Error::invalid(format!(
            "series lengths differ: {} vs {}",
            u1.len(),
            u2.len()
        )));
    }
    let (plan, win1) = segment(u1, window_length)?;
    let (_, win2) = segment(u2, window_length)?;
    if plan.count == 0 {
        return Err(Error::invalid("no full window fits the series"));
    }

    let mut windows = Vec::with_capacity(plan.count);
    let mut e1 = 0.0;
    let mut e2 = 0.0;
    let mut n1 = 0;
    let mut n2 = 0;
    let mut ties = 0;
    for (w1, w2) in win1.iter().zip(&win2) {
        let result = causal_decompose(w1, w2, config)?;
        e1 += result.relative.u1_to_u2;
        e2 += result.relative.u2_to_u1;
        if result.relative.u1_to_u2 > 0.5 {
            n1 += 1;
        } else if result.relative.u2_to_u1 > 0.5 {
            n2 += 1;
        } else {
            ties += 1;
        }
        windows.push(result);
    }

    Ok(WindowedCausality {
        plan,
        windows,
        e1,
        e2,
        n1,
        n2,
        ties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tone(freq: f64, rate: f64, n: usize, amp: f64, phase: f64) -> TimeSeries {
        let samples: Vec<f64> = (0..n)
            .map(|i| amp * (2.0 * PI * freq * i as f64 / rate + phase).cos())
            .collect();
        TimeSeries::new("tone", samples, rate).unwrap()
    }

    #[test]
    fn relative_strength_arithmetic() {
        let c = relative_strength(AbsoluteStrengths {
            u1_to_u2: 0.3,
            u2_to_u1: 0.3,
        });
        assert_eq!((c.u1_to_u2, c.u2_to_u1), (0.5, 0.5));

        let c = relative_strength(AbsoluteStrengths {
            u1_to_u2: 0.4,
            u2_to_u1: 0.0,
        });
        assert_eq!((c.u1_to_u2, c.u2_to_u1), (1.0, 0.0));

        let c = relative_strength(AbsoluteStrengths {
            u1_to_u2: 0.2,
            u2_to_u1: 0.6,
        });
        assert!((c.u1_to_u2 - 0.25).abs() < 1e-15);
        assert!((c.u2_to_u1 - 0.75).abs() < 1e-15);

        let c = relative_strength(AbsoluteStrengths {
            u1_to_u2: 0.0,
            u2_to_u1: 0.0,
        });
        assert_eq!((c.u1_to_u2, c.u2_to_u1), (0.5, 0.5));
    }

    #[test]
    fn coherence_of_identical_phases_is_one() {
        let f1 = tone(10.0, 1000.0, 512, 1.0, 0.0);
        let f2 = tone(10.0, 1000.0, 512, 0.5, 0.0);
        let eta = phase_coherence(&f1, &f2).unwrap();
        assert!((eta - 1.0).abs() < 1e-9, "eta {eta}");
    }

    #[test]
    fn coherence_with_constant_offset_is_one() {
        let f1 = tone(10.0, 1000.0, 512, 1.0, 0.0);
        let f2 = tone(10.0, 1000.0, 512, 1.0, 0.9);
        let eta = phase_coherence(&f1, &f2).unwrap();
        assert!((eta - 1.0).abs() < 1e-5, "eta {eta}");
    }

    #[test]
    fn uniformly_stepping_phase_difference_sums_to_zero() {
        // Phase differences marching through k·2π/N are N-th roots of unity.
        let n = 64;
        let re: f64 = (0..n).map(|k| (2.0 * PI * k as f64 / n as f64).cos()).sum();
        let im: f64 = (0..n).map(|k| (2.0 * PI * k as f64 / n as f64).sin()).sum();
        let eta = (re * re + im * im).sqrt() / n as f64;
        assert!(eta < 1e-12, "eta {eta}");
    }

    #[test]
    fn coherence_rejects_zero_energy() {
        let z = TimeSeries::new("z", vec![0.0; 64], 1.0).unwrap();
        let f = tone(5.0, 64.0, 64, 1.0, 0.0);
        assert!(matches!(
            phase_coherence(&z, &f),
            Err(Error::UndefinedPhase(_))
        ));
    }

    #[test]
    fn selection_prefers_unit_phase_ratio() {
        // Construct a two-channel decomposition where only one scale has a
        // phase ratio near 1 (same frequency in both channels).
        let rate = 1000.0;
        let n = 1024;
        let ch0 = vec![
            tone(50.0, rate, n, 1.0, 0.0).samples().to_vec(),
            tone(11.0, rate, n, 1.0, 0.0).samples().to_vec(),
        ];
        let ch1 = vec![
            tone(50.0, rate, n, 0.8, 0.1).samples().to_vec(),
            tone(25.0, rate, n, 1.0, 0.0).samples().to_vec(),
        ];
        let d = Decomposition::from_parts(
            vec![
                emd::ChannelModes::new("u1", ch0, vec![0.0; n]),
                emd::ChannelModes::new("u2", ch1, vec![0.0; n]),
            ],
            rate,
        )
        .unwrap();
        let pair = select_imf_pair(&d, &PairSelectionConfig::default()).unwrap();
        assert_eq!(pair.imf_index, 0);
        assert!(!pair.fallback);
        assert!((pair.phase_ratio - 1.0).abs() < 0.1);
    }

    #[test]
    fn selection_falls_back_when_nothing_passes() {
        let rate = 1000.0;
        let n = 1024;
        let d = Decomposition::from_parts(
            vec![
                emd::ChannelModes::new(
                    "u1",
                    vec![tone(40.0, rate, n, 1.0, 0.0).samples().to_vec()],
                    vec![0.0; n],
                ),
                emd::ChannelModes::new(
                    "u2",
                    vec![tone(9.0, rate, n, 1.0, 0.0).samples().to_vec()],
                    vec![0.0; n],
                ),
            ],
            rate,
        )
        .unwrap();
        let pair = select_imf_pair(&d, &PairSelectionConfig::default()).unwrap();
        assert!(pair.fallback);
        assert_eq!(pair.imf_index, 0);
    }

    #[test]
    fn empty_decomposition_is_rejected() {
        let d = Decomposition::from_parts(
            vec![
                emd::ChannelModes::new("u1", vec![], vec![0.0; 32]),
                emd::ChannelModes::new("u2", vec![], vec![0.0; 32]),
            ],
            1.0,
        )
        .unwrap();
        assert!(matches!(
            select_imf_pair(&d, &PairSelectionConfig::default()),
            Err(Error::EmptyDecomposition)
        ));
    }

    fn quick_config(seed: u64) -> CausalConfig {
        CausalConfig {
            direction_count: 32,
            noise: NoiseConfig {
                seed,
                ..NoiseConfig::default()
            },
            ..CausalConfig::default()
        }
    }

    #[test]
    fn identical_series_are_symmetric() {
        let mix: Vec<f64> = (0..300)
            .map(|i| {
                let t = i as f64 / 100.0;
                (2.0 * PI * 17.0 * t).cos() + 0.6 * (2.0 * PI * 3.0 * t).cos()
            })
            .collect();
        let u1 = TimeSeries::new("u1", mix.clone(), 100.0).unwrap();
        let u2 = TimeSeries::new("u2", mix, 100.0).unwrap();
        let result = causal_decompose(&u1, &u2, &quick_config(13)).unwrap();
        assert!(
            (result.sigma.u1_to_u2 - result.sigma.u2_to_u1).abs() < 1e-6,
            "sigma asymmetry: {:?}",
            result.sigma
        );
        assert!((result.relative.u1_to_u2 - 0.5).abs() < 1e-6);
    }

    #[test]
    fn swapping_arguments_mirrors_exactly() {
        let u1 = tone(21.0, 100.0, 300, 1.0, 0.3);
        let mixed: Vec<f64> = u1
            .samples()
            .iter()
            .enumerate()
            .map(|(i, v)| 0.8 * v + 0.4 * (2.0 * PI * 5.0 * i as f64 / 100.0).cos())
            .collect();
        let u2 = TimeSeries::new("u2", mixed, 100.0).unwrap();
        let cfg = quick_config(29);
        let fwd = causal_decompose(&u1, &u2, &cfg).unwrap();
        let rev = causal_decompose(&u2, &u1, &cfg).unwrap();
        assert_eq!(fwd.relative.u1_to_u2, rev.relative.u2_to_u1);
        assert_eq!(fwd.relative.u2_to_u1, rev.relative.u1_to_u2);
        assert_eq!(fwd.sigma.u1_to_u2, rev.sigma.u2_to_u1);
        assert_eq!(fwd.pair.imf_index, rev.pair.imf_index);
    }

    #[test]
    fn windowed_accounting_is_consistent() {
        let n = 300;
        let u1 = tone(9.0, 100.0, n, 1.0, 0.0);
        let drive: Vec<f64> = u1
            .samples()
            .iter()
            .enumerate()
            .map(|(i, v)| 0.7 * v + 0.5 * (2.0 * PI * 2.0 * i as f64 / 100.0).cos())
            .collect();
        let u2 = TimeSeries::new("u2", drive, 100.0).unwrap();
        let wc = windowed_causality(&u1, &u2, 50, &quick_config(7)).unwrap();
        assert_eq!(wc.plan.count, 6);
        assert_eq!(wc.windows.len(), 6);
        assert!((wc.e1 + wc.e2 - 6.0).abs() < 1e-9);
        assert_eq!(wc.n1 + wc.n2 + wc.ties, 6);
    }

    #[test]
    fn windowed_rejects_oversized_window() {
        let u1 = tone(9.0, 100.0, 100, 1.0, 0.0);
        let u2 = tone(5.0, 100.0, 100, 1.0, 0.0);
        assert!(windowed_causality(&u1, &u2, 128, &quick_config(1)).is_err());
    }

    #[test]
    fn per_imf_entries_sum_to_one_and_match_selection() {
        let u1 = tone(18.0, 100.0, 240, 1.0, 0.0);
        let coupled: Vec<f64> = u1
            .samples()
            .iter()
            .enumerate()
            .map(|(i, v)| 0.9 * v + 0.3 * (2.0 * PI * 4.0 * i as f64 / 100.0).sin())
            .collect();
        let u2 = TimeSeries::new("u2", coupled, 100.0).unwrap();
        let cfg = quick_config(3);
        let result = causal_decompose_opts(&u1, &u2, &cfg, true).unwrap();
        let per_imf = result.per_imf.as_ref().unwrap();
        for entry in per_imf {
            assert!((entry.u1_to_u2 + entry.u2_to_u1 - 1.0).abs() < 1e-12);
        }
        let sel = &per_imf[result.pair.imf_index];
        assert_eq!(sel.u1_to_u2, result.relative.u1_to_u2);
        assert_eq!(sel.u2_to_u1, result.relative.u2_to_u1);
    }
}
