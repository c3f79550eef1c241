// Scratch probe for pipeline behavior on the benchmark systems (not shipped).
use namemd::causality::{causal_decompose, CausalConfig};
use namemd::harness::data_seed;
use namemd::signal::{align_shifted_pair, decimate};
use namemd::synth::{ar_stochastic, logistic_coupled, white_noise_pair, SystemKind};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let what = args.get(1).map(String::as_str).unwrap_or("all");

    if what == "scales" {
        use namemd::emd::na_memd;
        use namemd::hilbert::{analytic_signal, hilbert_energy, mean_frequency, mean_phase, EdgeTrim};
        let (x, y) = logistic_coupled(80, 0).unwrap();
        let cfg = CausalConfig::default().with_seed(9);
        let d = na_memd(&x, &y, &cfg.noise, cfg.direction_count, &cfg.emd).unwrap();
        let trim = EdgeTrim::default();
        for k in 0..d.imf_count() {
            let a1 = analytic_signal(&d.imf_series(0, k));
            let a2 = analytic_signal(&d.imf_series(1, k));
            match (a1, a2) {
                (Ok(a1), (Ok(a2))) => {
                    let p1 = mean_phase(&a1, trim);
                    let p2 = mean_phase(&a2, trim);
                    let f1 = mean_frequency(&a1, trim);
                    let f2 = mean_frequency(&a2, trim);
                    let e = hilbert_energy(&a1, &a2, trim);
                    println!(
                        "scale {k}: ratio {:.4} (p1 {:.3}, p2 {:.3}) freqs ({:?}, {:?}) energy {:.5}",
                        p1 / p2, p1, p2, f1.map(|v| (v * 1e3).round() / 1e3), f2.map(|v| (v * 1e3).round() / 1e3), e
                    );
                }
                _ => println!("scale {k}: analytic failed"),
            }
        }
        return;
    }

    if what == "etas" {
        use namemd::causality::{phase_coherence, select_imf_pair, PairSelectionConfig};
        use namemd::emd::na_memd;
        use namemd::hilbert::{analytic_signal, mean_frequency, EdgeTrim};
        use namemd::TimeSeries;
        let (x, y) = logistic_coupled(80, 0).unwrap();
        let cfg = CausalConfig::default().with_seed(5);
        let mut sel = PairSelectionConfig::default();
        sel.delta = 0.2;
        let trim = EdgeTrim::default();
        for shift in -10i64..=10 {
            let (a, b) = align_shifted_pair(&x, &y, shift).unwrap();
            let d = na_memd(&a, &b, &cfg.noise, cfg.direction_count, &cfg.emd).unwrap();
            let pair = select_imf_pair(&d, &sel).unwrap();
            let eta0 = phase_coherence(&pair.f1, &pair.f2).unwrap();
            let target = 0.5 * (pair.mean_frequencies.0 + pair.mean_frequencies.1);
            // forward removal: remove f2 from b
            let b2: Vec<f64> = b.samples().iter().zip(pair.f2.samples()).map(|(p, q)| p - q).collect();
            let b2 = TimeSeries::new("b2", b2, b.sample_rate()).unwrap();
            let d_fwd = na_memd(&a, &b2, &cfg.noise, cfg.direction_count, &cfg.emd).unwrap();
            let a1: Vec<f64> = a.samples().iter().zip(pair.f1.samples()).map(|(p, q)| p - q).collect();
            let a1 = TimeSeries::new("a1", a1, a.sample_rate()).unwrap();
            let d_rev = na_memd(&a1, &b, &cfg.noise, cfg.direction_count, &cfg.emd).unwrap();
            // nearest scale of modified channel by its own mean frequency
            let nearest = |d: &namemd::Decomposition, ch: usize| -> Option<(usize, f64)> {
                let mut best: Option<(f64, usize, f64)> = None;
                for k in 0..d.imf_count() {
                    let Ok(an) = analytic_signal(&d.imf_series(ch, k)) else { continue };
                    let Ok(mf) = mean_frequency(&an, trim) else { continue };
                    let dist = (mf - target).abs();
                    if best.map_or(true, |(b, _, _)| dist < b) {
                        best = Some((dist, k, mf));
                    }
                }
                best.map(|(_, k, mf)| (k, mf))
            };
            let (kf, mff) = nearest(&d_fwd, 1).unwrap();
            let (kr, mfr) = nearest(&d_rev, 0).unwrap();
            let eta_fwd = phase_coherence(&pair.f1, &d_fwd.imf_series(1, kf)).unwrap();
            let eta_rev = phase_coherence(&d_rev.imf_series(0, kr), &pair.f2).unwrap();
            println!(
                "shift {shift:3}: pair {} eta0 {:.3} | fwd k{kf} f{:.3} eta' {:.3} sigma {:.3} | rev k{kr} f{:.3} eta'' {:.3} sigma {:.3}",
                pair.imf_index, eta0, mff, eta_fwd, (eta0 - eta_fwd).abs(), mfr, eta_rev, (eta0 - eta_rev).abs()
            );
        }
        return;
    }

    if what == "det" || what == "all" {
        // Deterministic system, 80 points, 10 seeds.
        let (x, y) = logistic_coupled(80, 0).unwrap();
        let mut fwd = 0;
        let started = Instant::now();
        for seed in 0..10u64 {
            let mut cfg = CausalConfig::default().with_seed(seed); cfg.selection.delta = std::env::var("DELTA").map(|v| v.parse().unwrap()).unwrap_or(0.1); cfg.noise.noise_channel_count = std::env::var("M").map(|v| v.parse().unwrap()).unwrap_or(2); cfg.realization_count = std::env::var("R").map(|v| v.parse().unwrap()).unwrap_or(1);
            let r = causal_decompose(&x, &y, &cfg).unwrap();
            println!(
                "det seed {seed}: C(x->y) = {:.3}, pair {} freq {:?} ratio {:.3} fallback {}",
                r.relative.u1_to_u2,
                r.pair.imf_index,
                r.pair.mean_frequencies,
                r.pair.phase_ratio,
                r.pair.fallback
            );
            if r.relative.u1_to_u2 > 0.5 {
                fwd += 1;
            }
        }
        println!("deterministic: {fwd}/10 seeds say x->y, {:?}", started.elapsed());
    }

    if what == "stoch" || what == "all" {
        let mut fwd = 0;
        let started = Instant::now();
        for seed in 0..20u64 {
            let (x, y) = ar_stochastic(100, data_seed(0, SystemKind::StochasticAr, seed as usize), 100).unwrap();
            let mut cfg = CausalConfig::default().with_seed(seed); cfg.selection.delta = std::env::var("DELTA").map(|v| v.parse().unwrap()).unwrap_or(0.1); cfg.noise.noise_channel_count = std::env::var("M").map(|v| v.parse().unwrap()).unwrap_or(2); cfg.realization_count = std::env::var("R").map(|v| v.parse().unwrap()).unwrap_or(1);
            let r = causal_decompose(&x, &y, &cfg).unwrap();
            println!(
                "stoch seed {seed}: C(x->y) = {:.3} pair {} freqs ({:.3},{:.3}) ratio {:.3} sigma ({:.4},{:.4}) fallback {}",
                r.relative.u1_to_u2,
                r.pair.imf_index,
                r.pair.mean_frequencies.0,
                r.pair.mean_frequencies.1,
                r.pair.phase_ratio,
                r.sigma.u1_to_u2,
                r.sigma.u2_to_u1,
                r.pair.fallback
            );
            if r.relative.u1_to_u2 > 0.5 {
                fwd += 1;
            }
        }
        println!("stochastic: {fwd}/20 seeds say x->y, {:?}", started.elapsed());
    }

    if what == "noise" || what == "all" {
        let started = Instant::now();
        for &len in &[10usize, 50, 100, 300, 1000] {
            let mut cs = Vec::new();
            for seed in 0..20u64 {
                let (x, y) = white_noise_pair(len, seed * 31 + 7).unwrap();
                let mut cfg = CausalConfig::default().with_seed(seed); cfg.selection.delta = std::env::var("DELTA").map(|v| v.parse().unwrap()).unwrap_or(0.1); cfg.noise.noise_channel_count = std::env::var("M").map(|v| v.parse().unwrap()).unwrap_or(2); cfg.realization_count = std::env::var("R").map(|v| v.parse().unwrap()).unwrap_or(1);
                match causal_decompose(&x, &y, &cfg) {
                    Ok(r) => cs.push(r.relative.u1_to_u2),
                    Err(e) => println!("len {len} seed {seed}: error {e}"),
                }
            }
            let mean = cs.iter().sum::<f64>() / cs.len() as f64;
            println!("noise len {len}: mean C = {mean:.3} over {} runs", cs.len());
        }
        println!("noise sweep took {:?}", started.elapsed());
    }

    if what == "shift" || what == "all" {
        let (x, y) = logistic_coupled(80, 0).unwrap();
        let mut dirs = Vec::new();
        let started = Instant::now();
        for shift in -20i64..=20 {
            let (a, b) = align_shifted_pair(&x, &y, shift).unwrap();
            let mut cfg = CausalConfig::default().with_seed(5); cfg.selection.delta = std::env::var("DELTA").map(|v| v.parse().unwrap()).unwrap_or(0.1); cfg.noise.noise_channel_count = std::env::var("M").map(|v| v.parse().unwrap()).unwrap_or(2); cfg.realization_count = std::env::var("R").map(|v| v.parse().unwrap()).unwrap_or(1);
            let r = causal_decompose(&a, &b, &cfg).unwrap();
            if std::env::var("VERBOSE").is_ok() {
                println!(
                    "shift {shift}: C {:.3} pair {} freqs ({:.3},{:.3}) sigma ({:.4},{:.4})",
                    r.relative.u1_to_u2,
                    r.pair.imf_index,
                    r.pair.mean_frequencies.0,
                    r.pair.mean_frequencies.1,
                    r.sigma.u1_to_u2,
                    r.sigma.u2_to_u1
                );
            }
            dirs.push(r.relative.u1_to_u2 > 0.5);
        }
        let fwd = dirs.iter().filter(|d| **d).count();
        println!("shift sweep: {fwd}/41 forward, {:?}", started.elapsed());
    }

    if what == "factor" || what == "all" {
        let (x, y) = logistic_coupled(80, 0).unwrap();
        for factor in [1usize, 2] {
            let a = decimate(&x, factor).unwrap();
            let b = decimate(&y, factor).unwrap();
            let mut cfg = CausalConfig::default().with_seed(5); cfg.selection.delta = std::env::var("DELTA").map(|v| v.parse().unwrap()).unwrap_or(0.1); cfg.noise.noise_channel_count = std::env::var("M").map(|v| v.parse().unwrap()).unwrap_or(2); cfg.realization_count = std::env::var("R").map(|v| v.parse().unwrap()).unwrap_or(1);
            let r = causal_decompose(&a, &b, &cfg).unwrap();
            println!("factor {factor}: C(x->y) = {:.3}", r.relative.u1_to_u2);
        }
    }
}
