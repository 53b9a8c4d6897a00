// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! Experiment harness: painting-density and permutation sweeps for the
//! decoder, training-distribution comparisons, and end-to-end zero-bit-
//! error-rate runs over a corpus.
//!
//! Every run is reproducible: per-task seeds derive from the config seed
//! and the task index, and all aggregation is integer-based, so rendered
//! tables are byte-identical regardless of thread count. Each table
//! carries a hash of its configuration for traceability.

use anyhow::{anyhow, bail, Result};
use rand::distributions::{Bernoulli, Distribution};
use rand::Rng;
use rayon::prelude::*;
use serde_json::json;
use sha2::{Digest, Sha256};

use sigmark_core::bits::BitVector;
use sigmark_core::channel::{
    intrinsic_pattern, sample_distortion_mask, ChannelKind, ChannelModel,
};
use sigmark_core::decoder::{
    eval_trial_seed, evaluate_trial, train, train_with_sampler, DecoderError, EvalStats,
    LinearDecoderModel, TrainConfig,
};
use sigmark_core::framework::{
    distort_image, embed_payload, extract_payload, PipelineConfig,
};
use sigmark_core::painting::PaintingScheme;
use sigmark_core::rng::derive_seed;

use crate::config::ExperimentConfig;
use crate::corpus::Corpus;

/// Default SGD steps for the decoder-table benches.
pub const TABLE_BENCH_STEPS: u64 = 50_000;
/// Default SGD steps for image-level benches; the oracle regime needs
/// the longer run to reach its optimum on sparse supervision.
pub const IMAGE_BENCH_STEPS: u64 = 150_000;

const TRAIN_TAG: u64 = 0x5452_4149_4E43_4C4C;
const PAYLOAD_TAG: u64 = 0x5041_594C_4F41_4421;
const CHANNEL_TAG: u64 = 0x4348_414E_5345_4544;

/// A rendered bench result: an aligned text table plus machine-readable
/// JSON carrying the same numbers.
pub struct BenchOutput {
    pub title: String,
    pub config_hash: String,
    pub table: String,
    pub json: serde_json::Value,
}

fn config_hash(cfg: &ExperimentConfig) -> String {
    let digest = Sha256::digest(cfg.canonical_toml().as_bytes());
    let mut out = String::new();
    for byte in digest.iter().take(8) {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

fn render_table(title: &str, hash: &str, columns: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(String::len).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    out.push_str(title);
    out.push('\n');
    out.push_str(&format!("config: {hash}\n"));
    let fmt_row = |cells: &[String]| -> String {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{:>width$}", cell, width = widths[i]));
        }
        line.push('\n');
        line
    };
    out.push_str(&fmt_row(columns));
    let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
    out.push_str(&"-".repeat(total));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(row));
    }
    out
}

/// Runs `job` inside a dedicated pool of `threads` threads (0 = rayon's
/// default). Results must not depend on the thread count; per-task seeds
/// guarantee that for everything in this module.
fn with_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if threads > 0 {
        builder = builder.num_threads(threads);
    }
    let pool = builder.build().map_err(|e| anyhow!("thread pool: {e}"))?;
    Ok(pool.install(job))
}

/// Parallel evaluation with per-trial seeds: the aggregate is invariant
/// to how trials are partitioned.
fn evaluate_parallel(model: &LinearDecoderModel, p: f64, trials: u64, seed: u64) -> EvalStats {
    const BLOCK: u64 = 4096;
    let blocks = trials.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut stats = EvalStats::zero();
            for t in (b * BLOCK)..((b + 1) * BLOCK).min(trials) {
                let (correct, exact) = evaluate_trial(model, p, eval_trial_seed(seed, t));
                stats.trials += 1;
                stats.correct_bits += correct as u64;
                stats.total_bits += 64;
                stats.exact_count += exact as u64;
            }
            stats
        })
        .reduce(EvalStats::zero, EvalStats::merge)
}

fn train_cell(
    cfg: &ExperimentConfig,
    scheme: PaintingScheme,
    p: f64,
    steps: u64,
    cell_seed: u64,
) -> Result<LinearDecoderModel, DecoderError> {
    let train_cfg = TrainConfig {
        error_rate: p,
        learning_rate: cfg.learning_rate,
        batch_size: cfg.batch_size,
        steps,
        seed: cell_seed,
        scheme,
    };
    train(&train_cfg).map(|(model, _)| model)
}

/// One cell of a decoder accuracy table.
#[derive(Clone)]
struct Cell {
    label: String,
    p: f64,
    stats: Option<EvalStats>,
    error: Option<String>,
}

fn accuracy_cell_text(cell: &Cell) -> String {
    match &cell.stats {
        Some(stats) => format!("{:.4}", stats.bit_accuracy()),
        None => "diverged".to_string(),
    }
}

fn cells_json(cells: &[Cell]) -> serde_json::Value {
    serde_json::Value::Array(
        cells
            .iter()
            .map(|c| {
                let (acc, exact, trials, ci) = match &c.stats {
                    Some(s) => {
                        let acc = s.bit_accuracy();
                        let ci = 1.96 * (acc * (1.0 - acc) / s.total_bits as f64).sqrt();
                        (Some(acc), Some(s.exact_recovery_rate()), s.trials, Some(ci))
                    }
                    None => (None, None, 0, None),
                };
                json!({
                    "label": c.label,
                    "p": c.p,
                    "bit_accuracy": acc,
                    "exact_recovery_rate": exact,
                    "trials": trials,
                    "ci95": ci,
                    "error": c.error,
                })
            })
            .collect(),
    )
}

/// Effect of painting density: one decoder per (L, p) cell, trained and
/// evaluated at the same rate.
pub fn bench_painting_density(cfg: &ExperimentConfig, threads: usize) -> Result<BenchOutput> {
    cfg.validate()?;
    if cfg.densities.iter().any(|&l| !(2..=7).contains(&l)) {
        bail!("painting densities must lie in [2, 7]");
    }
    let steps = cfg.steps.unwrap_or(TABLE_BENCH_STEPS);
    let hash = config_hash(cfg);

    let jobs: Vec<(usize, f64, u64)> = cfg
        .densities
        .iter()
        .flat_map(|&l| {
            cfg.noise_grid
                .iter()
                .map(move |&p| (l, p, (l as u64) << 32 | (p * 1e6) as u64))
        })
        .collect();

    let cells: Vec<Cell> = with_pool(threads, || {
        jobs.par_iter()
            .map(|&(l, p, tag)| {
                let scheme = PaintingScheme::dcss_prefix(l).expect("validated density");
                let cell_seed = derive_seed(cfg.seed, TRAIN_TAG, tag);
                match train_cell(cfg, scheme, p, steps, cell_seed) {
                    Ok(model) => Cell {
                        label: format!("L={l}"),
                        p,
                        stats: Some(evaluate_parallel(&model, p, cfg.trials, cell_seed ^ 1)),
                        error: None,
                    },
                    Err(e) => Cell {
                        label: format!("L={l}"),
                        p,
                        stats: None,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect()
    })?;

    let mut columns = vec!["L".to_string()];
    columns.extend(cfg.noise_grid.iter().map(|p| format!("p={p}")));
    let mut rows = Vec::new();
    for (li, l) in cfg.densities.iter().enumerate() {
        let mut row = vec![l.to_string()];
        for pi in 0..cfg.noise_grid.len() {
            row.push(accuracy_cell_text(&cells[li * cfg.noise_grid.len() + pi]));
        }
        rows.push(row);
    }

    let title = "Painting density vs decoder bit accuracy (Bernoulli noise)";
    Ok(BenchOutput {
        title: title.to_string(),
        config_hash: hash.clone(),
        table: render_table(title, &hash, &columns, &rows),
        json: json!({
            "experiment": "painting",
            "config_hash": hash,
            "steps": steps,
            "cells": cells_json(&cells),
        }),
    })
}

/// DCSS versus adjacent-offset (NearBy) painting at density 7.
pub fn bench_permutation(cfg: &ExperimentConfig, threads: usize) -> Result<BenchOutput> {
    cfg.validate()?;
    let steps = cfg.steps.unwrap_or(TABLE_BENCH_STEPS);
    let hash = config_hash(cfg);

    let schemes = [
        ("DCSS", PaintingScheme::dcss_prefix(7).unwrap()),
        ("NearBy", PaintingScheme::nearby(7).unwrap()),
    ];
    let jobs: Vec<(usize, f64)> = (0..schemes.len())
        .flat_map(|s| cfg.noise_grid.iter().map(move |&p| (s, p)))
        .collect();

    let cells: Vec<Cell> = with_pool(threads, || {
        jobs.par_iter()
            .map(|&(s, p)| {
                let (name, scheme) = &schemes[s];
                let cell_seed =
                    derive_seed(cfg.seed, TRAIN_TAG, (s as u64) << 40 | (p * 1e6) as u64);
                match train_cell(cfg, scheme.clone(), p, steps, cell_seed) {
                    Ok(model) => Cell {
                        label: name.to_string(),
                        p,
                        stats: Some(evaluate_parallel(&model, p, cfg.trials, cell_seed ^ 1)),
                        error: None,
                    },
                    Err(e) => Cell {
                        label: name.to_string(),
                        p,
                        stats: None,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect()
    })?;

    let mut columns = vec!["scheme".to_string()];
    columns.extend(cfg.noise_grid.iter().map(|p| format!("p={p}")));
    let mut rows = Vec::new();
    for (s, (name, _)) in schemes.iter().enumerate() {
        let mut row = vec![name.to_string()];
        for pi in 0..cfg.noise_grid.len() {
            row.push(accuracy_cell_text(&cells[s * cfg.noise_grid.len() + pi]));
        }
        rows.push(row);
    }

    let title = "Painting strategy vs decoder bit accuracy (density 7)";
    Ok(BenchOutput {
        title: title.to_string(),
        config_hash: hash.clone(),
        table: render_table(title, &hash, &columns, &rows),
        json: json!({
            "experiment": "permutation",
            "config_hash": hash,
            "steps": steps,
            "cells": cells_json(&cells),
        }),
    })
}

/// Integer per-image outcome of one corpus pipeline run.
struct ImageOutcome {
    raw_errors: u64,
    /// Corrected error bits, one entry per decoder variant.
    corrected_errors: Vec<u64>,
}

/// Embeds a random payload, distorts, and extracts with each decoder.
///
/// The raw A-patch observations are identical to what an ERPA-off embed
/// of the same payload would see (records and distortion streams are
/// keyed per patch origin), so `raw_errors == 0` is exactly the ERPA-off
/// success criterion at matched payload.
fn run_image(
    cfg: &ExperimentConfig,
    corpus: &Corpus,
    index: u64,
    channel_model: &ChannelModel,
    strength: Option<f64>,
    decoders: &[&LinearDecoderModel],
    pipeline: &PipelineConfig,
) -> Result<ImageOutcome> {
    let image = corpus.image(index)?;
    let payload_bits = pipeline.payload_bits();
    let mut payload = BitVector::zeros(payload_bits);
    let mut rng = sigmark_core::rng::chacha(derive_seed(cfg.seed, PAYLOAD_TAG, index));
    for b in 0..payload_bits {
        payload.set(b, rng.gen()).unwrap();
    }

    let per_image_model = ChannelModel {
        seed: derive_seed(channel_model.seed, CHANNEL_TAG, index),
        ..channel_model.clone()
    };
    let mut session = per_image_model.session();
    let watermarked = embed_payload(&image, &payload, &mut session, pipeline)
        .map_err(|e| anyhow!("embed failed: {e}"))?;
    let distorted = distort_image(&watermarked, &mut session, &pipeline.grid, strength)
        .map_err(|e| anyhow!("distort failed: {e}"))?;

    let mut raw_errors = None;
    let mut corrected_errors = Vec::with_capacity(decoders.len());
    for decoder in decoders {
        let extraction = extract_payload(&distorted, &session, Some(decoder), pipeline)
            .map_err(|e| anyhow!("extract failed: {e}"))?;
        if raw_errors.is_none() {
            let raw = BitVector::concat(&extraction.per_patch_raw);
            raw_errors = Some(raw.hamming(&payload).unwrap() as u64);
        }
        corrected_errors.push(extraction.payload.hamming(&payload).unwrap() as u64);
    }

    Ok(ImageOutcome {
        raw_errors: raw_errors.unwrap_or(0),
        corrected_errors,
    })
}

fn run_corpus(
    cfg: &ExperimentConfig,
    corpus: &Corpus,
    channel_model: &ChannelModel,
    strength: Option<f64>,
    decoders: &[&LinearDecoderModel],
    pipeline: &PipelineConfig,
) -> Result<Vec<ImageOutcome>> {
    let count = corpus.count(cfg.images);
    (0..count)
        .into_par_iter()
        .map(|i| run_image(cfg, corpus, i, channel_model, strength, decoders, pipeline))
        .collect()
}

/// End-to-end zero-bit-error image rate, ERPA on versus off at matched
/// payload.
pub fn bench_zbir(cfg: &ExperimentConfig, threads: usize) -> Result<BenchOutput> {
    cfg.validate()?;
    let hash = config_hash(cfg);
    let steps = cfg.steps.unwrap_or(IMAGE_BENCH_STEPS);
    let channel_model = cfg.channel.to_model()?;
    let corpus = Corpus::from_config(cfg)?;
    let pipeline = PipelineConfig {
        grid: cfg.patch_grid()?,
        ..PipelineConfig::standard()
    };

    let (outcomes, images) = with_pool(threads, || -> Result<_> {
        let decoder = train_cell(
            cfg,
            PaintingScheme::canonical(),
            cfg.train_p,
            steps,
            derive_seed(cfg.seed, TRAIN_TAG, 0x5B19_0001),
        )
        .map_err(|e| anyhow!("decoder training failed: {e}"))?;
        let outcomes = run_corpus(cfg, &corpus, &channel_model, None, &[&decoder], &pipeline)?;
        let images = outcomes.len() as u64;
        Ok((outcomes, images))
    })??;

    let payload_bits = pipeline.payload_bits() as u64;
    let raw_error_bits: u64 = outcomes.iter().map(|o| o.raw_errors).sum();
    let corrected_error_bits: u64 = outcomes.iter().map(|o| o.corrected_errors[0]).sum();
    let zbir_off = outcomes.iter().filter(|o| o.raw_errors == 0).count() as u64;
    let zbir_on = outcomes
        .iter()
        .filter(|o| o.corrected_errors[0] == 0)
        .count() as u64;
    let raw_pos = outcomes.iter().filter(|o| o.raw_errors > 0).count() as u64;
    let improved = outcomes
        .iter()
        .filter(|o| o.raw_errors > 0 && o.corrected_errors[0] < o.raw_errors)
        .count() as u64;

    let raw_ber = raw_error_bits as f64 / (images * payload_bits) as f64;
    let corrected_ber = corrected_error_bits as f64 / (images * payload_bits) as f64;
    let zbir_on_rate = zbir_on as f64 / images as f64;
    let zbir_off_rate = zbir_off as f64 / images as f64;
    let improved_fraction = if raw_pos > 0 {
        improved as f64 / raw_pos as f64
    } else {
        1.0
    };
    let ci = |rate: f64| 1.96 * (rate * (1.0 - rate) / images as f64).sqrt();

    let columns = vec!["metric".to_string(), "value".to_string()];
    let rows = vec![
        vec!["images".into(), images.to_string()],
        vec!["payload bits".into(), payload_bits.to_string()],
        vec!["raw BER".into(), format!("{raw_ber:.6}")],
        vec!["corrected BER".into(), format!("{corrected_ber:.6}")],
        vec![
            "Z.B.I.R (ERPA on)".into(),
            format!("{zbir_on_rate:.4} +-{:.4}", ci(zbir_on_rate)),
        ],
        vec![
            "Z.B.I.R (ERPA off)".into(),
            format!("{zbir_off_rate:.4} +-{:.4}", ci(zbir_off_rate)),
        ],
        vec![
            "corrected < raw (of raw > 0)".into(),
            format!("{improved_fraction:.4}"),
        ],
    ];

    let title = "Zero-bit-error image rate, ERPA on vs off (matched payload)";
    Ok(BenchOutput {
        title: title.to_string(),
        config_hash: hash.clone(),
        table: render_table(title, &hash, &columns, &rows),
        json: json!({
            "experiment": "zbir",
            "config_hash": hash,
            "steps": steps,
            "images": images,
            "payload_bits": payload_bits,
            "raw_ber": raw_ber,
            "corrected_ber": corrected_ber,
            "zbir_on": zbir_on_rate,
            "zbir_off": zbir_off_rate,
            "zbir_on_count": zbir_on,
            "zbir_off_count": zbir_off,
            "raw_positive_images": raw_pos,
            "improved_images": improved,
            "improved_fraction": improved_fraction,
        }),
    })
}

/// Builds the training-distribution variants in table order.
fn traindist_variants(
    cfg: &ExperimentConfig,
    channel_model: &ChannelModel,
    steps: u64,
) -> Result<Vec<(String, LinearDecoderModel)>> {
    if channel_model.kind != ChannelKind::Simulated {
        bail!("the training-distribution bench needs a simulated channel");
    }
    let scheme = PaintingScheme::canonical();
    let r = channel_model.intrinsic_error_rate;
    let d = channel_model.distortion_rate;
    let ch_seed = channel_model.seed;
    let mut variants = Vec::new();

    // Known exact error: supervised by the actual channel process — the
    // painted intrinsic pattern observed through B-patch intrinsic noise
    // and distortion.
    {
        let train_cfg = TrainConfig {
            error_rate: 0.5, // unused by the sampler
            learning_rate: cfg.learning_rate,
            batch_size: cfg.batch_size,
            steps,
            seed: derive_seed(cfg.seed, TRAIN_TAG, 0x09AC_1E00),
            scheme: scheme.clone(),
        };
        let sc = scheme.clone();
        let (model, _) = train_with_sampler(&train_cfg, move |rng| {
            let origin_a = (rng.gen::<u32>(), rng.gen::<u32>());
            let origin_b = (rng.gen::<u32>(), rng.gen::<u32>());
            let payload: u64 = rng.gen();
            let e = intrinsic_pattern(ch_seed, origin_a, payload, r);
            let painted = sc.paint_word(e);
            let eta_b = intrinsic_pattern(ch_seed, origin_b, painted, r);
            let delta_b = sample_distortion_mask(rng, d);
            (e, painted ^ eta_b ^ delta_b)
        })
        .map_err(|e| anyhow!("oracle training failed: {e}"))?;
        variants.push(("known exact error".to_string(), model));
    }

    // Known error probability: the true marginal rates, but independent
    // uniform positions (no severity structure).
    {
        let train_cfg = TrainConfig {
            error_rate: 0.5,
            learning_rate: cfg.learning_rate,
            batch_size: cfg.batch_size,
            steps,
            seed: derive_seed(cfg.seed, TRAIN_TAG, 0x6E0B_4B00),
            scheme: scheme.clone(),
        };
        let sc = scheme.clone();
        let e_dist = Bernoulli::new(r).map_err(|_| anyhow!("bad intrinsic rate"))?;
        let noise_rate = r + d - 2.0 * r * d;
        let n_dist = Bernoulli::new(noise_rate).map_err(|_| anyhow!("bad noise rate"))?;
        let (model, _) = train_with_sampler(&train_cfg, move |rng| {
            let mut e = 0u64;
            let mut noise = 0u64;
            for bit in 0..64 {
                if e_dist.sample(rng) {
                    e |= 1 << bit;
                }
            }
            for bit in 0..64 {
                if n_dist.sample(rng) {
                    noise |= 1 << bit;
                }
            }
            (e, sc.paint_word(e) ^ noise)
        })
        .map_err(|e| anyhow!("known-probability training failed: {e}"))?;
        variants.push(("known error probability".to_string(), model));
    }

    for &p in &cfg.train_p_grid {
        let cell_seed = derive_seed(cfg.seed, TRAIN_TAG, 0xBE00_0000_0000_0000 | (p * 1e6) as u64);
        let model = train_cell(cfg, scheme.clone(), p, steps, cell_seed)
            .map_err(|e| anyhow!("training at p={p} failed: {e}"))?;
        variants.push((format!("bernoulli(p={p})"), model));
    }

    Ok(variants)
}

/// Impact of the decoder's training distribution on full-framework
/// recovery.
pub fn bench_train_distribution(cfg: &ExperimentConfig, threads: usize) -> Result<BenchOutput> {
    cfg.validate()?;
    let hash = config_hash(cfg);
    let steps = cfg.steps.unwrap_or(IMAGE_BENCH_STEPS);
    let channel_model = cfg.channel.to_model()?;
    let corpus = Corpus::from_config(cfg)?;
    let pipeline = PipelineConfig {
        grid: cfg.patch_grid()?,
        ..PipelineConfig::standard()
    };

    let (variants, outcomes) = with_pool(threads, || -> Result<_> {
        let variants = traindist_variants(cfg, &channel_model, steps)?;
        let refs: Vec<&LinearDecoderModel> = variants.iter().map(|(_, m)| m).collect();
        let outcomes = run_corpus(cfg, &corpus, &channel_model, None, &refs, &pipeline)?;
        Ok((variants, outcomes))
    })??;

    let images = outcomes.len() as u64;
    let payload_bits = pipeline.payload_bits() as u64;
    let columns = vec![
        "trained distribution".to_string(),
        "Z.B.I.R(%)".to_string(),
        "BER(%)".to_string(),
    ];
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for (v, (name, _)) in variants.iter().enumerate() {
        let exact = outcomes
            .iter()
            .filter(|o| o.corrected_errors[v] == 0)
            .count() as u64;
        let errs: u64 = outcomes.iter().map(|o| o.corrected_errors[v]).sum();
        let zbir = exact as f64 / images as f64;
        let ber = errs as f64 / (images * payload_bits) as f64;
        let ci = 1.96 * (zbir * (1.0 - zbir) / images as f64).sqrt();
        rows.push(vec![
            name.clone(),
            format!("{:.2} +-{:.2}", zbir * 100.0, ci * 100.0),
            format!("{:.4}", ber * 100.0),
        ]);
        json_rows.push(json!({
            "variant": name,
            "zbir": zbir,
            "zbir_count": exact,
            "ber": ber,
            "ci95": ci,
        }));
    }

    let title = "Decoder training distribution vs framework recovery";
    Ok(BenchOutput {
        title: title.to_string(),
        config_hash: hash.clone(),
        table: render_table(title, &hash, &columns, &rows),
        json: json!({
            "experiment": "traindist",
            "config_hash": hash,
            "steps": steps,
            "images": images,
            "variants": json_rows,
        }),
    })
}

/// Z.B.I.R curves across distortion strengths, ERPA on vs off.
pub fn simulate_zbir(cfg: &ExperimentConfig, threads: usize) -> Result<BenchOutput> {
    cfg.validate()?;
    let hash = config_hash(cfg);
    let steps = cfg.steps.unwrap_or(IMAGE_BENCH_STEPS);
    let channel_model = cfg.channel.to_model()?;
    let corpus = Corpus::from_config(cfg)?;
    let pipeline = PipelineConfig {
        grid: cfg.patch_grid()?,
        ..PipelineConfig::standard()
    };

    let sweeps = with_pool(threads, || -> Result<_> {
        let decoder = train_cell(
            cfg,
            PaintingScheme::canonical(),
            cfg.train_p,
            steps,
            derive_seed(cfg.seed, TRAIN_TAG, 0x5B19_0002),
        )
        .map_err(|e| anyhow!("decoder training failed: {e}"))?;
        let mut sweeps = Vec::new();
        for &strength in &cfg.strengths {
            let outcomes = run_corpus(
                cfg,
                &corpus,
                &channel_model,
                Some(strength),
                &[&decoder],
                &pipeline,
            )?;
            sweeps.push((strength, outcomes));
        }
        Ok(sweeps)
    })??;

    let payload_bits = pipeline.payload_bits() as u64;
    let columns = vec![
        "strength".to_string(),
        "Z.B.I.R on".to_string(),
        "Z.B.I.R off".to_string(),
        "raw BER".to_string(),
        "corrected BER".to_string(),
    ];
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for (strength, outcomes) in &sweeps {
        let images = outcomes.len() as u64;
        let on = outcomes.iter().filter(|o| o.corrected_errors[0] == 0).count() as u64;
        let off = outcomes.iter().filter(|o| o.raw_errors == 0).count() as u64;
        let raw: u64 = outcomes.iter().map(|o| o.raw_errors).sum();
        let corrected: u64 = outcomes.iter().map(|o| o.corrected_errors[0]).sum();
        let raw_ber = raw as f64 / (images * payload_bits) as f64;
        let corr_ber = corrected as f64 / (images * payload_bits) as f64;
        rows.push(vec![
            format!("{strength}"),
            format!("{:.4}", on as f64 / images as f64),
            format!("{:.4}", off as f64 / images as f64),
            format!("{raw_ber:.6}"),
            format!("{corr_ber:.6}"),
        ]);
        json_rows.push(json!({
            "strength": strength,
            "zbir_on": on as f64 / images as f64,
            "zbir_off": off as f64 / images as f64,
            "raw_ber": raw_ber,
            "corrected_ber": corr_ber,
            "images": images,
        }));
    }

    let title = "Z.B.I.R vs distortion strength (ERPA on / off)";
    Ok(BenchOutput {
        title: title.to_string(),
        config_hash: hash.clone(),
        table: render_table(title, &hash, &columns, &rows),
        json: json!({
            "experiment": "simulate-zbir",
            "config_hash": hash,
            "steps": steps,
            "rows": json_rows,
        }),
    })
}
