// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! `sigmark`: embed and verify perceptual-hash-bound signatures in
//! images, train painting decoders, search DCSS sequences, and run the
//! experiment benches.
//!
//! Exit codes: 0 success (or verified), 1 unverified, 2 usage or
//! operational error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use sigmark_cli::bench::{self, BenchOutput};
use sigmark_cli::config::{parse_grid, parse_scheme, ChannelConfig, ExperimentConfig};
use sigmark_cli::formats;
use sigmark_cli::pngio::{load_png, save_png};

use sigmark_core::channel::{ChannelKind, ChannelModel, ChannelSession};
use sigmark_core::dcss::{search_maximal_dcss, SearchLimits};
use sigmark_core::decoder::{train, TrainConfig};
use sigmark_core::framework::{embed_signature, extract_and_verify, PipelineConfig};
use sigmark_core::signature::keygen;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Human-readable summaries.
    Text,
    /// `key: value` documents consumable by other tools.
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "sigmark", version, about = "Error-aware image signature toolkit")]
struct Cli {
    /// Master seed for anything stochastic this invocation runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for benches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a deterministic RSA-2048 key pair.
    Keygen {
        /// Key seed; defaults to the global --seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output path for the keypair file; `<out>.pub` gets the public half.
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a painting decoder and write its model file.
    TrainDecoder {
        /// Bernoulli error/noise rate in (0, 1).
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1e-2)]
        lr: f64,
        #[arg(long, default_value_t = 64)]
        batch: usize,
        #[arg(long, default_value_t = 50_000)]
        steps: u64,
        /// Painting scheme: dcss or nearby.
        #[arg(long, default_value = "dcss")]
        scheme: String,
        /// Painting density (offsets per error bit).
        #[arg(long, default_value_t = 7)]
        density: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sign an image's perceptual hash and embed the signature.
    Embed {
        #[arg(long)]
        image: PathBuf,
        /// Keypair file (needs the secret half).
        #[arg(long)]
        key: PathBuf,
        /// Optional decoder model: embed then self-verify, warning on failure.
        #[arg(long)]
        decoder: Option<PathBuf>,
        #[arg(long, default_value = "8x8")]
        grid: String,
        /// Channel config (TOML); defaults to the exact LSB channel.
        #[arg(long)]
        channel_config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract, correct, and verify a watermarked image.
    Verify {
        #[arg(long)]
        image: PathBuf,
        /// Public key (or keypair) file.
        #[arg(long)]
        pubkey: PathBuf,
        #[arg(long)]
        decoder: PathBuf,
        #[arg(long, default_value = "8x8")]
        grid: String,
        #[arg(long)]
        channel_config: Option<PathBuf>,
        /// Also try hashes within Hamming distance 2 on failure.
        #[arg(long)]
        hamming_fallback: bool,
        /// Write the structured report here as well.
        #[arg(long)]
        report_out: Option<PathBuf>,
    },
    /// Exhaustive search for maximum-cardinality DCSS sequences.
    DcssSearch {
        #[arg(long)]
        n: u32,
        /// Keep at most this many maximal sequences.
        #[arg(long, default_value_t = 16)]
        limit: usize,
        /// Wall-clock budget in seconds.
        #[arg(long, default_value_t = 60.0)]
        time_budget_secs: f64,
    },
    /// Run an experiment bench.
    Bench {
        #[command(subcommand)]
        which: BenchCommand,
    },
    /// Sweep distortion strengths and emit Z.B.I.R curves.
    SimulateZbir {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Painting density sweep (decoder bit accuracy).
    Painting {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DCSS vs NearBy painting comparison.
    Permutation {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decoder training-distribution comparison over the corpus.
    Traindist {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// End-to-end Z.B.I.R, ERPA on vs off.
    Zbir {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load_experiment_config(path: &Option<PathBuf>, seed: u64) -> Result<ExperimentConfig> {
    let mut cfg = match path {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    // An explicit CLI seed overrides the config file.
    if seed != 0 {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit_bench(output: BenchOutput, out: &Option<PathBuf>) -> Result<()> {
    print!("{}", output.table);
    if let Some(base) = out {
        let txt = base.with_extension("txt");
        let json = base.with_extension("json");
        std::fs::write(&txt, &output.table)
            .with_context(|| format!("writing {}", txt.display()))?;
        std::fs::write(&json, serde_json::to_string_pretty(&output.json)?)
            .with_context(|| format!("writing {}", json.display()))?;
        eprintln!("wrote {} and {}", txt.display(), json.display());
    }
    Ok(())
}

fn channel_from(path: &Option<PathBuf>) -> Result<ChannelModel> {
    let cfg = match path {
        Some(p) => ChannelConfig::load(p)?,
        None => ChannelConfig::lsb(),
    };
    cfg.to_model()
}

fn session_sidecar(image_path: &Path) -> PathBuf {
    let mut name = image_path.file_name().unwrap_or_default().to_os_string();
    name.push(".session");
    image_path.with_file_name(name)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Keygen { seed, out } => {
            let pair = keygen(seed.unwrap_or(cli.seed)).map_err(|e| anyhow!("keygen: {e}"))?;
            formats::write_keypair(&out, &pair)?;
            let mut pub_name = out.file_name().unwrap_or_default().to_os_string();
            pub_name.push(".pub");
            let pub_path = out.with_file_name(pub_name);
            formats::write_public_key(&pub_path, &pair.public)?;
            println!("wrote {} and {}", out.display(), pub_path.display());
            Ok(ExitCode::SUCCESS)
        }

        Command::TrainDecoder {
            p,
            lr,
            batch,
            steps,
            scheme,
            density,
            out,
        } => {
            let scheme = parse_scheme(&scheme, density)?;
            let config = TrainConfig {
                error_rate: p,
                learning_rate: lr,
                batch_size: batch,
                steps,
                seed: cli.seed,
                scheme,
            };
            let (model, report) = train(&config).map_err(|e| anyhow!("training: {e}"))?;
            for (step, loss) in &report.loss_log {
                eprintln!("step {step:>7}  loss {loss:.6}");
            }
            formats::write_model(&out, &model)?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }

        Command::Embed {
            image,
            key,
            decoder,
            grid,
            channel_config,
            out,
        } => {
            let img = load_png(&image)?;
            let pair = formats::read_keypair(&key)?;
            let channel_model = channel_from(&channel_config)?;
            let cfg = PipelineConfig {
                grid: parse_grid(&grid)?,
                ..PipelineConfig::standard()
            };
            let mut session = channel_model.session();
            let report = embed_signature(&img, &pair.secret, &mut session, &cfg)
                .map_err(|e| anyhow!("embed: {e}"))?;
            save_png(&out, &report.image)?;
            if channel_model.kind == ChannelKind::Simulated {
                let sidecar = session_sidecar(&out);
                formats::write_session(&sidecar, &channel_model, &session)?;
                eprintln!("wrote channel session {}", sidecar.display());
            }
            if !report.phash_stable() {
                eprintln!(
                    "warning: embedding perturbed the perceptual hash \
                     ({} -> {}); verification of this output will fail",
                    report.original_phash, report.watermarked_phash
                );
            }
            if let Some(decoder_path) = decoder {
                let model = formats::read_model(&decoder_path)?;
                let check =
                    extract_and_verify(&report.image, &pair.public, &session, Some(&model), &cfg)
                        .map_err(|e| anyhow!("self-check: {e}"))?;
                if !check.verified {
                    eprintln!("warning: self-check failed; the output does not verify");
                }
            }
            println!("signature: {}", report.signature.to_hex());
            println!("phash: {}", report.original_phash);
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            image,
            pubkey,
            decoder,
            grid,
            channel_config,
            hamming_fallback,
            report_out,
        } => {
            let img = load_png(&image)?;
            let public = formats::read_public_key(&pubkey)?;
            let model = formats::read_model(&decoder)?;
            let cfg = PipelineConfig {
                grid: parse_grid(&grid)?,
                hamming_fallback,
                ..PipelineConfig::standard()
            };
            // Simulated channels need the session written at embed time.
            let channel_model = channel_from(&channel_config)?;
            let session: ChannelSession = match channel_model.kind {
                ChannelKind::Lsb => channel_model.session(),
                ChannelKind::Simulated => {
                    let sidecar = session_sidecar(&image);
                    let (_, session) = formats::read_session(&sidecar).with_context(|| {
                        format!(
                            "simulated channel requires the session sidecar {}",
                            sidecar.display()
                        )
                    })?;
                    session
                }
            };
            let report = extract_and_verify(&img, &public, &session, Some(&model), &cfg)
                .map_err(|e| anyhow!("verify: {e}"))?;

            let structured = formats::render_report(&report);
            match cli.format {
                OutputFormat::Text => {
                    println!("verified: {}", report.verified);
                    println!("phash: {}", report.phash);
                    for note in &report.notes {
                        println!("note: {note}");
                    }
                }
                OutputFormat::Structured => print!("{structured}"),
            }
            if let Some(path) = report_out {
                std::fs::write(&path, &structured)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if report.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::DcssSearch {
            n,
            limit,
            time_budget_secs,
        } => {
            let limits = SearchLimits {
                max_results: limit,
                node_budget: None,
            };
            let deadline = Instant::now() + Duration::from_secs_f64(time_budget_secs);
            let outcome = search_maximal_dcss(n, &limits, || Instant::now() >= deadline)
                .map_err(|e| anyhow!("search: {e}"))?;
            for seq in &outcome.sequences {
                println!("{seq}");
            }
            println!(
                "maximum cardinality: {} ({} sequence{}{})",
                outcome.max_size,
                outcome.sequences.len(),
                if outcome.sequences.len() == 1 { "" } else { "s" },
                if outcome.hit_result_cap { ", capped" } else { "" },
            );
            if outcome.complete {
                println!(
                    "search exhaustive: no DCSS of size {} exists for n={n} \
                     ({} nodes visited)",
                    outcome.max_size + 1,
                    outcome.nodes_visited
                );
            } else {
                println!(
                    "search inconclusive: budget exhausted after {} nodes; \
                     sizes above {} were not ruled out",
                    outcome.nodes_visited, outcome.max_size
                );
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Bench { which } => {
            let (config, out, runner): (_, _, fn(&ExperimentConfig, usize) -> Result<BenchOutput>) =
                match which {
                    BenchCommand::Painting { config, out } => {
                        (config, out, bench::bench_painting_density)
                    }
                    BenchCommand::Permutation { config, out } => {
                        (config, out, bench::bench_permutation)
                    }
                    BenchCommand::Traindist { config, out } => {
                        (config, out, bench::bench_train_distribution)
                    }
                    BenchCommand::Zbir { config, out } => (config, out, bench::bench_zbir),
                };
            let cfg = load_experiment_config(&config, cli.seed)?;
            let output = runner(&cfg, cli.threads)?;
            emit_bench(output, &out)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::SimulateZbir { config, out } => {
            let cfg = load_experiment_config(&config, cli.seed)?;
            let output = bench::simulate_zbir(&cfg, cli.threads)?;
            emit_bench(output, &out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
