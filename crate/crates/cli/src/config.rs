// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! Experiment and channel configuration (TOML).

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use sigmark_core::channel::{
    ChannelKind, ChannelModel, DEFAULT_DISTORTION_RATE, DEFAULT_INTRINSIC_ERROR_RATE,
};
use sigmark_core::framework::PatchGrid;
use sigmark_core::painting::{PaintingScheme, SchemeKind};

/// Channel settings as they appear in config files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelConfig {
    pub kind: String,
    pub intrinsic_error_rate: f64,
    pub distortion_rate: f64,
    pub seed: u64,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        ChannelConfig {
            kind: "simulated".into(),
            intrinsic_error_rate: DEFAULT_INTRINSIC_ERROR_RATE,
            distortion_rate: DEFAULT_DISTORTION_RATE,
            seed: 7,
        }
    }
}

impl ChannelConfig {
    pub fn lsb() -> Self {
        ChannelConfig {
            kind: "lsb".into(),
            intrinsic_error_rate: 0.0,
            distortion_rate: 0.0,
            seed: 7,
        }
    }

    pub fn to_model(&self) -> Result<ChannelModel> {
        match ChannelKind::from_label(&self.kind) {
            Some(ChannelKind::Lsb) => {
                if self.intrinsic_error_rate != 0.0 || self.distortion_rate != 0.0 {
                    bail!("lsb channels have zero intrinsic/distortion rates");
                }
                Ok(ChannelModel::lsb(self.seed))
            }
            Some(ChannelKind::Simulated) => ChannelModel::simulated(
                self.intrinsic_error_rate,
                self.distortion_rate,
                self.seed,
            )
            .map_err(|e| anyhow!("invalid channel config: {e}")),
            None => bail!("unknown channel kind `{}`", self.kind),
        }
    }

    /// Loads a standalone channel config file.
    pub fn load(path: &Path) -> Result<ChannelConfig> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Experiment harness configuration, shared by all benches; each bench
/// reads the fields it needs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Master seed; every per-task seed derives from it.
    pub seed: u64,
    /// Monte Carlo decode trials per table cell.
    pub trials: u64,
    /// Corpus size for image-level benches.
    pub images: u64,
    /// Synthetic corpus image side length.
    pub image_size: u32,
    /// Seed for the synthetic corpus.
    pub corpus_seed: u64,
    /// Directory of PNGs to use instead of the synthetic corpus.
    pub corpus_dir: Option<PathBuf>,
    /// `8x8` or `4x4`.
    pub grid: String,
    /// Painting densities for the density sweep.
    pub densities: Vec<usize>,
    /// Bernoulli noise rates for decoder benches.
    pub noise_grid: Vec<f64>,
    /// Training rate for the zbir bench decoder.
    pub train_p: f64,
    /// Training rates for the training-distribution bench.
    pub train_p_grid: Vec<f64>,
    /// SGD steps; unset uses the per-bench default (50k for decoder
    /// tables, 150k for image-level benches, which need the oracle
    /// regime fully converged).
    pub steps: Option<u64>,
    pub learning_rate: f64,
    pub batch_size: usize,
    /// Distortion strengths swept by `simulate-zbir`.
    pub strengths: Vec<f64>,
    pub channel: ChannelConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            trials: 100_000,
            images: 500,
            image_size: 512,
            corpus_seed: 2026,
            corpus_dir: None,
            grid: "8x8".into(),
            densities: vec![2, 3, 4, 5, 6, 7],
            noise_grid: vec![0.01, 0.02, 0.03, 0.05, 0.1, 0.15],
            train_p: 0.07,
            train_p_grid: vec![0.01, 0.05, 0.07, 0.1],
            steps: None,
            learning_rate: 1e-2,
            batch_size: 64,
            strengths: vec![0.0, 0.001, 0.002, 0.005, 0.01, 0.02],
            channel: ChannelConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg: ExperimentConfig =
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.images == 0 {
            bail!("trials and images must be at least 1");
        }
        for &p in self.noise_grid.iter().chain(&self.train_p_grid) {
            if !(p > 0.0 && p < 1.0) {
                bail!("noise and training rates must lie in (0, 1), got {p}");
            }
        }
        for &s in &self.strengths {
            if !(0.0..1.0).contains(&s) {
                bail!("distortion strengths must lie in [0, 1), got {s}");
            }
        }
        self.patch_grid()?;
        self.channel.to_model()?;
        Ok(())
    }

    pub fn patch_grid(&self) -> Result<PatchGrid> {
        parse_grid(&self.grid)
    }

    /// The canonical serialized form used for config hashing.
    pub fn canonical_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

pub fn parse_grid(s: &str) -> Result<PatchGrid> {
    let (r, c) = s
        .split_once('x')
        .ok_or_else(|| anyhow!("grid must look like `8x8`"))?;
    let grid = PatchGrid::new(r.trim().parse()?, c.trim().parse()?)
        .map_err(|e| anyhow!("bad grid: {e}"))?;
    Ok(grid)
}

pub fn parse_scheme(label: &str, density: usize) -> Result<PaintingScheme> {
    let kind = SchemeKind::from_label(label).ok_or_else(|| anyhow!("unknown scheme `{label}`"))?;
    let scheme = match kind {
        SchemeKind::Dcss => PaintingScheme::dcss_prefix(density),
        SchemeKind::Nearby => PaintingScheme::nearby(density),
    };
    scheme.map_err(|e| anyhow!("bad scheme: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.patch_grid().unwrap().patch_count(), 64);
    }

    #[test]
    fn toml_round_trip() {
        let cfg = ExperimentConfig::default();
        let text = cfg.canonical_toml();
        let back: ExperimentConfig = toml::from_str(&text).unwrap();
        assert_eq!(back.canonical_toml(), text);
    }

    #[test]
    fn partial_configs_fill_defaults() {
        let cfg: ExperimentConfig = toml::from_str(
            r#"
images = 20
[channel]
kind = "lsb"
intrinsic_error_rate = 0.0
distortion_rate = 0.0
"#,
        )
        .unwrap();
        assert_eq!(cfg.images, 20);
        assert_eq!(cfg.trials, 100_000);
        assert_eq!(cfg.channel.kind, "lsb");
    }

    #[test]
    fn bad_values_are_rejected() {
        let cfg: ExperimentConfig = toml::from_str("noise_grid = [0.0]").unwrap();
        assert!(cfg.validate().is_err());
        assert!(toml::from_str::<ExperimentConfig>("unknown_field = 1").is_err());
        assert!(parse_grid("9") .is_err());
    }
}
