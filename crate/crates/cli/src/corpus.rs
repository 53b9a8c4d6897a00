// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! Image corpora for benches: seeded synthetic images by default, or a
//! directory of PNGs.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};

use sigmark_core::image::PixelImage;
use sigmark_core::synth::{corpus_image_seed, synth_image};

use crate::config::ExperimentConfig;
use crate::pngio::load_png;

/// A deterministic, indexable image source.
pub enum Corpus {
    Synthetic { seed: u64, size: u32 },
    Directory(Vec<PathBuf>),
}

impl Corpus {
    pub fn from_config(cfg: &ExperimentConfig) -> Result<Corpus> {
        match &cfg.corpus_dir {
            None => Ok(Corpus::Synthetic {
                seed: cfg.corpus_seed,
                size: cfg.image_size,
            }),
            Some(dir) => {
                let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
                    .with_context(|| format!("reading corpus dir {}", dir.display()))?
                    .filter_map(|entry| entry.ok().map(|e| e.path()))
                    .filter(|p| {
                        p.extension()
                            .map(|ext| ext.eq_ignore_ascii_case("png"))
                            .unwrap_or(false)
                    })
                    .collect();
                files.sort();
                if files.is_empty() {
                    bail!("no PNG files in {}", dir.display());
                }
                Ok(Corpus::Directory(files))
            }
        }
    }

    /// Number of images a run over `requested` indices will see.
    pub fn count(&self, requested: u64) -> u64 {
        match self {
            Corpus::Synthetic { .. } => requested,
            Corpus::Directory(files) => requested.min(files.len() as u64),
        }
    }

    pub fn image(&self, index: u64) -> Result<PixelImage> {
        match self {
            Corpus::Synthetic { seed, size } => {
                Ok(synth_image(corpus_image_seed(*seed, index), *size, *size))
            }
            Corpus::Directory(files) => load_png(&files[index as usize % files.len()]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pngio::save_png;

    #[test]
    fn synthetic_corpus_is_deterministic() {
        let cfg = ExperimentConfig::default();
        let corpus = Corpus::from_config(&cfg).unwrap();
        assert_eq!(corpus.count(10), 10);
        assert_eq!(corpus.image(3).unwrap(), corpus.image(3).unwrap());
        assert_ne!(corpus.image(3).unwrap(), corpus.image(4).unwrap());
    }

    #[test]
    fn directory_corpus_lists_pngs_sorted() {
        let dir = tempfile::tempdir().unwrap();
        for name in ["b.png", "a.png"] {
            save_png(&dir.path().join(name), &synth_image(1, 32, 32)).unwrap();
        }
        std::fs::write(dir.path().join("ignored.txt"), "x").unwrap();
        let cfg = ExperimentConfig {
            corpus_dir: Some(dir.path().to_path_buf()),
            ..Default::default()
        };
        let corpus = Corpus::from_config(&cfg).unwrap();
        assert_eq!(corpus.count(10), 2);
        match &corpus {
            Corpus::Directory(files) => {
                assert!(files[0].ends_with("a.png"));
            }
            _ => panic!("expected directory corpus"),
        }
    }
}
