// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! Bit-exact 64-bit DCT perceptual hash.
//!
//! The pipeline is pinned stage by stage so independent implementations
//! can match it bit for bit:
//!
//! 1. Grayscale via BT.601 luma: `0.299 R + 0.587 G + 0.114 B`, f64.
//! 2. Bilinear resize to 32x32. Source coordinates map through
//!    `(i + 0.5) * dim / 32 - 0.5`, clamped to the image; interpolation
//!    uses the two-stage lerp form `a + t * (b - a)`, which reproduces
//!    constant inputs exactly.
//! 3. 2D DCT-II, rows then columns, summed in ascending index order.
//!    For nonzero frequencies the accumulation subtracts the first sample
//!    before weighting (`sum (f[x] - f[0]) cos(...)`) — algebraically the
//!    same coefficient, but constant inputs then yield exactly zero AC
//!    coefficients instead of rounding residue.
//! 4. Keep the top-left 8x8 coefficient block.
//! 5. Exclude DC; the median of the remaining 63 values is the 32nd order
//!    statistic (no averaging).
//! 6. Bit `k = 8u + v` (row-major) is set iff the coefficient strictly
//!    exceeds the median; the DC bit is fixed to 0.
//!
//! Hashes print as 16 lowercase hex characters.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{BitError, BitVector};
use crate::image::PixelImage;

/// Hash side of the coefficient block.
const BLOCK: usize = 8;
/// Resize target.
const RESIZE: usize = 32;

/// Errors from hashing degenerate images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhashError {
    /// Both dimensions must be at least 8 pixels.
    ImageTooSmall { width: u32, height: u32 },
    Bits(BitError),
}

impl fmt::Display for PhashError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhashError::ImageTooSmall { width, height } => {
                write!(f, "image {width}x{height} too small to hash (need 8x8)")
            }
            PhashError::Bits(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PhashError {}

impl From<BitError> for PhashError {
    fn from(e: BitError) -> Self {
        PhashError::Bits(e)
    }
}

/// A 64-bit content fingerprint, stable under benign visual changes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerceptualHash {
    bits: BitVector,
}

impl PerceptualHash {
    /// Wraps a 64-bit vector as a hash value.
    pub fn from_bits(bits: BitVector) -> Result<Self, PhashError> {
        if bits.len() != 64 {
            return Err(PhashError::Bits(BitError::LengthMismatch {
                left: bits.len(),
                right: 64,
            }));
        }
        Ok(PerceptualHash { bits })
    }

    pub fn from_value(value: u64) -> Self {
        PerceptualHash {
            bits: BitVector::from_word(value),
        }
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn value(&self) -> u64 {
        self.bits.as_word().unwrap()
    }

    pub fn to_hex(&self) -> String {
        self.bits.to_hex().unwrap()
    }

    pub fn from_hex(s: &str) -> Result<Self, PhashError> {
        let bits = BitVector::from_hex(s)?;
        PerceptualHash::from_bits(bits)
    }

    /// The 8 hash bytes, big-endian, as signed by the signature scheme.
    pub fn to_bytes(&self) -> [u8; 8] {
        self.value().to_be_bytes()
    }

    pub fn hamming(&self, other: &PerceptualHash) -> u32 {
        hamming(self, other)
    }
}

impl fmt::Display for PerceptualHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

/// Hamming distance between two hashes, in `[0, 64]`.
pub fn hamming(a: &PerceptualHash, b: &PerceptualHash) -> u32 {
    (a.value() ^ b.value()).count_ones()
}

/// Computes the perceptual hash of an image.
pub fn phash(image: &PixelImage) -> Result<PerceptualHash, PhashError> {
    if image.width() < 8 || image.height() < 8 {
        return Err(PhashError::ImageTooSmall {
            width: image.width(),
            height: image.height(),
        });
    }

    let luma = luma_plane(image);
    let small = resize_bilinear(&luma, image.width() as usize, image.height() as usize);
    let coeffs = dct_block(&small);

    // Median of the 63 AC values: the 32nd order statistic.
    let mut ac: Vec<f64> = coeffs[1..].to_vec();
    ac.sort_unstable_by(f64::total_cmp);
    let median = ac[31];

    let mut value = 0u64;
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        if c > median {
            value |= 1 << k;
        }
    }
    Ok(PerceptualHash::from_value(value))
}

fn luma_plane(image: &PixelImage) -> Vec<f64> {
    let mut out = Vec::with_capacity(image.width() as usize * image.height() as usize);
    for px in image.data().chunks_exact(3) {
        out.push(0.299 * px[0] as f64 + 0.587 * px[1] as f64 + 0.114 * px[2] as f64);
    }
    out
}

#[inline]
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + t * (b - a)
}

/// Maps output index `i` to a clamped source coordinate and its split.
#[inline]
fn source_coord(i: usize, dim: usize) -> (usize, usize, f64) {
    let scale = dim as f64 / RESIZE as f64;
    let mut s = (i as f64 + 0.5) * scale - 0.5;
    if s < 0.0 {
        s = 0.0;
    }
    let max = (dim - 1) as f64;
    if s > max {
        s = max;
    }
    let lo = s as usize;
    let hi = (lo + 1).min(dim - 1);
    (lo, hi, s - lo as f64)
}

fn resize_bilinear(luma: &[f64], width: usize, height: usize) -> Vec<f64> {
    let mut out = vec![0.0; RESIZE * RESIZE];
    for i in 0..RESIZE {
        let (y0, y1, dy) = source_coord(i, height);
        for j in 0..RESIZE {
            let (x0, x1, dx) = source_coord(j, width);
            let top = lerp(luma[y0 * width + x0], luma[y0 * width + x1], dx);
            let bot = lerp(luma[y1 * width + x0], luma[y1 * width + x1], dx);
            out[i * RESIZE + j] = lerp(top, bot, dy);
        }
    }
    out
}

/// Cosine table: `table[k][x] = cos(pi * (2x + 1) * k / 64)`.
fn cos_table() -> [[f64; RESIZE]; BLOCK] {
    let mut table = [[0.0; RESIZE]; BLOCK];
    for (k, row) in table.iter_mut().enumerate() {
        for (x, cell) in row.iter_mut().enumerate() {
            *cell = libm::cos(
                core::f64::consts::PI * (2.0 * x as f64 + 1.0) * k as f64
                    / (2.0 * RESIZE as f64),
            );
        }
    }
    table
}

/// Top-left 8x8 block of the 2D DCT-II of a 32x32 plane, row-major.
fn dct_block(plane: &[f64]) -> [f64; BLOCK * BLOCK] {
    let table = cos_table();

    // Row pass: G[y][v] for v < 8.
    let mut rows = [[0.0f64; BLOCK]; RESIZE];
    for y in 0..RESIZE {
        let row = &plane[y * RESIZE..(y + 1) * RESIZE];
        for v in 0..BLOCK {
            let mut acc = 0.0;
            if v == 0 {
                for &f in row.iter() {
                    acc += f;
                }
            } else {
                // Anchor-differenced accumulation: exact zeros on
                // constant input (see module docs).
                let anchor = row[0];
                for (x, &f) in row.iter().enumerate() {
                    acc += (f - anchor) * table[v][x];
                }
            }
            rows[y][v] = acc;
        }
    }

    // Column pass: F[u][v] for u < 8.
    let mut out = [0.0f64; BLOCK * BLOCK];
    for v in 0..BLOCK {
        for u in 0..BLOCK {
            let mut acc = 0.0;
            if u == 0 {
                for row in rows.iter() {
                    acc += row[v];
                }
            } else {
                let anchor = rows[0][v];
                for (y, row) in rows.iter().enumerate() {
                    acc += (row[v] - anchor) * table[u][y];
                }
            }
            out[u * BLOCK + v] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::chacha;
    use rand::Rng;

    fn uniform_image(value: u8) -> PixelImage {
        let mut img = PixelImage::new(64, 64).unwrap();
        for r in 0..64 {
            for c in 0..64 {
                img.set(r, c, [value, value, value]);
            }
        }
        img
    }

    fn random_image(seed: u64, w: u32, h: u32) -> PixelImage {
        let mut rng = chacha(seed);
        let mut img = PixelImage::new(w, h).unwrap();
        for r in 0..h {
            for c in 0..w {
                img.set(r, c, [rng.gen(), rng.gen(), rng.gen()]);
            }
        }
        img
    }

    #[test]
    fn identical_images_hash_identically() {
        let img = random_image(1, 100, 80);
        assert_eq!(phash(&img).unwrap(), phash(&img.clone()).unwrap());
    }

    #[test]
    fn uniform_image_hashes_to_zero() {
        for v in [0u8, 77, 128, 255] {
            let h = phash(&uniform_image(v)).unwrap();
            assert_eq!(h.value(), 0, "gray level {v}");
            assert_eq!(h.to_hex(), "0000000000000000");
        }
    }

    #[test]
    fn small_images_are_rejected() {
        let img = PixelImage::new(7, 64).unwrap();
        assert!(matches!(
            phash(&img),
            Err(PhashError::ImageTooSmall { .. })
        ));
    }

    #[test]
    fn hamming_basics_and_metric_axioms() {
        let a = PerceptualHash::from_value(0xF0F0_1234_5678_9ABC);
        assert_eq!(hamming(&a, &a), 0);
        let not_a = PerceptualHash::from_value(!a.value());
        assert_eq!(hamming(&a, &not_a), 64);

        let mut rng = chacha(5);
        for _ in 0..100 {
            let x = PerceptualHash::from_value(rng.gen());
            let y = PerceptualHash::from_value(rng.gen());
            let z = PerceptualHash::from_value(rng.gen());
            assert_eq!(hamming(&x, &y), hamming(&y, &x));
            assert!(hamming(&x, &z) <= hamming(&x, &y) + hamming(&y, &z));
        }
    }

    #[test]
    fn hex_round_trip() {
        let h = PerceptualHash::from_value(0x0123_4567_89ab_cdef);
        assert_eq!(h.to_hex(), "0123456789abcdef");
        assert_eq!(PerceptualHash::from_hex(&h.to_hex()).unwrap(), h);
    }

    #[test]
    fn dc_bit_is_always_zero() {
        for seed in 0..20 {
            let h = phash(&random_image(seed, 96, 96)).unwrap();
            assert!(!h.bits().get(0).unwrap());
        }
    }

    #[test]
    fn resize_of_constant_plane_is_exact() {
        let luma = vec![123.456; 100 * 60];
        let small = resize_bilinear(&luma, 100, 60);
        assert!(small.iter().all(|&v| v == 123.456));
    }
}
