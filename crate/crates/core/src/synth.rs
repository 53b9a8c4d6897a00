// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded procedural test images.
//!
//! Gradients, a few blended shapes, a sinusoidal texture, and low-level
//! pixel noise — enough spectral variety to exercise the perceptual hash
//! and the patch pipeline without any external dataset. Deterministic
//! given the seed.

use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::image::PixelImage;
use crate::rng::{chacha_from_parts, derive_seed};

const SYNTH_TAG: u64 = 0x53594E_5448_494D47;

/// Seed for image `index` of a corpus with base seed `corpus_seed`.
pub fn corpus_image_seed(corpus_seed: u64, index: u64) -> u64 {
    derive_seed(corpus_seed, SYNTH_TAG, index)
}

struct Shape {
    kind: u8,
    center: (f64, f64),
    size: (f64, f64),
    color: [f64; 3],
    alpha: f64,
}

impl Shape {
    fn covers(&self, x: f64, y: f64) -> bool {
        let dx = x - self.center.0;
        let dy = y - self.center.1;
        if self.kind == 0 {
            // Ellipse.
            let nx = dx / self.size.0;
            let ny = dy / self.size.1;
            nx * nx + ny * ny <= 1.0
        } else {
            dx.abs() <= self.size.0 && dy.abs() <= self.size.1
        }
    }
}

/// Generates one synthetic RGB image.
pub fn synth_image(seed: u64, width: u32, height: u32) -> PixelImage {
    let mut rng: ChaCha12Rng = chacha_from_parts(&[seed, SYNTH_TAG]);
    let w = width as f64;
    let h = height as f64;

    // Base gradient between two random colors along a random direction.
    let c0: [f64; 3] = [rng.gen_range(0.0..256.0), rng.gen_range(0.0..256.0), rng.gen_range(0.0..256.0)];
    let c1: [f64; 3] = [rng.gen_range(0.0..256.0), rng.gen_range(0.0..256.0), rng.gen_range(0.0..256.0)];
    let angle = rng.gen_range(0.0..core::f64::consts::TAU);
    let (dir_x, dir_y) = (libm::cos(angle), libm::sin(angle));
    // Projection bounds over the image corners.
    let mut proj_min = f64::INFINITY;
    let mut proj_max = f64::NEG_INFINITY;
    for (cx, cy) in [(0.0, 0.0), (w, 0.0), (0.0, h), (w, h)] {
        let p = cx * dir_x + cy * dir_y;
        proj_min = proj_min.min(p);
        proj_max = proj_max.max(p);
    }
    let proj_span = (proj_max - proj_min).max(1.0);

    // A handful of blended shapes.
    let shape_count = rng.gen_range(3..=8);
    let mut shapes = alloc::vec::Vec::with_capacity(shape_count);
    for _ in 0..shape_count {
        shapes.push(Shape {
            kind: rng.gen_range(0..2u8),
            center: (rng.gen_range(0.0..w), rng.gen_range(0.0..h)),
            size: (
                rng.gen_range(w / 16.0..w / 3.0),
                rng.gen_range(h / 16.0..h / 3.0),
            ),
            color: [
                rng.gen_range(0.0..256.0),
                rng.gen_range(0.0..256.0),
                rng.gen_range(0.0..256.0),
            ],
            alpha: rng.gen_range(0.35..0.9),
        });
    }

    // Sinusoidal texture and noise amplitudes.
    let tex_amp = rng.gen_range(2.0..8.0);
    let tex_fx = rng.gen_range(1.0..12.0);
    let tex_fy = rng.gen_range(1.0..12.0);
    let tex_phase = rng.gen_range(0.0..core::f64::consts::TAU);
    let noise_amp = rng.gen_range(2.0..10.0);

    let mut img = PixelImage::new(width, height).unwrap();
    for row in 0..height {
        for col in 0..width {
            let x = col as f64;
            let y = row as f64;
            let t = (x * dir_x + y * dir_y - proj_min) / proj_span;
            let mut px = [
                c0[0] + t * (c1[0] - c0[0]),
                c0[1] + t * (c1[1] - c0[1]),
                c0[2] + t * (c1[2] - c0[2]),
            ];
            for shape in &shapes {
                if shape.covers(x, y) {
                    for (chan, &color) in px.iter_mut().zip(&shape.color) {
                        *chan += shape.alpha * (color - *chan);
                    }
                }
            }
            let texture = tex_amp
                * libm::sin(core::f64::consts::TAU * (tex_fx * x / w + tex_fy * y / h) + tex_phase);
            let noise = rng.gen_range(-noise_amp..=noise_amp);
            let rgb = [
                clamp_u8(px[0] + texture + noise),
                clamp_u8(px[1] + texture + noise),
                clamp_u8(px[2] + texture + noise),
            ];
            img.set(row, col, rgb);
        }
    }
    img
}

fn clamp_u8(v: f64) -> u8 {
    if v <= 0.0 {
        0
    } else if v >= 255.0 {
        255
    } else {
        v as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phash::phash;

    #[test]
    fn generation_is_deterministic() {
        let a = synth_image(7, 64, 64);
        let b = synth_image(7, 64, 64);
        assert_eq!(a, b);
        let c = synth_image(8, 64, 64);
        assert_ne!(a, c);
    }

    #[test]
    fn corpus_images_have_varied_hashes() {
        let mut hashes = alloc::vec::Vec::new();
        for i in 0..12u64 {
            let img = synth_image(corpus_image_seed(99, i), 96, 96);
            hashes.push(phash(&img).unwrap());
        }
        let mut distinct = 0;
        for i in 0..hashes.len() {
            for j in i + 1..hashes.len() {
                if hashes[i] != hashes[j] {
                    distinct += 1;
                }
            }
        }
        // Nearly all pairs should differ.
        assert!(distinct >= 60, "only {distinct} distinct pairs");
    }
}
