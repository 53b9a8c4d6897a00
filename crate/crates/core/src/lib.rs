// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! Core algorithms for high-capacity, error-aware signature watermarking.
//!
//! The crate bundles everything needed to embed a 2048-bit digital
//! signature into an image through a patch-wise watermark channel and to
//! get it back intact:
//!
//! - [`bits`]: fixed-length bit vectors, the payload currency.
//! - [`dcss`]: distinct circular subsum sequences and their search.
//! - [`painting`]: the deterministic error-painting encoder and a
//!   brute-force maximum-likelihood reference decoder.
//! - [`decoder`]: the trainable linear decoder that inverts paintings
//!   under noise.
//! - [`phash`]: a bit-exact 64-bit DCT perceptual hash.
//! - [`signature`]: desk-scale RSA-2048 with deterministic padding.
//! - [`channel`]: pluggable per-patch watermark channels (exact LSB and a
//!   seeded simulated channel with intrinsic/distortion errors).
//! - [`framework`]: crop, embed, extract, correct, verify; plus BER and
//!   zero-bit-error image rate metrics.
//! - [`synth`]: seeded procedural test images.
//!
//! Everything here is `no_std`-compatible (with `alloc`); file formats,
//! PNG IO, and the CLI live in the companion `sigmark-cli` crate. All
//! randomness is drawn from seeded ChaCha streams so that every result in
//! this crate is reproducible bit for bit.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod bits;
pub mod channel;
pub mod dcss;
pub mod decoder;
pub mod framework;
pub mod image;
pub mod painting;
pub mod phash;
pub mod rng;
pub mod signature;
pub mod synth;

pub use bits::BitVector;
pub use channel::{ChannelModel, ChannelSession, WatermarkChannel};
pub use dcss::DcssSequence;
pub use decoder::{LinearDecoderModel, TrainConfig};
pub use framework::{PatchAssignment, PatchGrid, VerificationReport};
pub use image::{ImagePatch, PixelImage};
pub use painting::PaintingScheme;
pub use phash::PerceptualHash;
pub use signature::{KeyPair, PublicKey, SecretKey, SignatureBits};
