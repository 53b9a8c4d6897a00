// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! The end-to-end pipeline: crop, assign A/B patches, embed a signature
//! plus painted error data, extract, correct, verify.
//!
//! An image is cropped into a uniform grid. Half the patches (A) carry
//! payload chunks; each A patch is paired with a B patch that carries the
//! painting of A's clean-decode error vector, observed by extracting from
//! the watermarked patch right after embedding. At verification time the
//! decoder inverts the (possibly corrupted) painting and the recovered
//! error vector is XORed into the raw extraction. Deterministic clean
//! decode errors therefore cancel exactly; only fresh distortion on A
//! patches survives correction.
//!
//! The signature path binds everything to image content: the payload is
//! an RSA signature of the original image's perceptual hash, and
//! verification recomputes the hash from the received image, so a
//! signature transplanted onto different content fails.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{BitError, BitVector};
use crate::channel::{ChannelError, WatermarkChannel};
use crate::decoder::{DecoderError, LinearDecoderModel};
use crate::image::{ImagePatch, PixelImage};
use crate::painting::{paint, PaintingError, PaintingScheme};
use crate::phash::{phash, PerceptualHash, PhashError};
use crate::signature::{sign, verify, PublicKey, SecretKey, SignatureBits, SignatureError};

/// Errors from pipeline operations.
#[derive(Debug, Clone, PartialEq)]
pub enum FrameworkError {
    ZeroGrid,
    NonDivisible { width: u32, height: u32, rows: u32, cols: u32 },
    /// Full pipelines require an 8x8 grid (or 4x4 in truncated test mode).
    UnsupportedGrid { rows: u32, cols: u32 },
    OddPatchCount { count: usize },
    BadPatchSet(&'static str),
    PayloadLength { expected: usize, actual: usize },
    MissingDecoder,
    SchemeMismatch,
    EmptyInput,
    Channel(ChannelError),
    Painting(PaintingError),
    Decoder(DecoderError),
    Phash(PhashError),
    Signature(SignatureError),
    Bits(BitError),
}

impl fmt::Display for FrameworkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameworkError::ZeroGrid => write!(f, "grid dimensions must be positive"),
            FrameworkError::NonDivisible { width, height, rows, cols } => write!(
                f,
                "image {width}x{height} not divisible by a {rows}x{cols} grid"
            ),
            FrameworkError::UnsupportedGrid { rows, cols } => {
                write!(f, "pipeline requires an 8x8 or 4x4 grid, got {rows}x{cols}")
            }
            FrameworkError::OddPatchCount { count } => {
                write!(f, "patch count {count} cannot split into A/B halves")
            }
            FrameworkError::BadPatchSet(msg) => write!(f, "bad patch set: {msg}"),
            FrameworkError::PayloadLength { expected, actual } => {
                write!(f, "payload must be {expected} bits, got {actual}")
            }
            FrameworkError::MissingDecoder => {
                write!(f, "error-corrected extraction requires a decoder model")
            }
            FrameworkError::SchemeMismatch => {
                write!(f, "decoder model was trained for a different painting scheme")
            }
            FrameworkError::EmptyInput => write!(f, "input must be nonempty"),
            FrameworkError::Channel(e) => write!(f, "{e}"),
            FrameworkError::Painting(e) => write!(f, "{e}"),
            FrameworkError::Decoder(e) => write!(f, "{e}"),
            FrameworkError::Phash(e) => write!(f, "{e}"),
            FrameworkError::Signature(e) => write!(f, "{e}"),
            FrameworkError::Bits(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FrameworkError {}

impl From<ChannelError> for FrameworkError {
    fn from(e: ChannelError) -> Self {
        FrameworkError::Channel(e)
    }
}
impl From<PaintingError> for FrameworkError {
    fn from(e: PaintingError) -> Self {
        FrameworkError::Painting(e)
    }
}
impl From<DecoderError> for FrameworkError {
    fn from(e: DecoderError) -> Self {
        FrameworkError::Decoder(e)
    }
}
impl From<PhashError> for FrameworkError {
    fn from(e: PhashError) -> Self {
        FrameworkError::Phash(e)
    }
}
impl From<SignatureError> for FrameworkError {
    fn from(e: SignatureError) -> Self {
        FrameworkError::Signature(e)
    }
}
impl From<BitError> for FrameworkError {
    fn from(e: BitError) -> Self {
        FrameworkError::Bits(e)
    }
}

/// A uniform crop grid.
///
/// Cropping and recomposition work for any positive grid; the signing
/// pipeline itself accepts only 8x8 (2048-bit payload) and 4x4 (512-bit
/// truncated test mode).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatchGrid {
    pub rows: u32,
    pub cols: u32,
}

impl PatchGrid {
    pub fn new(rows: u32, cols: u32) -> Result<Self, FrameworkError> {
        if rows == 0 || cols == 0 {
            return Err(FrameworkError::ZeroGrid);
        }
        Ok(PatchGrid { rows, cols })
    }

    pub fn patch_count(&self) -> usize {
        self.rows as usize * self.cols as usize
    }

    /// Patch dimensions for an image, checking exact divisibility.
    pub fn patch_dims(&self, image: &PixelImage) -> Result<(u32, u32), FrameworkError> {
        if image.height() % self.rows != 0 || image.width() % self.cols != 0 {
            return Err(FrameworkError::NonDivisible {
                width: image.width(),
                height: image.height(),
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((image.height() / self.rows, image.width() / self.cols))
    }
}

/// Splits an image into row-major patches that exactly partition it.
pub fn crop(image: &PixelImage, grid: &PatchGrid) -> Result<Vec<ImagePatch>, FrameworkError> {
    let (ph, pw) = grid.patch_dims(image)?;
    let mut patches = Vec::with_capacity(grid.patch_count());
    for r in 0..grid.rows {
        for c in 0..grid.cols {
            let origin = (r * ph, c * pw);
            let pixels = image
                .crop_region(origin.0, origin.1, ph, pw)
                .expect("grid-aligned region is in bounds");
            patches.push(ImagePatch::new(origin, pixels));
        }
    }
    Ok(patches)
}

/// Exact inverse of [`crop`]: placement is keyed by patch origin, so the
/// input order does not matter. Rejects missing, duplicate, or
/// inconsistently sized patches.
pub fn recompose(patches: &[ImagePatch], grid: &PatchGrid) -> Result<PixelImage, FrameworkError> {
    if patches.len() != grid.patch_count() {
        return Err(FrameworkError::BadPatchSet("wrong patch count"));
    }
    let ph = patches[0].height();
    let pw = patches[0].width();
    if patches.iter().any(|p| p.height() != ph || p.width() != pw) {
        return Err(FrameworkError::BadPatchSet("inconsistent patch dimensions"));
    }
    let mut seen = alloc::vec![false; patches.len()];
    let mut image = PixelImage::new(grid.cols * pw, grid.rows * ph)
        .expect("positive dimensions");
    for patch in patches {
        let (r, c) = patch.origin;
        if r % ph != 0 || c % pw != 0 {
            return Err(FrameworkError::BadPatchSet("origin off the grid lattice"));
        }
        let (gr, gc) = (r / ph, c / pw);
        if gr >= grid.rows || gc >= grid.cols {
            return Err(FrameworkError::BadPatchSet("origin outside the grid"));
        }
        let idx = (gr * grid.cols + gc) as usize;
        if seen[idx] {
            return Err(FrameworkError::BadPatchSet("duplicate patch origin"));
        }
        seen[idx] = true;
        image
            .paste(r, c, &patch.pixels)
            .expect("lattice-aligned paste is in bounds");
    }
    Ok(image)
}

/// How A (payload) and B (error-data) patches are laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignmentKind {
    /// A patches are the row-major top half, B the bottom half, paired by
    /// offset. The default.
    ContiguousHalves,
    /// A patches on even checkerboard cells, for robustness experiments.
    Checkerboard,
}

/// The A/B split: `a_patches[i]` is paired with `b_patches[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchAssignment {
    pub a_patches: Vec<usize>,
    pub b_patches: Vec<usize>,
}

impl PatchAssignment {
    pub fn new(grid: &PatchGrid, kind: AssignmentKind) -> Result<Self, FrameworkError> {
        let count = grid.patch_count();
        if count % 2 != 0 {
            return Err(FrameworkError::OddPatchCount { count });
        }
        let half = count / 2;
        let (a_patches, b_patches) = match kind {
            AssignmentKind::ContiguousHalves => {
                ((0..half).collect(), (half..count).collect())
            }
            AssignmentKind::Checkerboard => {
                let mut a = Vec::with_capacity(half);
                let mut b = Vec::with_capacity(half);
                for idx in 0..count {
                    let (r, c) = (idx / grid.cols as usize, idx % grid.cols as usize);
                    if (r + c) % 2 == 0 {
                        a.push(idx);
                    } else {
                        b.push(idx);
                    }
                }
                (a, b)
            }
        };
        Ok(PatchAssignment { a_patches, b_patches })
    }

    pub fn pair_count(&self) -> usize {
        self.a_patches.len()
    }
}

/// Whether extraction applies painted-error correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineMode {
    /// Embed error paintings into B patches and correct at extraction.
    ErpaOn,
    /// Payload in A patches only; raw extraction. The matched-payload
    /// baseline.
    ErpaOff,
}

/// Pipeline configuration shared between embed and extract.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub grid: PatchGrid,
    pub assignment: AssignmentKind,
    pub scheme: PaintingScheme,
    pub mode: PipelineMode,
    /// On verification failure, also try all hashes within Hamming
    /// distance 2 of the computed one (off by default).
    pub hamming_fallback: bool,
}

impl PipelineConfig {
    /// ERPA-on defaults: 8x8 grid, contiguous halves, canonical scheme.
    pub fn standard() -> Self {
        PipelineConfig {
            grid: PatchGrid { rows: 8, cols: 8 },
            assignment: AssignmentKind::ContiguousHalves,
            scheme: PaintingScheme::canonical(),
            mode: PipelineMode::ErpaOn,
            hamming_fallback: false,
        }
    }

    fn validate(&self) -> Result<PatchAssignment, FrameworkError> {
        let (r, c) = (self.grid.rows, self.grid.cols);
        if !((r == 8 && c == 8) || (r == 4 && c == 4)) {
            return Err(FrameworkError::UnsupportedGrid { rows: r, cols: c });
        }
        PatchAssignment::new(&self.grid, self.assignment)
    }

    /// Payload capacity in bits: 64 per A patch.
    pub fn payload_bits(&self) -> usize {
        self.grid.patch_count() / 2 * 64
    }

    /// True in the full 2048-bit signature mode.
    pub fn full_signature_mode(&self) -> bool {
        self.grid.rows == 8 && self.grid.cols == 8
    }
}

/// Embeds a raw payload (64 bits per A patch) and, in ERPA mode, the
/// painted clean-decode error of each A patch into its paired B patch.
pub fn embed_payload<C: WatermarkChannel>(
    image: &PixelImage,
    payload: &BitVector,
    channel: &mut C,
    cfg: &PipelineConfig,
) -> Result<PixelImage, FrameworkError> {
    let assignment = cfg.validate()?;
    if payload.len() != cfg.payload_bits() {
        return Err(FrameworkError::PayloadLength {
            expected: cfg.payload_bits(),
            actual: payload.len(),
        });
    }
    let mut patches = crop(image, &cfg.grid)?;

    for i in 0..assignment.pair_count() {
        let a_idx = assignment.a_patches[i];
        let chunk = BitVector::from_word(payload.chunk64(i)?);
        let watermarked = channel.embed(&patches[a_idx], &chunk)?;

        if cfg.mode == PipelineMode::ErpaOn {
            // Clean-decode the patch we just wrote: its error pattern is
            // deterministic and will be re-observed at verification.
            let observed = channel.extract(&watermarked)?;
            let error = chunk.xor(&observed)?;
            let painted = paint(&error, &cfg.scheme)?;
            let b_idx = assignment.b_patches[i];
            patches[b_idx] = channel.embed(&patches[b_idx], &painted)?;
        }
        patches[a_idx] = watermarked;
    }

    recompose(&patches, &cfg.grid)
}

/// Result of an extraction pass, before any signature decision.
#[derive(Debug, Clone)]
pub struct ExtractionReport {
    /// Concatenated corrected payload (64 bits per A patch).
    pub payload: BitVector,
    pub per_patch_raw: Vec<BitVector>,
    pub per_patch_corrected: Vec<BitVector>,
    pub notes: Vec<String>,
}

/// Extracts the payload, applying painted-error correction in ERPA mode.
///
/// A missing watermark ("no watermark" from the channel) yields zero bits
/// for that patch plus a diagnostic note rather than an error, so the
/// caller still gets a full report.
pub fn extract_payload<C: WatermarkChannel>(
    image: &PixelImage,
    channel: &C,
    decoder: Option<&LinearDecoderModel>,
    cfg: &PipelineConfig,
) -> Result<ExtractionReport, FrameworkError> {
    let assignment = cfg.validate()?;
    if cfg.mode == PipelineMode::ErpaOn {
        let model = decoder.ok_or(FrameworkError::MissingDecoder)?;
        if model.scheme() != &cfg.scheme {
            return Err(FrameworkError::SchemeMismatch);
        }
    }
    let patches = crop(image, &cfg.grid)?;

    let mut per_patch_raw = Vec::with_capacity(assignment.pair_count());
    let mut per_patch_corrected = Vec::with_capacity(assignment.pair_count());
    let mut notes = Vec::new();

    for i in 0..assignment.pair_count() {
        let a_idx = assignment.a_patches[i];
        let raw = match channel.extract(&patches[a_idx]) {
            Ok(bits) => bits,
            Err(ChannelError::NoWatermark { origin }) => {
                notes.push(alloc::format!(
                    "no watermark in payload patch {i} at {origin:?}"
                ));
                BitVector::zeros(64)
            }
            Err(e) => return Err(e.into()),
        };

        let corrected = match cfg.mode {
            PipelineMode::ErpaOff => raw.clone(),
            PipelineMode::ErpaOn => {
                let b_idx = assignment.b_patches[i];
                match channel.extract(&patches[b_idx]) {
                    Ok(observed_painting) => {
                        let model = decoder.expect("checked above");
                        let e_hat = model.decode(&observed_painting)?;
                        raw.xor(&e_hat)?
                    }
                    Err(ChannelError::NoWatermark { origin }) => {
                        notes.push(alloc::format!(
                            "no watermark in error patch {i} at {origin:?}; correction skipped"
                        ));
                        raw.clone()
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        };

        per_patch_raw.push(raw);
        per_patch_corrected.push(corrected);
    }

    Ok(ExtractionReport {
        payload: BitVector::concat(&per_patch_corrected),
        per_patch_raw,
        per_patch_corrected,
        notes,
    })
}

/// Output of [`embed_signature`].
#[derive(Debug, Clone)]
pub struct SignatureEmbedReport {
    pub image: PixelImage,
    pub signature: SignatureBits,
    pub original_phash: PerceptualHash,
    pub watermarked_phash: PerceptualHash,
}

impl SignatureEmbedReport {
    /// False when embedding itself perturbed the hash, in which case
    /// exact-match verification of the output will fail.
    pub fn phash_stable(&self) -> bool {
        self.original_phash == self.watermarked_phash
    }
}

/// Signs the image's perceptual hash and embeds the signature.
///
/// In 4x4 mode only the first 512 signature bits are embedded (truncated
/// parity-test mode; real verification requires 8x8).
pub fn embed_signature<C: WatermarkChannel>(
    image: &PixelImage,
    secret: &SecretKey,
    channel: &mut C,
    cfg: &PipelineConfig,
) -> Result<SignatureEmbedReport, FrameworkError> {
    let original_phash = phash(image)?;
    let signature = sign(secret, &original_phash);
    let payload = truncate_bits(signature.bits(), cfg.payload_bits());
    let watermarked = embed_payload(image, &payload, channel, cfg)?;
    let watermarked_phash = phash(&watermarked)?;
    Ok(SignatureEmbedReport {
        image: watermarked,
        signature,
        original_phash,
        watermarked_phash,
    })
}

fn truncate_bits(bits: &BitVector, len: usize) -> BitVector {
    if bits.len() == len {
        return bits.clone();
    }
    let words = bits.words()[..len.div_ceil(64)].to_vec();
    BitVector::from_words(words, len)
}

/// The verification verdict plus everything needed to audit it.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// Concatenated corrected payload; the full 2048-bit signature in
    /// 8x8 mode.
    pub recovered_signature: BitVector,
    pub per_patch_raw: Vec<BitVector>,
    pub per_patch_corrected: Vec<BitVector>,
    /// Perceptual hash of the received image.
    pub phash: PerceptualHash,
    pub verified: bool,
    /// Populated only when ground truth is known (benchmark mode).
    pub raw_ber: Option<f64>,
    pub corrected_ber: Option<f64>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// The recovered signature, when running in full 8x8 mode.
    pub fn signature(&self) -> Option<SignatureBits> {
        SignatureBits::from_bits(self.recovered_signature.clone()).ok()
    }

    /// Fills `raw_ber`/`corrected_ber` against known embedded bits.
    pub fn apply_ground_truth(&mut self, truth: &BitVector) -> Result<(), FrameworkError> {
        let raw = BitVector::concat(&self.per_patch_raw);
        self.raw_ber = Some(ber(truth, &raw)?);
        self.corrected_ber = Some(ber(truth, &self.recovered_signature)?);
        Ok(())
    }
}

/// Extracts, corrects, and verifies a watermarked image.
///
/// Verification recomputes the perceptual hash of the received image and
/// checks the recovered signature against it, so a signature moved to
/// different content does not verify.
pub fn extract_and_verify<C: WatermarkChannel>(
    image: &PixelImage,
    public: &PublicKey,
    channel: &C,
    decoder: Option<&LinearDecoderModel>,
    cfg: &PipelineConfig,
) -> Result<VerificationReport, FrameworkError> {
    let extraction = extract_payload(image, channel, decoder, cfg)?;
    let received_phash = phash(image)?;
    let mut notes = extraction.notes;

    let verified = if cfg.full_signature_mode() {
        let sig = SignatureBits::from_bits(extraction.payload.clone())
            .expect("8x8 payload is 2048 bits");
        let mut ok = verify(public, &received_phash, &sig);
        if !ok && cfg.hamming_fallback {
            if let Some((hash, dist)) = hamming_fallback(public, &received_phash, &sig) {
                notes.push(alloc::format!(
                    "verified against hash {hash} at hamming distance {dist}"
                ));
                ok = true;
            }
        }
        ok
    } else {
        notes.push(String::from(
            "truncated-signature mode: verification requires an 8x8 grid",
        ));
        false
    };

    Ok(VerificationReport {
        recovered_signature: extraction.payload,
        per_patch_raw: extraction.per_patch_raw,
        per_patch_corrected: extraction.per_patch_corrected,
        phash: received_phash,
        verified,
        raw_ber: None,
        corrected_ber: None,
        notes,
    })
}

/// Tries all hashes within Hamming distance 2 (1 + 64 + 2016 candidates).
fn hamming_fallback(
    public: &PublicKey,
    computed: &PerceptualHash,
    sig: &SignatureBits,
) -> Option<(PerceptualHash, u32)> {
    let base = computed.value();
    for i in 0..64 {
        let cand = PerceptualHash::from_value(base ^ (1 << i));
        if verify(public, &cand, sig) {
            return Some((cand, 1));
        }
    }
    for i in 0..64 {
        for j in i + 1..64 {
            let cand = PerceptualHash::from_value(base ^ (1 << i) ^ (1 << j));
            if verify(public, &cand, sig) {
                return Some((cand, 2));
            }
        }
    }
    None
}

/// Distorts a watermarked image through the channel and reassembles it.
pub fn distort_image<C: WatermarkChannel>(
    image: &PixelImage,
    channel: &mut C,
    grid: &PatchGrid,
    strength: Option<f64>,
) -> Result<PixelImage, FrameworkError> {
    let mut patches = crop(image, grid)?;
    channel.distort(&mut patches, strength)?;
    recompose(&patches, grid)
}

/// Bit error rate between a reference and a received vector.
pub fn ber(reference: &BitVector, received: &BitVector) -> Result<f64, FrameworkError> {
    let distance = reference.hamming(received)?;
    Ok(distance as f64 / reference.len() as f64)
}

/// Zero-bit-error image rate: the fraction of exactly recovered images.
pub fn zbir(per_image_exact_flags: &[bool]) -> Result<f64, FrameworkError> {
    if per_image_exact_flags.is_empty() {
        return Err(FrameworkError::EmptyInput);
    }
    let hits = per_image_exact_flags.iter().filter(|&&b| b).count();
    Ok(hits as f64 / per_image_exact_flags.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::chacha;
    use rand::Rng;

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
    fn crop_recompose_round_trip() {
        let img = random_image(1, 128, 96);
        let grid = PatchGrid::new(4, 4).unwrap();
        let patches = crop(&img, &grid).unwrap();
        assert_eq!(patches.len(), 16);
        assert_eq!(patches[0].height(), 24);
        assert_eq!(patches[0].width(), 32);
        assert_eq!(recompose(&patches, &grid).unwrap(), img);
    }

    #[test]
    fn recompose_is_origin_keyed() {
        let img = random_image(2, 64, 64);
        let grid = PatchGrid::new(4, 4).unwrap();
        let mut patches = crop(&img, &grid).unwrap();
        patches.reverse();
        assert_eq!(recompose(&patches, &grid).unwrap(), img);
    }

    #[test]
    fn recompose_rejects_bad_sets() {
        let img = random_image(3, 64, 64);
        let grid = PatchGrid::new(4, 4).unwrap();
        let patches = crop(&img, &grid).unwrap();

        let missing = &patches[..15];
        assert!(matches!(
            recompose(missing, &grid),
            Err(FrameworkError::BadPatchSet(_))
        ));

        let mut duplicated = patches.clone();
        duplicated[5] = duplicated[4].clone();
        assert!(matches!(
            recompose(&duplicated, &grid),
            Err(FrameworkError::BadPatchSet(_))
        ));
    }

    #[test]
    fn single_patch_grid_is_identity() {
        let img = random_image(4, 32, 32);
        let grid = PatchGrid::new(1, 1).unwrap();
        let patches = crop(&img, &grid).unwrap();
        assert_eq!(patches.len(), 1);
        assert_eq!(recompose(&patches, &grid).unwrap(), img);
    }

    #[test]
    fn divisibility_is_enforced() {
        let img = random_image(5, 100, 100);
        let grid = PatchGrid::new(8, 8).unwrap();
        assert!(matches!(
            crop(&img, &grid),
            Err(FrameworkError::NonDivisible { .. })
        ));
    }

    #[test]
    fn assignments_partition_the_grid() {
        let grid = PatchGrid::new(8, 8).unwrap();
        for kind in [AssignmentKind::ContiguousHalves, AssignmentKind::Checkerboard] {
            let a = PatchAssignment::new(&grid, kind).unwrap();
            assert_eq!(a.a_patches.len(), 32);
            assert_eq!(a.b_patches.len(), 32);
            let mut all: Vec<usize> = a.a_patches.iter().chain(&a.b_patches).copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..64).collect::<Vec<_>>());
        }
        let a = PatchAssignment::new(&grid, AssignmentKind::ContiguousHalves).unwrap();
        assert_eq!(a.a_patches[0], 0);
        assert_eq!(a.b_patches[0], 32);
    }

    #[test]
    fn ber_examples() {
        let zeros = BitVector::zeros(2048);
        assert_eq!(ber(&zeros, &zeros).unwrap(), 0.0);
        assert_eq!(ber(&zeros, &zeros.complement()).unwrap(), 1.0);
        let mut one_flip = zeros.clone();
        one_flip.set(100, true).unwrap();
        let b = ber(&zeros, &one_flip).unwrap();
        assert!((b - 1.0 / 2048.0).abs() < 1e-12);
    }

    #[test]
    fn zbir_examples() {
        assert_eq!(zbir(&[true, true]).unwrap(), 1.0);
        assert_eq!(zbir(&[true, false]).unwrap(), 0.5);
        assert!(matches!(zbir(&[]), Err(FrameworkError::EmptyInput)));
    }

    #[test]
    fn pipeline_rejects_unsupported_grids() {
        let cfg = PipelineConfig {
            grid: PatchGrid::new(2, 2).unwrap(),
            ..PipelineConfig::standard()
        };
        let img = random_image(6, 64, 64);
        let payload = BitVector::zeros(128);
        let mut session = crate::channel::ChannelModel::lsb(0).session();
        assert!(matches!(
            embed_payload(&img, &payload, &mut session, &cfg),
            Err(FrameworkError::UnsupportedGrid { .. })
        ));
    }
}
