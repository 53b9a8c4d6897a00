// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! The deterministic error-painting encoder.
//!
//! An error vector `e` marks which watermark bits decoded wrong. Painting
//! replaces every set bit `i` of `e` with the indicator of
//! `shift(S, i) = {(i + k) mod n | k in offsets}` and ORs all the shifts
//! together. DCSS offsets keep distinct shift sets from colliding in more
//! than one position, which is what makes the painting invertible.
//!
//! [`oracle_decode`] is the exhaustive maximum-likelihood reference: it
//! tries every error vector up to a popcount bound and picks the one whose
//! painting is closest to the observation. The trained decoder in
//! [`crate::decoder`] is validated against it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{mask_for, BitError, BitVector};
use crate::dcss::{DcssSequence, CANONICAL_OFFSETS};

/// Largest popcount bound the oracle decoder accepts; C(64,4) candidate
/// vectors keep the exhaustive search tractable.
pub const ORACLE_MAX_ERRORS: u32 = 4;

/// Errors from painting-scheme construction and use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PaintingError {
    /// Offsets must be distinct, in range, and start at 0.
    InvalidOffsets(String),
    /// Modulus must be in 1..=64.
    InvalidModulus { n: u32 },
    /// Bit index outside the modulus.
    IndexOutOfRange { index: u32, n: u32 },
    /// Vector length does not match the scheme modulus.
    LengthMismatch { len: usize, n: u32 },
    /// Requested painting density unavailable.
    InvalidDensity { density: usize },
    /// Oracle popcount bound beyond [`ORACLE_MAX_ERRORS`].
    OracleBoundTooLarge { max_errors: u32 },
    Bits(BitError),
}

impl fmt::Display for PaintingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PaintingError::InvalidOffsets(msg) => write!(f, "invalid offsets: {msg}"),
            PaintingError::InvalidModulus { n } => write!(f, "invalid modulus {n}"),
            PaintingError::IndexOutOfRange { index, n } => {
                write!(f, "bit index {index} out of range for modulus {n}")
            }
            PaintingError::LengthMismatch { len, n } => {
                write!(f, "vector length {len} does not match modulus {n}")
            }
            PaintingError::InvalidDensity { density } => {
                write!(f, "painting density {density} unavailable")
            }
            PaintingError::OracleBoundTooLarge { max_errors } => {
                write!(f, "oracle bound {max_errors} exceeds {ORACLE_MAX_ERRORS}")
            }
            PaintingError::Bits(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PaintingError {}

impl From<BitError> for PaintingError {
    fn from(e: BitError) -> Self {
        PaintingError::Bits(e)
    }
}

/// Which family a painting scheme belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// Offsets drawn from a DCSS sequence.
    Dcss,
    /// Adjacent offsets `{0, 1, ..., L-1}`, the ablation baseline.
    Nearby,
}

impl SchemeKind {
    pub fn label(&self) -> &'static str {
        match self {
            SchemeKind::Dcss => "dcss",
            SchemeKind::Nearby => "nearby",
        }
    }
}

impl SchemeKind {
    pub fn from_label(s: &str) -> Option<SchemeKind> {
        match s {
            "dcss" => Some(SchemeKind::Dcss),
            "nearby" => Some(SchemeKind::Nearby),
            _ => None,
        }
    }
}

/// A set of painting offsets over Z/n.
///
/// Offsets are distinct, in `[0, n)`, and start at 0. The modulus is 64
/// in every pipeline use; smaller moduli are supported for completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaintingScheme {
    kind: SchemeKind,
    offsets: Vec<u32>,
    n: u32,
    base_mask: u64,
}

impl PaintingScheme {
    /// The canonical 7-offset DCSS scheme: `{0,1,3,7,12,20,30}` mod 64.
    pub fn canonical() -> Self {
        PaintingScheme::from_offsets(SchemeKind::Dcss, CANONICAL_OFFSETS.to_vec(), 64).unwrap()
    }

    /// The first `density` offsets of the canonical DCSS scheme.
    pub fn dcss_prefix(density: usize) -> Result<Self, PaintingError> {
        if density == 0 || density > CANONICAL_OFFSETS.len() {
            return Err(PaintingError::InvalidDensity { density });
        }
        PaintingScheme::from_offsets(SchemeKind::Dcss, CANONICAL_OFFSETS[..density].to_vec(), 64)
    }

    /// Adjacent offsets `{0..density-1}` mod 64, the NearBy baseline.
    pub fn nearby(density: usize) -> Result<Self, PaintingError> {
        if density == 0 || density > 64 {
            return Err(PaintingError::InvalidDensity { density });
        }
        PaintingScheme::from_offsets(SchemeKind::Nearby, (0..density as u32).collect(), 64)
    }

    /// A scheme built from an explicit offset list.
    pub fn from_offsets(
        kind: SchemeKind,
        offsets: Vec<u32>,
        n: u32,
    ) -> Result<Self, PaintingError> {
        if n == 0 || n > 64 {
            return Err(PaintingError::InvalidModulus { n });
        }
        if offsets.is_empty() {
            return Err(PaintingError::InvalidOffsets(String::from("empty")));
        }
        if offsets[0] != 0 {
            return Err(PaintingError::InvalidOffsets(String::from(
                "first offset must be 0",
            )));
        }
        let mut base_mask = 0u64;
        for &o in &offsets {
            if o >= n {
                return Err(PaintingError::InvalidOffsets(String::from("offset out of range")));
            }
            if base_mask >> o & 1 == 1 {
                return Err(PaintingError::InvalidOffsets(String::from("duplicate offset")));
            }
            base_mask |= 1 << o;
        }
        Ok(PaintingScheme {
            kind,
            offsets,
            n,
            base_mask,
        })
    }

    /// A scheme using all offsets of a DCSS sequence.
    pub fn from_sequence(seq: &DcssSequence) -> Result<Self, PaintingError> {
        PaintingScheme::from_offsets(SchemeKind::Dcss, seq.offsets().to_vec(), seq.modulus())
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    /// Number of painted positions per error bit.
    pub fn density(&self) -> usize {
        self.offsets.len()
    }

    /// Bitmask of `shift(S, i)`: the base offsets rotated left by `i`.
    pub fn shift_mask(&self, i: u32) -> u64 {
        rotl_mod(self.base_mask, i, self.n)
    }

    /// Word-level painting fast path: the low `n` bits of `e` are the
    /// error vector.
    pub fn paint_word(&self, e: u64) -> u64 {
        let mut rest = e & mask_for(self.n as usize);
        let mut out = 0u64;
        while rest != 0 {
            let i = rest.trailing_zeros();
            out |= self.shift_mask(i);
            rest &= rest - 1;
        }
        out
    }
}

/// Circular left rotation of the low `n` bits of `mask`.
fn rotl_mod(mask: u64, i: u32, n: u32) -> u64 {
    let i = i % n;
    if n == 64 {
        return mask.rotate_left(i);
    }
    let m = mask_for(n as usize);
    if i == 0 {
        mask & m
    } else {
        ((mask << i) | (mask >> (n - i))) & m
    }
}

/// The bitwise error vector `e = m XOR m~`: bit `i` set iff the vectors
/// disagree at `i`.
pub fn error_vector(m: &BitVector, m_tilde: &BitVector) -> Result<BitVector, PaintingError> {
    Ok(m.xor(m_tilde)?)
}

/// The painted positions for error bit `i`: `{(i + k) mod n}` over the
/// scheme offsets.
pub fn shift_positions(i: u32, scheme: &PaintingScheme) -> Result<Vec<u32>, PaintingError> {
    if i >= scheme.modulus() {
        return Err(PaintingError::IndexOutOfRange {
            index: i,
            n: scheme.modulus(),
        });
    }
    Ok(scheme
        .offsets()
        .iter()
        .map(|&k| (i + k) % scheme.modulus())
        .collect())
}

/// Paints `e` by ORing the shift sets of all its set bits.
pub fn paint(e: &BitVector, scheme: &PaintingScheme) -> Result<BitVector, PaintingError> {
    if e.len() != scheme.modulus() as usize {
        return Err(PaintingError::LengthMismatch {
            len: e.len(),
            n: scheme.modulus(),
        });
    }
    let word = e.as_word().expect("length checked at or below 64");
    Ok(BitVector::from_word_len(
        scheme.paint_word(word),
        scheme.modulus() as usize,
    ))
}

/// Applies a recovered error vector: `m^ = m~ XOR e^`.
pub fn correct(m_tilde: &BitVector, e_hat: &BitVector) -> Result<BitVector, PaintingError> {
    Ok(m_tilde.xor(e_hat)?)
}

/// Exhaustive maximum-likelihood painting inversion.
///
/// Searches every error vector with popcount at most `max_errors` and
/// returns the one whose painting is nearest (Hamming) to the
/// observation. Ties break toward smaller popcount, then smaller numeric
/// value (which equals lexicographic order of the hex serialization).
pub fn oracle_decode(
    observed: &BitVector,
    scheme: &PaintingScheme,
    max_errors: u32,
) -> Result<BitVector, PaintingError> {
    if max_errors > ORACLE_MAX_ERRORS {
        return Err(PaintingError::OracleBoundTooLarge { max_errors });
    }
    if observed.len() != scheme.modulus() as usize {
        return Err(PaintingError::LengthMismatch {
            len: observed.len(),
            n: scheme.modulus(),
        });
    }
    let obs = observed.as_word().expect("length checked at or below 64");
    let n = scheme.modulus();

    let mut best_e = 0u64;
    let mut best_dist = (scheme.paint_word(0) ^ obs).count_ones();
    let mut consider = |e: u64| {
        let dist = (scheme.paint_word(e) ^ obs).count_ones();
        if dist < best_dist
            || (dist == best_dist
                && (e.count_ones(), e) < (best_e.count_ones(), best_e))
        {
            best_dist = dist;
            best_e = e;
        }
    };

    // Candidates grouped by popcount; positions chosen by nested ascent.
    for count in 1..=max_errors {
        enumerate_combinations(n, count, 0, 0, &mut consider);
    }

    Ok(BitVector::from_word_len(best_e, n as usize))
}

fn enumerate_combinations(
    n: u32,
    remaining: u32,
    start: u32,
    acc: u64,
    consider: &mut impl FnMut(u64),
) {
    if remaining == 0 {
        consider(acc);
        return;
    }
    for p in start..=(n - remaining) {
        enumerate_combinations(n, remaining - 1, p + 1, acc | (1 << p), consider);
    }
}
