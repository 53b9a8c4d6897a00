// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! Fixed-length bit vectors.
//!
//! `BitVector` is the universal payload currency: 64 bits for patch
//! payloads and error vectors, 2048 bits for signatures. Bit `i` carries
//! numeric weight `2^i`, so the hex form is the value of the vector as an
//! unsigned integer, zero-padded to `len / 4` digits: bit 0 is the least
//! significant bit of the *last* hex digit. This encoding is used wherever
//! bits cross a process boundary.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Errors from bit-vector operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BitError {
    /// Two operands have different lengths.
    LengthMismatch { left: usize, right: usize },
    /// Length must be a positive multiple of 4 for hex round trips.
    InvalidLength { len: usize },
    /// Bit index outside the vector.
    IndexOutOfRange { index: usize, len: usize },
    /// Hex string contained a non-hex character.
    InvalidHexDigit { byte: u8 },
}

impl fmt::Display for BitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BitError::LengthMismatch { left, right } => {
                write!(f, "bit vector length mismatch: {left} vs {right}")
            }
            BitError::InvalidLength { len } => write!(f, "invalid bit vector length {len}"),
            BitError::IndexOutOfRange { index, len } => {
                write!(f, "bit index {index} out of range for length {len}")
            }
            BitError::InvalidHexDigit { byte } => write!(f, "invalid hex digit 0x{byte:02x}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for BitError {}

/// A fixed-length sequence of bits with value semantics.
///
/// The length is set at construction and never changes; all bitwise
/// operations require equal lengths. Words are stored little-endian:
/// `words[k]` holds bits `64k..64k+64`, and unused high bits of the last
/// word are always zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    /// All-zero vector of the given length. Length must be positive.
    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "bit vector length must be positive");
        BitVector {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// A 64-bit vector holding `word`.
    pub fn from_word(word: u64) -> Self {
        BitVector {
            words: vec![word],
            len: 64,
        }
    }

    /// A vector of length `len <= 64` holding the low `len` bits of `word`.
    pub fn from_word_len(word: u64, len: usize) -> Self {
        assert!(len > 0 && len <= 64);
        BitVector {
            words: vec![word & mask_for(len)],
            len,
        }
    }

    /// Builds a vector from little-endian words; extra high bits are cleared.
    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        assert!(len > 0 && words.len() == len.div_ceil(64));
        let mut v = BitVector { words, len };
        v.clear_excess();
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The little-endian word representation.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The value of a vector of length <= 64 as a single word.
    pub fn as_word(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words[0])
    }

    pub fn get(&self, index: usize) -> Result<bool, BitError> {
        if index >= self.len {
            return Err(BitError::IndexOutOfRange {
                index,
                len: self.len,
            });
        }
        Ok((self.words[index / 64] >> (index % 64)) & 1 == 1)
    }

    pub fn set(&mut self, index: usize, value: bool) -> Result<(), BitError> {
        if index >= self.len {
            return Err(BitError::IndexOutOfRange {
                index,
                len: self.len,
            });
        }
        let bit = 1u64 << (index % 64);
        if value {
            self.words[index / 64] |= bit;
        } else {
            self.words[index / 64] &= !bit;
        }
        Ok(())
    }

    /// Number of set bits.
    pub fn popcount(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector, BitError> {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn or(&self, other: &BitVector) -> Result<BitVector, BitError> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn and(&self, other: &BitVector) -> Result<BitVector, BitError> {
        self.zip_with(other, |a, b| a & b)
    }

    /// Bitwise complement within the fixed length.
    pub fn complement(&self) -> BitVector {
        let mut out = BitVector {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        out.clear_excess();
        out
    }

    /// Hamming distance between equal-length vectors.
    pub fn hamming(&self, other: &BitVector) -> Result<u32, BitError> {
        Ok(self.xor(other)?.popcount())
    }

    /// Concatenates `chunks` (in order, each keeping its own bit order).
    pub fn concat(chunks: &[BitVector]) -> BitVector {
        let len: usize = chunks.iter().map(|c| c.len).sum();
        let mut out = BitVector::zeros(len);
        let mut pos = 0;
        for c in chunks {
            for i in 0..c.len {
                if c.get(i).unwrap() {
                    out.set(pos + i, true).unwrap();
                }
            }
            pos += c.len;
        }
        out
    }

    /// The 64-bit chunk starting at bit `64 * index`.
    ///
    /// The vector length must be a multiple of 64.
    pub fn chunk64(&self, index: usize) -> Result<u64, BitError> {
        if self.len % 64 != 0 {
            return Err(BitError::InvalidLength { len: self.len });
        }
        if index >= self.words.len() {
            return Err(BitError::IndexOutOfRange {
                index: index * 64,
                len: self.len,
            });
        }
        Ok(self.words[index])
    }

    /// Circular left rotation by `t` positions (bit `i` moves to `(i+t) % len`).
    pub fn rotate_left(&self, t: usize) -> BitVector {
        let t = t % self.len;
        let mut out = BitVector::zeros(self.len);
        for i in 0..self.len {
            if self.get(i).unwrap() {
                out.set((i + t) % self.len, true).unwrap();
            }
        }
        out
    }

    /// Lowercase hex, `len / 4` digits, most significant digit first.
    ///
    /// Errors if the length is not a multiple of 4.
    pub fn to_hex(&self) -> Result<String, BitError> {
        if self.len % 4 != 0 {
            return Err(BitError::InvalidLength { len: self.len });
        }
        let digits = self.len / 4;
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (self.words[d / 16] >> ((d % 16) * 4)) & 0xF;
            out.push(core::char::from_digit(nibble as u32, 16).unwrap());
        }
        Ok(out)
    }

    /// Parses the hex form produced by [`BitVector::to_hex`].
    ///
    /// The resulting length is `4 * s.len()`.
    pub fn from_hex(s: &str) -> Result<BitVector, BitError> {
        if s.is_empty() {
            return Err(BitError::InvalidLength { len: 0 });
        }
        let digits = s.len();
        let mut v = BitVector::zeros(digits * 4);
        for (pos, byte) in s.bytes().enumerate() {
            let nibble = match byte {
                b'0'..=b'9' => byte - b'0',
                b'a'..=b'f' => byte - b'a' + 10,
                b'A'..=b'F' => byte - b'A' + 10,
                _ => return Err(BitError::InvalidHexDigit { byte }),
            };
            let d = digits - 1 - pos;
            v.words[d / 16] |= (nibble as u64) << ((d % 16) * 4);
        }
        Ok(v)
    }

    fn zip_with(&self, other: &BitVector, f: impl Fn(u64, u64) -> u64) -> Result<BitVector, BitError> {
        if self.len != other.len {
            return Err(BitError::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(BitVector {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            len: self.len,
        })
    }

    fn clear_excess(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            *self.words.last_mut().unwrap() &= mask_for(rem);
        }
    }
}

/// Mask with the low `len` bits set (`1 <= len <= 64`).
pub fn mask_for(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len % 4 == 0 {
            write!(f, "BitVector<{}>({})", self.len, self.to_hex().unwrap())
        } else {
            write!(f, "BitVector<{}>({:?})", self.len, self.words)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip_and_bit_order() {
        let mut v = BitVector::zeros(64);
        v.set(0, true).unwrap();
        assert_eq!(v.to_hex().unwrap(), "0000000000000001");
        let back = BitVector::from_hex("0000000000000001").unwrap();
        assert_eq!(back, v);
        assert!(back.get(0).unwrap());
    }

    #[test]
    fn xor_is_involution() {
        let a = BitVector::from_word(0xDEAD_BEEF_1234_5678);
        let b = BitVector::from_word(0x0F0F_F0F0_AAAA_5555);
        let c = a.xor(&b).unwrap();
        assert_eq!(c.xor(&b).unwrap(), a);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let a = BitVector::zeros(64);
        let b = BitVector::zeros(128);
        assert_eq!(
            a.xor(&b).unwrap_err(),
            BitError::LengthMismatch { left: 64, right: 128 }
        );
    }

    #[test]
    fn popcount_and_hamming() {
        let a = BitVector::from_word(0b1011);
        let b = BitVector::from_word(0b0010);
        assert_eq!(a.popcount(), 3);
        assert_eq!(a.hamming(&b).unwrap(), 2);
        assert_eq!(a.hamming(&a.complement()).unwrap(), 64);
    }

    #[test]
    fn long_vector_chunks() {
        let mut v = BitVector::zeros(2048);
        v.set(64, true).unwrap();
        v.set(2047, true).unwrap();
        assert_eq!(v.chunk64(1).unwrap(), 1);
        assert_eq!(v.chunk64(31).unwrap(), 1 << 63);
        assert_eq!(v.popcount(), 2);
        assert_eq!(v.to_hex().unwrap().len(), 512);
    }

    #[test]
    fn concat_preserves_chunk_order() {
        let a = BitVector::from_word(5);
        let b = BitVector::from_word(9);
        let joined = BitVector::concat(&[a, b]);
        assert_eq!(joined.chunk64(0).unwrap(), 5);
        assert_eq!(joined.chunk64(1).unwrap(), 9);
    }

    #[test]
    fn rotate_left_wraps() {
        let v = BitVector::from_word_len(0b1, 8);
        let r = v.rotate_left(9);
        assert!(r.get(1).unwrap());
        assert_eq!(r.popcount(), 1);
    }

    #[test]
    fn from_hex_rejects_garbage() {
        assert!(matches!(
            BitVector::from_hex("00zz"),
            Err(BitError::InvalidHexDigit { .. })
        ));
    }
}
