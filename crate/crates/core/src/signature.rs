// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! Desk-scale RSA-2048 signatures over perceptual hashes.
//!
//! The modulus is exactly 2048 bits, so every signature serializes to
//! exactly 2048 bits — 32 patches worth of 64-bit payloads. Signing is
//! deterministic: the 8 hash bytes are digested with SHA-256 and padded
//! PKCS#1 v1.5 style before exponentiation, so the same key and hash
//! always produce the same bits. Key generation is seeded (ChaCha-driven
//! Miller-Rabin prime search) so fixtures are stable across runs.
//!
//! This is not a hardened cryptographic implementation: no blinding, no
//! constant-time guarantees. It exists to give the pipeline real
//! signatures with the exact payload geometry the framework needs.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::bits::BitVector;
use crate::phash::PerceptualHash;
use crate::rng::chacha_from_parts;

/// Modulus and signature width in bits.
pub const MODULUS_BITS: u64 = 2048;

/// Candidate draws allowed per prime before giving up.
const MAX_PRIME_ATTEMPTS: usize = 100_000;

/// Miller-Rabin rounds (error probability ~4^-40).
const MILLER_RABIN_ROUNDS: usize = 40;

/// Domain tag for key-generation randomness.
const KEYGEN_TAG: u64 = 0x5253_4147_454E_3031;

/// ASN.1 DigestInfo prefix for SHA-256 (PKCS#1 v1.5).
const SHA256_DIGEST_INFO: [u8; 19] = [
    0x30, 0x31, 0x30, 0x0d, 0x06, 0x09, 0x60, 0x86, 0x48, 0x01, 0x65, 0x03, 0x04, 0x02, 0x01,
    0x05, 0x00, 0x04, 0x20,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureError {
    /// Prime search exhausted its attempt budget.
    PrimeSearchFailed,
    /// Key components are inconsistent (e.g. `p * q != n`).
    InvalidKey(&'static str),
    /// Signature bit width is not exactly 2048.
    BadSignatureLength { len: usize },
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::PrimeSearchFailed => write!(f, "prime search failed"),
            SignatureError::InvalidKey(msg) => write!(f, "invalid key: {msg}"),
            SignatureError::BadSignatureLength { len } => {
                write!(f, "signature must be 2048 bits, got {len}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SignatureError {}

/// RSA public key: modulus and public exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    n: BigUint,
    e: BigUint,
}

impl PublicKey {
    pub fn new(n: BigUint, e: BigUint) -> Result<Self, SignatureError> {
        if n.bits() != MODULUS_BITS {
            return Err(SignatureError::InvalidKey("modulus must be 2048 bits"));
        }
        if e < BigUint::from(3u32) {
            return Err(SignatureError::InvalidKey("exponent too small"));
        }
        Ok(PublicKey { n, e })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.n
    }

    pub fn exponent(&self) -> &BigUint {
        &self.e
    }
}

/// RSA secret key with CRT acceleration parameters derived on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretKey {
    n: BigUint,
    e: BigUint,
    d: BigUint,
    p: BigUint,
    q: BigUint,
    dp: BigUint,
    dq: BigUint,
    qinv: BigUint,
}

impl SecretKey {
    pub fn new(
        n: BigUint,
        e: BigUint,
        d: BigUint,
        p: BigUint,
        q: BigUint,
    ) -> Result<Self, SignatureError> {
        if &p * &q != n {
            return Err(SignatureError::InvalidKey("p * q != n"));
        }
        if n.bits() != MODULUS_BITS {
            return Err(SignatureError::InvalidKey("modulus must be 2048 bits"));
        }
        let one = BigUint::one();
        let dp = &d % (&p - &one);
        let dq = &d % (&q - &one);
        let qinv = modinv(&q, &p).ok_or(SignatureError::InvalidKey("q not invertible mod p"))?;
        Ok(SecretKey {
            n,
            e,
            d,
            p,
            q,
            dp,
            dq,
            qinv,
        })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.n
    }

    pub fn exponent(&self) -> &BigUint {
        &self.e
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn public(&self) -> PublicKey {
        PublicKey {
            n: self.n.clone(),
            e: self.e.clone(),
        }
    }
}

/// A matched public/secret pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair {
    pub public: PublicKey,
    pub secret: SecretKey,
}

/// A signature serialized to exactly 2048 bits (left-padded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureBits {
    bits: BitVector,
}

impl SignatureBits {
    pub fn from_bits(bits: BitVector) -> Result<Self, SignatureError> {
        if bits.len() != MODULUS_BITS as usize {
            return Err(SignatureError::BadSignatureLength { len: bits.len() });
        }
        Ok(SignatureBits { bits })
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn into_bits(self) -> BitVector {
        self.bits
    }

    /// 512 lowercase hex characters.
    pub fn to_hex(&self) -> alloc::string::String {
        self.bits.to_hex().unwrap()
    }

    pub fn from_hex(s: &str) -> Result<Self, SignatureError> {
        let bits = BitVector::from_hex(s)
            .map_err(|_| SignatureError::BadSignatureLength { len: s.len() * 4 })?;
        SignatureBits::from_bits(bits)
    }

    pub fn to_biguint(&self) -> BigUint {
        bits_to_biguint(&self.bits)
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        SignatureBits {
            bits: biguint_to_bits(v),
        }
    }
}

/// BitVector (bit i = 2^i) of exactly 2048 bits from an integer < 2^2048.
fn biguint_to_bits(v: &BigUint) -> BitVector {
    let mut words: Vec<u64> = v.iter_u64_digits().collect();
    assert!(words.len() <= 32, "value exceeds 2048 bits");
    words.resize(32, 0);
    BitVector::from_words(words, MODULUS_BITS as usize)
}

fn bits_to_biguint(bits: &BitVector) -> BigUint {
    let mut bytes = Vec::with_capacity(bits.words().len() * 8);
    for w in bits.words() {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

/// Deterministic seeded key generation.
pub fn keygen(seed: u64) -> Result<KeyPair, SignatureError> {
    let mut rng = chacha_from_parts(&[seed, KEYGEN_TAG]);
    let e = BigUint::from(65_537u32);
    let sieve = small_primes(8192);

    let p = generate_prime(&mut rng, &e, &sieve)?;
    let q = loop {
        let q = generate_prime(&mut rng, &e, &sieve)?;
        if q != p {
            break q;
        }
    };

    let n = &p * &q;
    debug_assert_eq!(n.bits(), MODULUS_BITS);
    let one = BigUint::one();
    let phi = (&p - &one) * (&q - &one);
    let d = modinv(&e, &phi).ok_or(SignatureError::InvalidKey("e not invertible mod phi"))?;

    let secret = SecretKey::new(n.clone(), e.clone(), d, p, q)?;
    let public = PublicKey::new(n, e)?;
    Ok(KeyPair { public, secret })
}

/// Draws random 1024-bit candidates (top two bits and low bit forced) and
/// returns the first probable prime compatible with `e`.
fn generate_prime(
    rng: &mut rand_chacha::ChaCha12Rng,
    e: &BigUint,
    sieve: &[u32],
) -> Result<BigUint, SignatureError> {
    let one = BigUint::one();
    for _ in 0..MAX_PRIME_ATTEMPTS {
        let mut cand = rng.gen_biguint(1024);
        cand |= BigUint::one() << 1023u32;
        cand |= BigUint::one() << 1022u32;
        cand |= BigUint::one();

        if sieve
            .iter()
            .any(|&sp| (&cand % BigUint::from(sp)).is_zero())
        {
            continue;
        }
        if !(&cand - &one).gcd(e).is_one() {
            continue;
        }
        if miller_rabin(&cand, rng, MILLER_RABIN_ROUNDS) {
            return Ok(cand);
        }
    }
    Err(SignatureError::PrimeSearchFailed)
}

fn small_primes(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    let mut composite = alloc::vec![false; limit];
    let mut primes = Vec::new();
    for i in 2..limit {
        if !composite[i] {
            // Skip 2: candidates are forced odd.
            if i > 2 {
                primes.push(i as u32);
            }
            let mut j = i * i;
            while j < limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn miller_rabin(n: &BigUint, rng: &mut rand_chacha::ChaCha12Rng, rounds: usize) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_one = n - &one;

    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;

    'witness: for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &n_minus_one);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn modinv(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let eg = BigInt::from(a.clone()).extended_gcd(&BigInt::from(m.clone()));
    if !eg.gcd.is_one() {
        return None;
    }
    let m_int = BigInt::from(m.clone());
    let mut x = eg.x % &m_int;
    if x < BigInt::zero() {
        x += &m_int;
    }
    x.to_biguint()
}

/// PKCS#1 v1.5 encoded message for the 8 hash bytes, 256 bytes long.
fn encoded_message(hash: &PerceptualHash) -> [u8; 256] {
    let digest = Sha256::digest(hash.to_bytes());
    let mut em = [0xFFu8; 256];
    em[0] = 0x00;
    em[1] = 0x01;
    let suffix = 256 - SHA256_DIGEST_INFO.len() - 32;
    em[suffix - 1] = 0x00;
    em[suffix..suffix + SHA256_DIGEST_INFO.len()].copy_from_slice(&SHA256_DIGEST_INFO);
    em[suffix + SHA256_DIGEST_INFO.len()..].copy_from_slice(&digest);
    em
}

/// Deterministic signature over a perceptual hash.
pub fn sign(sk: &SecretKey, hash: &PerceptualHash) -> SignatureBits {
    let m = BigUint::from_bytes_be(&encoded_message(hash));

    // CRT exponentiation.
    let m1 = m.modpow(&sk.dp, &sk.p);
    let m2 = m.modpow(&sk.dq, &sk.q);
    let m2_mod_p = &m2 % &sk.p;
    let diff = (&m1 + &sk.p - m2_mod_p) % &sk.p;
    let h = (diff * &sk.qinv) % &sk.p;
    let s = m2 + h * &sk.q;

    debug_assert!(s < sk.n);
    SignatureBits::from_biguint(&s)
}

/// True iff `sig` is a valid signature of `hash` under `pk`.
///
/// Never panics on malformed input; anything inconsistent verifies false.
pub fn verify(pk: &PublicKey, hash: &PerceptualHash, sig: &SignatureBits) -> bool {
    let s = sig.to_biguint();
    if s >= pk.n {
        return false;
    }
    let v = s.modpow(&pk.e, &pk.n);
    v == BigUint::from_bytes_be(&encoded_message(hash))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::chacha;
    use rand::Rng;

    fn test_key() -> &'static KeyPair {
        use std::sync::OnceLock;
        static KEY: OnceLock<KeyPair> = OnceLock::new();
        KEY.get_or_init(|| keygen(0xF1B7_0CE5).unwrap())
    }

    #[test]
    fn keygen_is_deterministic_and_sized() {
        let k1 = keygen(42).unwrap();
        let k2 = keygen(42).unwrap();
        assert_eq!(k1, k2);
        assert_eq!(k1.public.modulus().bits(), 2048);
        let k3 = keygen(43).unwrap();
        assert_ne!(k1.public.modulus(), k3.public.modulus());
    }

    #[test]
    fn sign_verify_round_trip() {
        let kp = test_key();
        let hash = PerceptualHash::from_value(0x0123_4567_89AB_CDEF);
        let sig = sign(&kp.secret, &hash);
        assert_eq!(sig, sign(&kp.secret, &hash));
        assert_eq!(sig.bits().len(), 2048);
        assert!(verify(&kp.public, &hash, &sig));

        let other = PerceptualHash::from_value(0x0123_4567_89AB_CDEE);
        assert!(!verify(&kp.public, &other, &sig));
    }

    #[test]
    fn wrong_key_rejects() {
        let kp = test_key();
        let stranger = keygen(777).unwrap();
        let hash = PerceptualHash::from_value(99);
        let sig = sign(&kp.secret, &hash);
        assert!(!verify(&stranger.public, &hash, &sig));
    }

    #[test]
    fn bit_flips_reject() {
        let kp = test_key();
        let hash = PerceptualHash::from_value(0xDEAD_BEEF);
        let sig = sign(&kp.secret, &hash);
        for i in [0usize, 1, 500, 1024, 2047] {
            let mut bits = sig.bits().clone();
            bits.set(i, !bits.get(i).unwrap()).unwrap();
            let flipped = SignatureBits::from_bits(bits).unwrap();
            assert!(!verify(&kp.public, &hash, &flipped), "flip {i} verified");
        }
    }

    #[test]
    fn serialization_round_trip_is_identity() {
        let mut rng = chacha(31337);
        for _ in 0..50 {
            let mut words = alloc::vec::Vec::new();
            for _ in 0..32 {
                words.push(rng.gen::<u64>());
            }
            let bits = BitVector::from_words(words, 2048);
            let v = bits_to_biguint(&bits);
            assert_eq!(biguint_to_bits(&v), bits);
        }
        // Leading zeros are preserved by left padding.
        let small = BigUint::from(5u32);
        let bits = biguint_to_bits(&small);
        assert_eq!(bits.len(), 2048);
        assert_eq!(bits.popcount(), 2);
    }

    #[test]
    fn hex_form_is_512_chars() {
        let kp = test_key();
        let sig = sign(&kp.secret, &PerceptualHash::from_value(1));
        let hex = sig.to_hex();
        assert_eq!(hex.len(), 512);
        assert_eq!(SignatureBits::from_hex(&hex).unwrap(), sig);
    }

    #[test]
    fn oversized_signature_value_verifies_false() {
        let kp = test_key();
        let hash = PerceptualHash::from_value(7);
        // All-ones exceeds any 2048-bit modulus.
        let sig = SignatureBits::from_bits(BitVector::zeros(2048).complement()).unwrap();
        assert!(!verify(&kp.public, &hash, &sig));
    }
}
