// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! The trainable painting decoder: one 64x64 linear layer plus sigmoid.
//!
//! Training samples Bernoulli error vectors, paints them, corrupts the
//! painting with independent Bernoulli flips at the same rate, and runs
//! plain minibatch SGD on the binary cross-entropy against the
//! ground-truth error vector (summed over the 64 bits, averaged over the
//! batch). Everything is keyed off `TrainConfig::seed`:
//! weight initialization consumes 4096 uniform draws (row-major), then
//! each batch item consumes 64 error draws followed by 64 noise draws, so
//! identical configs produce bitwise-identical models.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::distributions::{Bernoulli, Distribution};
use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::bits::BitVector;
use crate::painting::{PaintingScheme, PaintingError};
use crate::rng::{chacha, derive_seed};

/// Message width the decoder operates on.
pub const DECODER_BITS: usize = 64;

const WEIGHT_COUNT: usize = DECODER_BITS * DECODER_BITS;

/// Domain tag for per-trial evaluation seeds.
const EVAL_TRIAL_TAG: u64 = 0x4556_414C_5452_4C31;

/// Errors from decoder construction, training, and use.
#[derive(Debug, Clone, PartialEq)]
pub enum DecoderError {
    BadDimensions { weights: usize, bias: usize },
    NonFiniteParameter,
    BadThreshold { threshold: f64 },
    BadConfig(&'static str),
    LengthMismatch { len: usize },
    SchemeModulus { n: u32 },
    Diverged { step: u64, loss: f64 },
    Painting(PaintingError),
}

impl fmt::Display for DecoderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderError::BadDimensions { weights, bias } => {
                write!(f, "expected 64x64 weights and 64 biases, got {weights}/{bias}")
            }
            DecoderError::NonFiniteParameter => write!(f, "model parameters must be finite"),
            DecoderError::BadThreshold { threshold } => {
                write!(f, "threshold {threshold} outside (0, 1)")
            }
            DecoderError::BadConfig(msg) => write!(f, "invalid training config: {msg}"),
            DecoderError::LengthMismatch { len } => {
                write!(f, "decoder input must be 64 bits, got {len}")
            }
            DecoderError::SchemeModulus { n } => {
                write!(f, "decoder requires a modulus-64 scheme, got {n}")
            }
            DecoderError::Diverged { step, loss } => {
                write!(f, "training diverged at step {step} (loss {loss})")
            }
            DecoderError::Painting(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DecoderError {}

impl From<PaintingError> for DecoderError {
    fn from(e: PaintingError) -> Self {
        DecoderError::Painting(e)
    }
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + libm::exp(-z))
}

/// Numerically stable `ln(1 + e^z)`.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + libm::log1p(libm::exp(-z))
    } else {
        libm::log1p(libm::exp(z))
    }
}

/// The learned painting decoder.
///
/// Row `r` of the weight matrix maps a painted observation (bits as 0/1
/// reals) to the logit of error bit `r`. A bit is predicted set iff the
/// sigmoid output strictly exceeds the threshold, so ties predict zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearDecoderModel {
    weights: Vec<f64>,
    bias: Vec<f64>,
    scheme: PaintingScheme,
    threshold: f64,
    logit_cutoff: f64,
}

impl LinearDecoderModel {
    pub fn new(
        weights: Vec<f64>,
        bias: Vec<f64>,
        scheme: PaintingScheme,
        threshold: f64,
    ) -> Result<Self, DecoderError> {
        if weights.len() != WEIGHT_COUNT || bias.len() != DECODER_BITS {
            return Err(DecoderError::BadDimensions {
                weights: weights.len(),
                bias: bias.len(),
            });
        }
        if weights.iter().chain(bias.iter()).any(|v| !v.is_finite()) {
            return Err(DecoderError::NonFiniteParameter);
        }
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(DecoderError::BadThreshold { threshold });
        }
        if scheme.modulus() != DECODER_BITS as u32 {
            return Err(DecoderError::SchemeModulus { n: scheme.modulus() });
        }
        let logit_cutoff = libm::log(threshold / (1.0 - threshold));
        Ok(LinearDecoderModel {
            weights,
            bias,
            scheme,
            threshold,
            logit_cutoff,
        })
    }

    /// Weights in row-major order (row = output bit).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    pub fn scheme(&self) -> &PaintingScheme {
        &self.scheme
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Decodes an observed painted vector into an error-vector estimate.
    pub fn decode(&self, observed: &BitVector) -> Result<BitVector, DecoderError> {
        if observed.len() != DECODER_BITS {
            return Err(DecoderError::LengthMismatch { len: observed.len() });
        }
        Ok(BitVector::from_word(
            self.decode_word(observed.as_word().unwrap()),
        ))
    }

    /// Word-level decode: bit `r` of the result is set iff
    /// `sigmoid(w_r . x + b_r)` strictly exceeds the threshold.
    pub fn decode_word(&self, x: u64) -> u64 {
        let mut out = 0u64;
        for r in 0..DECODER_BITS {
            let z = self.logit(r, x);
            // sigmoid(z) > t  <=>  z > logit(t); sigmoid is monotone.
            if z > self.logit_cutoff {
                out |= 1 << r;
            }
        }
        out
    }

    #[inline]
    fn logit(&self, r: usize, x: u64) -> f64 {
        let row = &self.weights[r * DECODER_BITS..(r + 1) * DECODER_BITS];
        let mut z = self.bias[r];
        let mut rest = x;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            z += row[j];
            rest &= rest - 1;
        }
        z
    }
}

/// Training hyperparameters.
///
/// The same rate drives both the error-vector distribution and the
/// corruption of the painted vector.
#[derive(Debug, Clone)]
pub struct TrainConfig {
    /// Bernoulli flip probability, in (0, 1).
    pub error_rate: f64,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub steps: u64,
    pub seed: u64,
    pub scheme: PaintingScheme,
}

impl TrainConfig {
    /// Defaults from the training regime: lr 1e-2, batch 64, 50k steps.
    pub fn new(error_rate: f64, scheme: PaintingScheme) -> Self {
        TrainConfig {
            error_rate,
            learning_rate: 1e-2,
            batch_size: 64,
            steps: 50_000,
            seed: 0,
            scheme,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_steps(mut self, steps: u64) -> Self {
        self.steps = steps;
        self
    }

    fn validate(&self, check_rate: bool) -> Result<(), DecoderError> {
        if check_rate && !(self.error_rate > 0.0 && self.error_rate < 1.0) {
            return Err(DecoderError::BadConfig("error_rate must be in (0, 1)"));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(DecoderError::BadConfig("learning_rate must be positive"));
        }
        if self.batch_size == 0 {
            return Err(DecoderError::BadConfig("batch_size must be at least 1"));
        }
        if self.scheme.modulus() != DECODER_BITS as u32 {
            return Err(DecoderError::BadConfig("scheme modulus must be 64"));
        }
        Ok(())
    }
}

/// Loss samples collected during training (step, batch mean BCE), one
/// every 1,000 steps plus the final step.
#[derive(Debug, Clone, Default)]
pub struct TrainReport {
    pub loss_log: Vec<(u64, f64)>,
}

/// Trains on Bernoulli-corrupted paintings per the config.
pub fn train(config: &TrainConfig) -> Result<(LinearDecoderModel, TrainReport), DecoderError> {
    config.validate(true)?;
    let dist = Bernoulli::new(config.error_rate).expect("rate validated");
    let scheme = config.scheme.clone();
    train_with_sampler(config, move |rng| {
        let e = sample_word(&dist, rng);
        let noise = sample_word(&dist, rng);
        (e, scheme.paint_word(e) ^ noise)
    })
}

/// Trains on `(error, observation)` pairs drawn from an arbitrary sampler.
///
/// Used for oracle-style regimes where the observation process is the
/// actual channel rather than the Bernoulli model; `config.error_rate` is
/// ignored here. The sampler owns all randomness beyond weight
/// initialization.
pub fn train_with_sampler(
    config: &TrainConfig,
    mut sampler: impl FnMut(&mut ChaCha12Rng) -> (u64, u64),
) -> Result<(LinearDecoderModel, TrainReport), DecoderError> {
    config.validate(false)?;
    let mut rng = chacha(config.seed);

    let mut weights = Vec::with_capacity(WEIGHT_COUNT);
    for _ in 0..WEIGHT_COUNT {
        weights.push(rng.gen::<f64>() * 0.2 - 0.1);
    }
    let mut bias = vec![0.0f64; DECODER_BITS];

    let mut report = TrainReport::default();
    let mut batch: Vec<(u64, u64)> = Vec::with_capacity(config.batch_size);
    let mut grad_w = vec![0.0f64; WEIGHT_COUNT];
    let mut grad_b = vec![0.0f64; DECODER_BITS];

    for step in 0..config.steps {
        batch.clear();
        for _ in 0..config.batch_size {
            batch.push(sampler(&mut rng));
        }

        grad_w.iter_mut().for_each(|g| *g = 0.0);
        grad_b.iter_mut().for_each(|g| *g = 0.0);
        accumulate_gradients(&weights, &bias, &batch, &mut grad_w, &mut grad_b);

        let checkpoint = step % 1000 == 0 || step + 1 == config.steps;
        if checkpoint {
            let loss = mean_bce(&weights, &bias, &batch);
            if !loss.is_finite() {
                return Err(DecoderError::Diverged { step, loss });
            }
            report.loss_log.push((step, loss));
        }

        let scale = config.learning_rate / config.batch_size as f64;
        for (w, g) in weights.iter_mut().zip(&grad_w) {
            *w -= scale * g;
        }
        for (b, g) in bias.iter_mut().zip(&grad_b) {
            *b -= scale * g;
        }
    }

    let model = LinearDecoderModel::new(weights, bias, config.scheme.clone(), 0.5)?;
    Ok((model, report))
}

fn sample_word(dist: &Bernoulli, rng: &mut ChaCha12Rng) -> u64 {
    let mut w = 0u64;
    for bit in 0..64 {
        if dist.sample(rng) {
            w |= 1 << bit;
        }
    }
    w
}

/// Accumulates unnormalized BCE gradients for a batch of `(error,
/// observation)` pairs. Callers scale by `1 / batch` to match the loss
/// reduction (sum over bits, mean over batch).
fn accumulate_gradients(
    weights: &[f64],
    bias: &[f64],
    batch: &[(u64, u64)],
    grad_w: &mut [f64],
    grad_b: &mut [f64],
) {
    for &(e, x) in batch {
        for r in 0..DECODER_BITS {
            let row = &weights[r * DECODER_BITS..(r + 1) * DECODER_BITS];
            let mut z = bias[r];
            let mut rest = x;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                z += row[j];
                rest &= rest - 1;
            }
            let y = (e >> r & 1) as f64;
            let g = sigmoid(z) - y;
            grad_b[r] += g;
            let grow = &mut grad_w[r * DECODER_BITS..(r + 1) * DECODER_BITS];
            let mut rest = x;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                grow[j] += g;
                rest &= rest - 1;
            }
        }
    }
}

fn mean_bce(weights: &[f64], bias: &[f64], batch: &[(u64, u64)]) -> f64 {
    let mut total = 0.0;
    for &(e, x) in batch {
        for r in 0..DECODER_BITS {
            let row = &weights[r * DECODER_BITS..(r + 1) * DECODER_BITS];
            let mut z = bias[r];
            let mut rest = x;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                z += row[j];
                rest &= rest - 1;
            }
            let y = (e >> r & 1) as f64;
            total += softplus(z) - y * z;
        }
    }
    total / batch.len() as f64
}

/// BCE loss of the model on explicit `(error, observation)` samples:
/// summed over the 64 output bits, averaged over the samples.
pub fn bce_loss(model: &LinearDecoderModel, samples: &[(u64, u64)]) -> f64 {
    mean_bce(&model.weights, &model.bias, samples)
}

/// Analytic gradient of [`bce_loss`] with respect to weights (row-major)
/// and biases.
pub fn bce_gradients(model: &LinearDecoderModel, samples: &[(u64, u64)]) -> (Vec<f64>, Vec<f64>) {
    let mut grad_w = vec![0.0f64; WEIGHT_COUNT];
    let mut grad_b = vec![0.0f64; DECODER_BITS];
    accumulate_gradients(&model.weights, &model.bias, samples, &mut grad_w, &mut grad_b);
    let scale = 1.0 / samples.len() as f64;
    for g in grad_w.iter_mut().chain(grad_b.iter_mut()) {
        *g *= scale;
    }
    (grad_w, grad_b)
}

/// Aggregate decode statistics over seeded trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalStats {
    pub trials: u64,
    pub correct_bits: u64,
    pub total_bits: u64,
    pub exact_count: u64,
}

impl EvalStats {
    pub fn bit_accuracy(&self) -> f64 {
        self.correct_bits as f64 / self.total_bits as f64
    }

    pub fn exact_recovery_rate(&self) -> f64 {
        self.exact_count as f64 / self.trials as f64
    }

    pub fn merge(self, other: EvalStats) -> EvalStats {
        EvalStats {
            trials: self.trials + other.trials,
            correct_bits: self.correct_bits + other.correct_bits,
            total_bits: self.total_bits + other.total_bits,
            exact_count: self.exact_count + other.exact_count,
        }
    }

    pub fn zero() -> EvalStats {
        EvalStats {
            trials: 0,
            correct_bits: 0,
            total_bits: 0,
            exact_count: 0,
        }
    }
}

/// One evaluation trial under an independently derived seed.
///
/// Samples `e ~ Bernoulli(p)` per bit, corrupts `paint(e)` with
/// Bernoulli(p) flips, decodes, and reports (correct bits, exact?).
pub fn evaluate_trial(model: &LinearDecoderModel, p: f64, trial_seed: u64) -> (u32, bool) {
    let dist = Bernoulli::new(p).expect("p in [0, 1]");
    let mut rng = chacha(trial_seed);
    let e = sample_word(&dist, &mut rng);
    let noise = sample_word(&dist, &mut rng);
    let observed = model.scheme.paint_word(e) ^ noise;
    let decoded = model.decode_word(observed);
    (64 - (decoded ^ e).count_ones(), decoded == e)
}

/// Evaluates bit accuracy and exact-recovery rate over seeded trials.
///
/// Trial `t` draws from seed `derive_seed(seed, tag, t)`, so partitioning
/// trials across threads cannot change the aggregate.
pub fn evaluate(model: &LinearDecoderModel, p: f64, trials: u64, seed: u64) -> EvalStats {
    assert!(trials >= 1, "at least one trial required");
    assert!((0.0..1.0).contains(&p), "p must be in [0, 1)");
    let mut stats = EvalStats::zero();
    for t in 0..trials {
        let (correct, exact) = evaluate_trial(model, p, eval_trial_seed(seed, t));
        stats.trials += 1;
        stats.correct_bits += correct as u64;
        stats.total_bits += 64;
        stats.exact_count += exact as u64;
    }
    stats
}

/// The per-trial seed used by [`evaluate`]; exposed so parallel harnesses
/// can split trials while producing identical aggregates.
pub fn eval_trial_seed(seed: u64, trial: u64) -> u64 {
    derive_seed(seed, EVAL_TRIAL_TAG, trial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::painting::paint;

    fn zero_model() -> LinearDecoderModel {
        LinearDecoderModel::new(
            vec![0.0; WEIGHT_COUNT],
            vec![0.0; DECODER_BITS],
            PaintingScheme::canonical(),
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn zero_model_predicts_zero() {
        // sigmoid(0) = 0.5 does not strictly exceed the 0.5 threshold.
        let model = zero_model();
        assert_eq!(model.decode_word(u64::MAX), 0);
        assert_eq!(model.decode_word(0), 0);
    }

    #[test]
    fn saturated_identity_model_copies_input() {
        let mut weights = vec![0.0; WEIGHT_COUNT];
        for r in 0..DECODER_BITS {
            weights[r * DECODER_BITS + r] = 1000.0;
        }
        let bias = vec![-500.0; DECODER_BITS];
        let model =
            LinearDecoderModel::new(weights, bias, PaintingScheme::canonical(), 0.5).unwrap();
        for x in [0u64, 1, 0xFFFF_0000_1234_5678, u64::MAX] {
            assert_eq!(model.decode_word(x), x);
        }
    }

    #[test]
    fn model_validation() {
        assert!(matches!(
            LinearDecoderModel::new(vec![0.0; 10], vec![0.0; 64], PaintingScheme::canonical(), 0.5),
            Err(DecoderError::BadDimensions { .. })
        ));
        assert!(matches!(
            LinearDecoderModel::new(
                vec![f64::NAN; WEIGHT_COUNT],
                vec![0.0; 64],
                PaintingScheme::canonical(),
                0.5
            ),
            Err(DecoderError::NonFiniteParameter)
        ));
        assert!(matches!(
            LinearDecoderModel::new(
                vec![0.0; WEIGHT_COUNT],
                vec![0.0; 64],
                PaintingScheme::canonical(),
                1.0
            ),
            Err(DecoderError::BadThreshold { .. })
        ));
    }

    #[test]
    fn zero_steps_returns_initial_model() {
        let config = TrainConfig::new(0.05, PaintingScheme::canonical())
            .with_seed(9)
            .with_steps(0);
        let (model, report) = train(&config).unwrap();
        assert!(report.loss_log.is_empty());
        // Weights are exactly the seeded initialization.
        let mut rng = chacha(9);
        for w in model.weights() {
            assert_eq!(*w, rng.gen::<f64>() * 0.2 - 0.1);
        }
        assert!(model.bias().iter().all(|&b| b == 0.0));
    }

    #[test]
    fn training_is_deterministic() {
        let config = TrainConfig::new(0.05, PaintingScheme::canonical())
            .with_seed(1234)
            .with_steps(300);
        let (m1, r1) = train(&config).unwrap();
        let (m2, r2) = train(&config).unwrap();
        assert_eq!(m1.weights(), m2.weights());
        assert_eq!(m1.bias(), m2.bias());
        assert_eq!(r1.loss_log, r2.loss_log);

        let other = train(&config.clone().with_seed(77)).unwrap().0;
        assert_ne!(m1.weights(), other.weights());
    }

    #[test]
    fn gradients_match_finite_differences() {
        // Spot-checked here on a handful of coordinates; the acceptance
        // suite sweeps 100 batches.
        let config = TrainConfig::new(0.1, PaintingScheme::canonical())
            .with_seed(5)
            .with_steps(50);
        let (model, _) = train(&config).unwrap();

        let dist = Bernoulli::new(0.1).unwrap();
        let mut rng = chacha(99);
        let batch: Vec<(u64, u64)> = (0..16)
            .map(|_| {
                let e = sample_word(&dist, &mut rng);
                let noise = sample_word(&dist, &mut rng);
                (e, model.scheme().paint_word(e) ^ noise)
            })
            .collect();

        let (gw, gb) = bce_gradients(&model, &batch);
        let h = 1e-5;
        for &idx in &[0usize, 65, 700, 4095] {
            let mut plus = model.clone();
            plus.weights[idx] += h;
            let mut minus = model.clone();
            minus.weights[idx] -= h;
            let numeric = (bce_loss(&plus, &batch) - bce_loss(&minus, &batch)) / (2.0 * h);
            let analytic = gw[idx];
            let rel = (numeric - analytic).abs() / analytic.abs().max(numeric.abs()).max(1e-8);
            assert!(rel < 1e-4, "weight {idx}: {analytic} vs {numeric}");
        }
        for &idx in &[0usize, 31, 63] {
            let mut plus = model.clone();
            plus.bias[idx] += h;
            let mut minus = model.clone();
            minus.bias[idx] -= h;
            let numeric = (bce_loss(&plus, &batch) - bce_loss(&minus, &batch)) / (2.0 * h);
            let rel = (numeric - gb[idx]).abs() / gb[idx].abs().max(numeric.abs()).max(1e-8);
            assert!(rel < 1e-4, "bias {idx}");
        }
    }

    #[test]
    fn quick_training_recovers_single_errors() {
        // Noiseless single-error paintings are the easiest decode; a
        // short run should already nail all 64 of them.
        let config = TrainConfig::new(0.02, PaintingScheme::canonical())
            .with_seed(2024)
            .with_steps(8_000);
        let (model, report) = train(&config).unwrap();
        let first = report.loss_log.first().unwrap().1;
        let last = report.loss_log.last().unwrap().1;
        assert!(last < first, "loss should fall: {first} -> {last}");
        for i in 0..64 {
            let e = BitVector::from_word(1 << i);
            let painted = paint(&e, model.scheme()).unwrap();
            assert_eq!(model.decode(&painted).unwrap(), e, "bit {i}");
        }
    }

    #[test]
    fn evaluate_is_threadcount_invariant_by_construction() {
        let model = zero_model();
        let full = evaluate(&model, 0.05, 200, 7);
        // Recompute by splitting trials the way a parallel harness would.
        let mut split = EvalStats::zero();
        for t in 0..200u64 {
            let (c, x) = evaluate_trial(&model, 0.05, eval_trial_seed(7, t));
            split.trials += 1;
            split.correct_bits += c as u64;
            split.total_bits += 64;
            split.exact_count += x as u64;
        }
        assert_eq!(full, split);
    }

    #[test]
    fn evaluate_zero_rate_is_trivially_exact() {
        // With p = 0 no error bits and no noise are drawn, and any model
        // that maps zero to zero scores perfectly.
        let model = zero_model();
        let stats = evaluate(&model, 0.0, 50, 3);
        assert_eq!(stats.exact_count, 50);
        assert_eq!(stats.correct_bits, stats.total_bits);
    }
}
