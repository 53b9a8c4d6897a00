// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! Distinct Circular Subsum Sequences (DCSS).
//!
//! A DCSS is a circular sequence of positive distances summing to the
//! modulus `n` whose contiguous circular runs (of length 1 to k-1) all
//! have pairwise distinct, nonzero sums mod `n`. Equivalently, the prefix
//! sum offsets of the sequence have pairwise distinct, nonzero circular
//! differences — the offsets form a Sidon set in Z/n. Both formulations
//! are implemented here; tests assert their equivalence.
//!
//! Sequences serialize as a plain text line `n: d1,d2,...,dk`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// The canonical 7-element distance sequence for n = 64.
pub const CANONICAL_DISTANCES: [u32; 7] = [1, 2, 4, 5, 8, 10, 34];

/// Offsets of [`CANONICAL_DISTANCES`]: prefix sums starting at 0.
pub const CANONICAL_OFFSETS: [u32; 7] = [0, 1, 3, 7, 12, 20, 30];

/// Largest modulus the exhaustive search supports (bitset-backed).
pub const SEARCH_MODULUS_LIMIT: u32 = 256;

/// Errors from sequence validation, parsing, and search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DcssError {
    EmptySequence,
    ZeroDistance,
    SumMismatch { sum: u64, n: u32 },
    ZeroModulus,
    ModulusTooLarge { n: u32 },
    Parse(String),
}

impl fmt::Display for DcssError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DcssError::EmptySequence => write!(f, "distance sequence is empty"),
            DcssError::ZeroDistance => write!(f, "distances must be positive"),
            DcssError::SumMismatch { sum, n } => {
                write!(f, "distances sum to {sum}, expected modulus {n}")
            }
            DcssError::ZeroModulus => write!(f, "modulus must be positive"),
            DcssError::ModulusTooLarge { n } => {
                write!(f, "search supports moduli up to {SEARCH_MODULUS_LIMIT}, got {n}")
            }
            DcssError::Parse(msg) => write!(f, "malformed sequence: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DcssError {}

fn validate(distances: &[u32], n: u32) -> Result<(), DcssError> {
    if n == 0 {
        return Err(DcssError::ZeroModulus);
    }
    if distances.is_empty() {
        return Err(DcssError::EmptySequence);
    }
    if distances.iter().any(|&d| d == 0) {
        return Err(DcssError::ZeroDistance);
    }
    let sum: u64 = distances.iter().map(|&d| d as u64).sum();
    if sum != n as u64 {
        return Err(DcssError::SumMismatch { sum, n });
    }
    Ok(())
}

/// Prefix sums of `distances` starting at 0: the painting offsets.
pub fn offsets_from_distances(distances: &[u32], n: u32) -> Result<Vec<u32>, DcssError> {
    validate(distances, n)?;
    let mut offsets = Vec::with_capacity(distances.len());
    let mut acc = 0u32;
    for &d in distances {
        offsets.push(acc);
        acc += d;
    }
    Ok(offsets)
}

/// Tests the DCSS condition by enumerating circular run sums.
///
/// `distances` is treated as a circular sequence; every contiguous run of
/// length 1 to k-1 is summed mod `n`. Returns true iff all run sums are
/// pairwise distinct and nonzero. Single-element sequences pass vacuously.
pub fn is_dcss(distances: &[u32], n: u32) -> Result<bool, DcssError> {
    validate(distances, n)?;
    let k = distances.len();
    if k == 1 {
        return Ok(true);
    }
    let mut seen = vec![false; n as usize];
    for start in 0..k {
        let mut sum = 0u32;
        for len in 1..k {
            sum = (sum + distances[(start + len - 1) % k]) % n;
            if sum == 0 || seen[sum as usize] {
                return Ok(false);
            }
            seen[sum as usize] = true;
        }
    }
    Ok(true)
}

/// All `k * (k-1)` ordered circular offset differences `(oi - oj) mod n`, `i != j`.
pub fn circular_differences(offsets: &[u32], n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(offsets.len() * offsets.len().saturating_sub(1));
    for &a in offsets {
        for &b in offsets {
            if a != b {
                out.push((a + n - b) % n);
            }
        }
    }
    out
}

/// The offset-difference formulation of the DCSS condition.
///
/// True iff all circular pairwise differences of `offsets` are distinct
/// and nonzero mod `n`. This is the second route against which
/// [`is_dcss`] is checked.
pub fn offset_differences_distinct(offsets: &[u32], n: u32) -> bool {
    let mut seen = vec![false; n as usize];
    for d in circular_differences(offsets, n) {
        if d == 0 || seen[d as usize] {
            return false;
        }
        seen[d as usize] = true;
    }
    true
}

/// A circular distance sequence with its derived offsets.
///
/// Order matters: the offsets are prefix sums of the distances as given.
/// Construction validates positivity and the sum-to-modulus invariant but
/// not the DCSS condition itself; use [`DcssSequence::is_dcss`] for that.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DcssSequence {
    distances: Vec<u32>,
    n: u32,
    offsets: Vec<u32>,
}

impl DcssSequence {
    pub fn new(distances: Vec<u32>, n: u32) -> Result<Self, DcssError> {
        let offsets = offsets_from_distances(&distances, n)?;
        Ok(DcssSequence { distances, n, offsets })
    }

    /// The canonical 7-element sequence for n = 64.
    pub fn canonical() -> Self {
        DcssSequence::new(CANONICAL_DISTANCES.to_vec(), 64).unwrap()
    }

    pub fn distances(&self) -> &[u32] {
        &self.distances
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_dcss(&self) -> bool {
        is_dcss(&self.distances, self.n).unwrap()
    }

    /// The sequence rotated left by `k` positions (still a valid sequence).
    pub fn rotated(&self, k: usize) -> Self {
        let len = self.distances.len();
        let mut d = Vec::with_capacity(len);
        for i in 0..len {
            d.push(self.distances[(i + k) % len]);
        }
        DcssSequence::new(d, self.n).unwrap()
    }

    /// The lexicographically smallest rotation of the distance list.
    ///
    /// Used to canonicalize search results: rotating the distances
    /// re-anchors which offset is zero, so all rotations describe the
    /// same circular structure.
    pub fn canonical_rotation(&self) -> Vec<u32> {
        canonical_rotation(&self.distances)
    }
}

fn canonical_rotation(distances: &[u32]) -> Vec<u32> {
    let k = distances.len();
    let mut best: Option<Vec<u32>> = None;
    for r in 0..k {
        let mut cand = Vec::with_capacity(k);
        for i in 0..k {
            cand.push(distances[(i + r) % k]);
        }
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap()
}

impl fmt::Display for DcssSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.n)?;
        for (i, d) in self.distances.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DcssSequence {
    type Err = DcssError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n_part, d_part) = s
            .split_once(':')
            .ok_or_else(|| DcssError::Parse(String::from("expected `n: d1,d2,...`")))?;
        let n: u32 = n_part
            .trim()
            .parse()
            .map_err(|_| DcssError::Parse(String::from("bad modulus")))?;
        let mut distances = Vec::new();
        for tok in d_part.split(',') {
            let d: u32 = tok
                .trim()
                .parse()
                .map_err(|_| DcssError::Parse(String::from("bad distance")))?;
            distances.push(d);
        }
        DcssSequence::new(distances, n)
    }
}

/// Caps on the exhaustive search.
#[derive(Debug, Clone)]
pub struct SearchLimits {
    /// Keep at most this many maximal sequences (search still determines
    /// the true maximum cardinality).
    pub max_results: usize,
    /// Abort after visiting this many nodes, if set.
    pub node_budget: Option<u64>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_results: 64,
            node_budget: None,
        }
    }
}

/// Result of [`search_maximal_dcss`].
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Largest DCSS cardinality found.
    pub max_size: usize,
    /// All maximal sequences (canonical rotations, lexicographic order),
    /// truncated to `max_results`.
    pub sequences: Vec<DcssSequence>,
    /// True iff the search space was exhausted; false means the budget or
    /// stop callback fired and larger sequences may exist.
    pub complete: bool,
    /// True iff more maximal sequences existed than `max_results`.
    pub hit_result_cap: bool,
    pub nodes_visited: u64,
}

/// 256-bit set for offset differences.
#[derive(Default)]
struct DiffSet {
    bits: [u64; 4],
}

impl DiffSet {
    fn contains(&self, d: u32) -> bool {
        self.bits[(d / 64) as usize] >> (d % 64) & 1 == 1
    }

    fn insert(&mut self, d: u32) {
        self.bits[(d / 64) as usize] |= 1 << (d % 64);
    }

    fn remove(&mut self, d: u32) {
        self.bits[(d / 64) as usize] &= !(1 << (d % 64));
    }
}

struct SearchState<'a> {
    n: u32,
    offsets: Vec<u32>,
    diffs: DiffSet,
    best_size: usize,
    results: BTreeSet<Vec<u32>>,
    hit_result_cap: bool,
    max_results: usize,
    nodes: u64,
    node_budget: Option<u64>,
    should_stop: &'a mut dyn FnMut() -> bool,
    stopped: bool,
}

impl SearchState<'_> {
    fn check_stop(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        if let Some(budget) = self.node_budget {
            if self.nodes >= budget {
                self.stopped = true;
                return true;
            }
        }
        // The callback may be costly (a clock); sample it.
        if self.nodes % 4096 == 0 && (self.should_stop)() {
            self.stopped = true;
            return true;
        }
        false
    }

    fn record_current(&mut self) {
        let size = self.offsets.len();
        if size < self.best_size {
            return;
        }
        if size > self.best_size {
            self.best_size = size;
            self.results.clear();
            self.hit_result_cap = false;
        }
        let distances = distances_from_sorted_offsets(&self.offsets, self.n);
        let canon = canonical_rotation(&distances);
        if self.results.contains(&canon) {
            return;
        }
        if self.results.len() < self.max_results {
            self.results.insert(canon);
        } else {
            self.hit_result_cap = true;
        }
    }

    fn descend(&mut self, from: u32) {
        let size = self.offsets.len();
        // Neither more candidates than remain nor more than the Sidon
        // difference budget allows can extend this branch.
        let slots_left = (self.n - from) as usize;
        let mut cap_extra = 0usize;
        while (size + cap_extra + 1) * (size + cap_extra) <= (self.n - 1) as usize {
            cap_extra += 1;
        }
        if size + slots_left.min(cap_extra) < self.best_size {
            return;
        }
        for cand in from..self.n {
            self.nodes += 1;
            if self.check_stop() {
                return;
            }
            if self.try_add(cand) {
                self.record_current();
                self.descend(cand + 1);
                self.remove_last(cand);
                if self.stopped {
                    return;
                }
            }
        }
    }

    /// Adds `cand` to the offset set if all new circular differences are
    /// fresh; returns false (with no state change) on collision.
    fn try_add(&mut self, cand: u32) -> bool {
        let mut added: Vec<u32> = Vec::with_capacity(self.offsets.len() * 2);
        for &o in &self.offsets {
            let fwd = (cand + self.n - o) % self.n;
            let back = (o + self.n - cand) % self.n;
            for d in [fwd, back] {
                if self.diffs.contains(d) {
                    for &u in &added {
                        self.diffs.remove(u);
                    }
                    return false;
                }
                self.diffs.insert(d);
                added.push(d);
            }
        }
        self.offsets.push(cand);
        true
    }

    fn remove_last(&mut self, cand: u32) {
        self.offsets.pop();
        for &o in &self.offsets {
            self.diffs.remove((cand + self.n - o) % self.n);
            self.diffs.remove((o + self.n - cand) % self.n);
        }
    }
}

fn distances_from_sorted_offsets(offsets: &[u32], n: u32) -> Vec<u32> {
    let k = offsets.len();
    let mut d = Vec::with_capacity(k);
    for i in 0..k - 1 {
        d.push(offsets[i + 1] - offsets[i]);
    }
    d.push(n - offsets[k - 1] + offsets[0]);
    d
}

/// Exhaustive search for maximum-cardinality DCSS sequences mod `n`.
///
/// Depth-first search over offset sets containing 0, pruning on circular
/// difference collisions. Results are deduplicated by canonical rotation
/// and returned in lexicographic order, so the outcome is deterministic.
/// `should_stop` is polled periodically; when it fires (or the node budget
/// runs out) the outcome carries `complete = false` to distinguish budget
/// exhaustion from a finished search.
pub fn search_maximal_dcss(
    n: u32,
    limits: &SearchLimits,
    mut should_stop: impl FnMut() -> bool,
) -> Result<SearchOutcome, DcssError> {
    if n == 0 {
        return Err(DcssError::ZeroModulus);
    }
    if n > SEARCH_MODULUS_LIMIT {
        return Err(DcssError::ModulusTooLarge { n });
    }

    let mut state = SearchState {
        n,
        offsets: vec![0],
        diffs: DiffSet::default(),
        best_size: 0,
        results: BTreeSet::new(),
        hit_result_cap: false,
        max_results: limits.max_results,
        nodes: 1,
        node_budget: limits.node_budget,
        should_stop: &mut should_stop,
        stopped: false,
    };
    // The singleton {n} is always a (vacuous) DCSS.
    state.record_current();
    if n > 1 {
        state.descend(1);
    }

    let sequences = state
        .results
        .iter()
        .map(|d| DcssSequence::new(d.clone(), n).unwrap())
        .collect();
    Ok(SearchOutcome {
        max_size: state.best_size,
        sequences,
        complete: !state.stopped,
        hit_result_cap: state.hit_result_cap,
        nodes_visited: state.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::chacha;
    use rand::Rng;

    #[test]
    fn canonical_offsets_match() {
        let offsets = offsets_from_distances(&CANONICAL_DISTANCES, 64).unwrap();
        assert_eq!(offsets, CANONICAL_OFFSETS);
    }

    #[test]
    fn trivial_offset_examples() {
        assert_eq!(offsets_from_distances(&[64], 64).unwrap(), [0]);
        assert_eq!(offsets_from_distances(&[32, 32], 64).unwrap(), [0, 32]);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            offsets_from_distances(&[], 64).unwrap_err(),
            DcssError::EmptySequence
        );
        assert_eq!(
            offsets_from_distances(&[0, 64], 64).unwrap_err(),
            DcssError::ZeroDistance
        );
        assert_eq!(
            offsets_from_distances(&[1, 2], 64).unwrap_err(),
            DcssError::SumMismatch { sum: 3, n: 64 }
        );
    }

    #[test]
    fn canonical_sequence_is_dcss() {
        assert!(is_dcss(&CANONICAL_DISTANCES, 64).unwrap());
        let diffs = circular_differences(&CANONICAL_OFFSETS, 64);
        assert_eq!(diffs.len(), 42);
        let mut unique: Vec<u32> = diffs.clone();
        unique.sort_unstable();
        unique.dedup();
        assert_eq!(unique.len(), 42);
        assert!(unique.iter().all(|&d| d != 0));
    }

    #[test]
    fn small_examples() {
        assert!(!is_dcss(&[1, 1, 62], 64).unwrap());
        assert!(is_dcss(&[2, 62], 64).unwrap());
        assert!(is_dcss(&[64], 64).unwrap());
    }

    #[test]
    fn run_sum_and_offset_formulations_agree_on_random_compositions() {
        // 1,000 random compositions of 64.
        let mut rng = chacha(0x5EED_DC55);
        for _ in 0..1000 {
            let mut parts = Vec::new();
            let mut left = 64u32;
            while left > 0 {
                let d = rng.gen_range(1..=left.min(20));
                parts.push(d);
                left -= d;
            }
            let by_runs = is_dcss(&parts, 64).unwrap();
            let offsets = offsets_from_distances(&parts, 64).unwrap();
            let by_offsets = if parts.len() == 1 {
                true
            } else {
                offset_differences_distinct(&offsets, 64)
            };
            assert_eq!(by_runs, by_offsets, "disagreement on {parts:?}");
        }
    }

    #[test]
    fn rotation_preserves_dcss() {
        let seq = DcssSequence::canonical();
        for k in 0..seq.len() {
            assert!(seq.rotated(k).is_dcss());
        }
        let bad = DcssSequence::new(vec![1, 1, 62], 64).unwrap();
        for k in 0..bad.len() {
            assert!(!bad.rotated(k).is_dcss());
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        let seq = DcssSequence::canonical();
        let line = alloc::format!("{seq}");
        assert_eq!(line, "64: 1,2,4,5,8,10,34");
        let parsed: DcssSequence = line.parse().unwrap();
        assert_eq!(parsed, seq);
        assert!("64: 1,2".parse::<DcssSequence>().is_err());
        assert!("garbage".parse::<DcssSequence>().is_err());
    }

    #[test]
    fn search_tiny_moduli() {
        let limits = SearchLimits::default();
        let out = search_maximal_dcss(1, &limits, || false).unwrap();
        assert!(out.complete);
        assert_eq!(out.max_size, 1);
        assert_eq!(out.sequences[0].distances(), [1]);

        let out = search_maximal_dcss(3, &limits, || false).unwrap();
        assert!(out.complete);
        assert_eq!(out.max_size, 2);
        assert!(out
            .sequences
            .iter()
            .any(|s| s.canonical_rotation() == vec![1, 2]));
    }

    #[test]
    fn search_finds_canonical_class_for_64() {
        let out = search_maximal_dcss(64, &SearchLimits::default(), || false).unwrap();
        assert!(out.complete);
        assert!(out.max_size >= 7);
        for seq in &out.sequences {
            assert!(seq.is_dcss());
            assert_eq!(seq.len(), out.max_size);
        }
        if out.max_size == 7 {
            let canon = DcssSequence::canonical().canonical_rotation();
            assert!(
                out.sequences.iter().any(|s| s.canonical_rotation() == canon),
                "canonical sequence missing from complete search"
            );
        }
    }

    #[test]
    fn search_budget_exhaustion_is_reported() {
        let limits = SearchLimits {
            max_results: 8,
            node_budget: Some(10),
        };
        let out = search_maximal_dcss(64, &limits, || false).unwrap();
        assert!(!out.complete);
    }
}
