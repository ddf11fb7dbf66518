//! The symbol-pair metric: pair reads, pair distance/weight, run profiles,
//! and exact/asymptotic sizes of pair-metric balls.
//!
//! The pair read of x = (x_0, ..., x_{n-1}) is the length-n vector of
//! overlapping cyclic pairs ((x_0,x_1), (x_1,x_2), ..., (x_{n-1},x_0)); the
//! pair distance between two words is the Hamming distance of their pair
//! reads.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::galois::{Field, FieldElement};

/// Enumeration guard: `ball_enumerate` refuses spaces larger than this.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMetricError {
    /// Words must have length at least 2 for the cyclic pair read.
    LengthTooShort { n: usize },
    LengthMismatch { left: usize, right: usize },
    FieldMismatch,
    SymbolOutOfRange { idx: u32, q: u32 },
    /// Out-of-range numeric argument (details in Display).
    DomainError(&'static str),
    /// q^n exceeds the enumeration guard.
    SearchSpaceTooLarge,
}

impl fmt::Display for PairMetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairMetricError::LengthTooShort { n } => {
                write!(f, "word length {n} is below the minimum of 2")
            }
            PairMetricError::LengthMismatch { left, right } => {
                write!(f, "word lengths differ: {left} vs {right}")
            }
            PairMetricError::FieldMismatch => write!(f, "words belong to different fields"),
            PairMetricError::SymbolOutOfRange { idx, q } => {
                write!(f, "symbol {idx} out of range for alphabet of size {q}")
            }
            PairMetricError::DomainError(what) => write!(f, "argument out of range: {what}"),
            PairMetricError::SearchSpaceTooLarge => {
                write!(f, "q^n exceeds the enumeration limit of 2^24")
            }
        }
    }
}

impl core::error::Error for PairMetricError {}

/// A word of length n >= 2 over a finite field. Length and field membership
/// are validated at construction, so the metric operations below cannot fail
/// on a well-formed pair of words of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    field_id: u32,
    q: u32,
    symbols: Vec<FieldElement>,
}

impl Word {
    pub fn new(field: &Field, symbols: Vec<FieldElement>) -> Result<Word, PairMetricError> {
        if symbols.len() < 2 {
            return Err(PairMetricError::LengthTooShort { n: symbols.len() });
        }
        if symbols.iter().any(|s| !field.owns(*s)) {
            return Err(PairMetricError::FieldMismatch);
        }
        Ok(Word { field_id: field.id(), q: field.order(), symbols })
    }

    pub fn from_indices(field: &Field, indices: &[u32]) -> Result<Word, PairMetricError> {
        let symbols = indices
            .iter()
            .map(|&i| {
                field
                    .element(i)
                    .map_err(|_| PairMetricError::SymbolOutOfRange { idx: i, q: field.order() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(field, symbols)
    }

    pub fn zero(field: &Field, n: usize) -> Result<Word, PairMetricError> {
        Word::new(field, vec![field.zero(); n])
    }

    pub(crate) fn from_raw(field_id: u32, q: u32, symbols: Vec<FieldElement>) -> Word {
        debug_assert!(symbols.len() >= 2);
        Word { field_id, q, symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 2 by construction
    }

    pub fn symbols(&self) -> &[FieldElement] {
        &self.symbols
    }

    pub fn field_id(&self) -> u32 {
        self.field_id
    }

    /// Order of the underlying field / alphabet.
    pub fn field_order(&self) -> u32 {
        self.q
    }

    pub fn indices(&self) -> Vec<u32> {
        self.symbols.iter().map(|s| s.index()).collect()
    }

    /// Rotates left by `s`: result_i = self_{(i+s) mod n}.
    pub fn cyclic_shift(&self, s: usize) -> Word {
        let n = self.symbols.len();
        let symbols = (0..n).map(|i| self.symbols[(i + s) % n]).collect();
        Word { field_id: self.field_id, q: self.q, symbols }
    }

    /// Coordinate-wise sum; the words must share field and length.
    pub fn add(&self, field: &Field, other: &Word) -> Result<Word, PairMetricError> {
        self.zip(field, other, |f, a, b| f.add(a, b))
    }

    /// Coordinate-wise difference; the words must share field and length.
    pub fn sub(&self, field: &Field, other: &Word) -> Result<Word, PairMetricError> {
        self.zip(field, other, |f, a, b| f.sub(a, b))
    }

    fn zip(
        &self,
        field: &Field,
        other: &Word,
        op: impl Fn(&Field, FieldElement, FieldElement) -> FieldElement,
    ) -> Result<Word, PairMetricError> {
        if self.field_id != other.field_id || field.id() != self.field_id {
            return Err(PairMetricError::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(PairMetricError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(&a, &b)| op(field, a, b))
            .collect();
        Ok(Word { field_id: self.field_id, q: self.q, symbols })
    }

    pub fn hamming_weight(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn hamming_distance(&self, other: &Word) -> Result<usize, PairMetricError> {
        if self.field_id != other.field_id {
            return Err(PairMetricError::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(PairMetricError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.symbols.iter().zip(&other.symbols).filter(|(a, b)| a != b).count())
    }
}

/// The cyclic pair read of a word: n overlapping (x_i, x_{i+1 mod n}) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairView {
    pairs: Vec<(FieldElement, FieldElement)>,
}

impl PairView {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(FieldElement, FieldElement)] {
        &self.pairs
    }
}

pub fn pair_read(x: &Word) -> PairView {
    let n = x.len();
    let pairs = (0..n).map(|i| (x.symbols[i], x.symbols[(i + 1) % n])).collect();
    PairView { pairs }
}

/// Number of positions where the pair reads of x and y differ.
pub fn pair_distance(x: &Word, y: &Word) -> Result<usize, PairMetricError> {
    if x.field_id != y.field_id {
        return Err(PairMetricError::FieldMismatch);
    }
    if x.len() != y.len() {
        return Err(PairMetricError::LengthMismatch { left: x.len(), right: y.len() });
    }
    let n = x.len();
    let count = (0..n)
        .filter(|&i| {
            let j = (i + 1) % n;
            x.symbols[i] != y.symbols[i] || x.symbols[j] != y.symbols[j]
        })
        .count();
    Ok(count)
}

/// Pair weight: number of nonzero pairs in the pair read, i.e. positions i
/// with x_i != 0 or x_{i+1} != 0.
pub fn pair_weight(x: &Word) -> usize {
    let n = x.len();
    (0..n)
        .filter(|&i| !x.symbols[i].is_zero() || !x.symbols[(i + 1) % n].is_zero())
        .count()
}

/// Hamming weight plus the number of maximal cyclic runs of nonzero symbols.
/// For words that are neither all-zero nor all-nonzero, pair weight equals
/// `hamming_weight + runs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunProfile {
    pub hamming_weight: usize,
    pub runs: usize,
}

pub fn run_profile(x: &Word) -> RunProfile {
    let n = x.len();
    let h = x.hamming_weight();
    let runs = if h == 0 {
        0
    } else if h == n {
        1 // a single run wrapping the whole cycle
    } else {
        (0..n)
            .filter(|&i| !x.symbols[i].is_zero() && x.symbols[(i + n - 1) % n].is_zero())
            .count()
    };
    RunProfile { hamming_weight: h, runs }
}

pub(crate) fn pair_distance_raw(a: &[u32], b: &[u32]) -> usize {
    let n = a.len();
    (0..n)
        .filter(|&i| {
            let j = (i + 1) % n;
            a[i] != b[i] || a[j] != b[j]
        })
        .count()
}

fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::from(0u32);
    }
    let b = b.min(a - b);
    let mut res = BigUint::from(1u32);
    for i in 1..=b {
        res = res * BigUint::from(a - b + i) / BigUint::from(i);
    }
    res
}

/// Number of binary cyclic patterns of length n with Hamming weight l spread
/// over exactly w maximal cyclic runs: (n/w) C(l-1, w-1) C(n-l-1, w-1).
pub fn runs_count(n: usize, l: usize, w: usize) -> Result<BigUint, PairMetricError> {
    if n < 2 {
        return Err(PairMetricError::DomainError("n must be at least 2"));
    }
    if w < 1 || w > l || l > n - 1 {
        return Err(PairMetricError::DomainError("need 1 <= w <= l <= n-1"));
    }
    Ok(runs_count_unchecked(n as u64, l as u64, w as u64))
}

fn runs_count_unchecked(n: u64, l: u64, w: u64) -> BigUint {
    let prod = BigUint::from(n) * binomial(l - 1, w - 1) * binomial(n - l - 1, w - 1);
    debug_assert!((&prod % BigUint::from(w)) == BigUint::from(0u32));
    prod / BigUint::from(w)
}

/// Exact number of words within pair distance r of any fixed center:
/// 1 + sum over pair weights i of sum over Hamming weights k of
/// runs_count(n, k, i-k) (q-1)^k, plus the (q-1)^n all-nonzero words once
/// r reaches n (those have pair weight exactly n and fall outside the
/// run-splitting sum).
pub fn ball_size_exact(n: usize, q: u32, r: usize) -> Result<BigUint, PairMetricError> {
    if n < 2 {
        return Err(PairMetricError::DomainError("n must be at least 2"));
    }
    if q < 2 {
        return Err(PairMetricError::DomainError("q must be at least 2"));
    }
    if r > n {
        return Err(PairMetricError::DomainError("radius must satisfy 0 <= r <= n"));
    }
    let qm1 = BigUint::from(q - 1);
    let mut total = BigUint::from(1u32);
    for i in 2..=r {
        for k in i.div_ceil(2)..i {
            let w = i - k;
            if w <= k && k < n && w >= 1 {
                total += runs_count_unchecked(n as u64, k as u64, w as u64)
                    * qm1.pow(k as u32);
            }
        }
    }
    if r >= n {
        total += qm1.pow(n as u32);
    }
    Ok(total)
}

/// log_q of the pair-ball size at relative radius delta (absolute radius
/// floor(delta * n), with a tiny guard against float roundoff). Computed in
/// the log domain with log-gamma and a log-sum-exp accumulation so it stays
/// finite far beyond exact-integer range.
pub fn ball_size_log(n: usize, q: u32, delta: f64) -> Result<f64, PairMetricError> {
    if n < 2 {
        return Err(PairMetricError::DomainError("n must be at least 2"));
    }
    if q < 2 {
        return Err(PairMetricError::DomainError("q must be at least 2"));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(PairMetricError::DomainError("delta must lie in [0, 1]"));
    }
    let r = libm::floor(delta * n as f64 + 1e-9) as usize;
    let r = r.min(n);
    let ln_qm1 = libm::log((q - 1) as f64);
    let ln_n = libm::log(n as f64);
    // ln C(a, b) via log-gamma.
    let ln_choose = |a: usize, b: usize| -> f64 {
        libm::lgamma((a + 1) as f64) - libm::lgamma((b + 1) as f64)
            - libm::lgamma((a - b + 1) as f64)
    };
    let mut terms: Vec<f64> = Vec::new();
    terms.push(0.0); // the center
    for i in 2..=r {
        for k in i.div_ceil(2)..i {
            let w = i - k;
            if !(w >= 1 && w <= k && k < n && w <= n - k) {
                continue; // the run-count is zero here
            }
            let t = ln_n - libm::log(w as f64)
                + ln_choose(k - 1, w - 1)
                + ln_choose(n - k - 1, w - 1)
                + k as f64 * ln_qm1;
            terms.push(t);
        }
    }
    if r >= n {
        terms.push(n as f64 * ln_qm1);
    }
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|&t| libm::exp(t - m)).sum();
    Ok((m + libm::log(sum)) / libm::log(q as f64))
}

/// Lazily enumerates every word within pair distance r of the center, in
/// odometer order over symbol indices (last coordinate fastest). Refuses
/// spaces with q^n > 2^24.
pub fn ball_enumerate(center: &Word, r: usize) -> Result<BallEnumerate, PairMetricError> {
    let n = center.len();
    if r > n {
        return Err(PairMetricError::DomainError("radius must satisfy 0 <= r <= n"));
    }
    let mut space = 1u64;
    for _ in 0..n {
        space = space.saturating_mul(center.q as u64);
        if space > ENUMERATION_LIMIT {
            return Err(PairMetricError::SearchSpaceTooLarge);
        }
    }
    Ok(BallEnumerate {
        field_id: center.field_id,
        q: center.q,
        center: center.indices(),
        r,
        cursor: vec![0u32; n],
        done: false,
    })
}

#[derive(Debug)]
pub struct BallEnumerate {
    field_id: u32,
    q: u32,
    center: Vec<u32>,
    r: usize,
    cursor: Vec<u32>,
    done: bool,
}

impl Iterator for BallEnumerate {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while !self.done {
            let hit = pair_distance_raw(&self.cursor, &self.center) <= self.r;
            let word = if hit {
                let symbols = self
                    .cursor
                    .iter()
                    .map(|&i| FieldElement::from_raw(self.field_id, i))
                    .collect();
                Some(Word::from_raw(self.field_id, self.q, symbols))
            } else {
                None
            };
            // Advance the odometer (last coordinate fastest).
            let mut i = self.cursor.len();
            loop {
                if i == 0 {
                    self.done = true;
                    break;
                }
                i -= 1;
                self.cursor[i] += 1;
                if self.cursor[i] < self.q {
                    break;
                }
                self.cursor[i] = 0;
            }
            if let Some(w) = word {
                return Some(w);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::galois::Field;

    fn word(field: &Field, idx: &[u32]) -> Word {
        Word::from_indices(field, idx).unwrap()
    }

    #[test]
    fn construction_errors() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(
            Word::from_indices(&f, &[1]).unwrap_err(),
            PairMetricError::LengthTooShort { n: 1 }
        );
        assert_eq!(
            Word::from_indices(&f, &[0, 2]).unwrap_err(),
            PairMetricError::SymbolOutOfRange { idx: 2, q: 2 }
        );
        let f5 = Field::new(5, 1).unwrap();
        let mixed = vec![f.zero(), f5.one()];
        assert_eq!(Word::new(&f, mixed).unwrap_err(), PairMetricError::FieldMismatch);
    }

    #[test]
    fn pair_read_wraps_cyclically() {
        let f = Field::new(5, 1).unwrap();
        let x = word(&f, &[1, 2, 3]);
        let v = pair_read(&x);
        let idx: Vec<(u32, u32)> =
            v.pairs().iter().map(|&(a, b)| (a.index(), b.index())).collect();
        assert_eq!(idx, vec![(1, 2), (2, 3), (3, 1)]);
    }

    #[test]
    fn distance_error_paths() {
        let f = Field::new(3, 1).unwrap();
        let f2 = Field::new(2, 1).unwrap();
        let x = word(&f, &[0, 1, 2]);
        let y = word(&f, &[0, 1]);
        assert_eq!(
            pair_distance(&x, &y).unwrap_err(),
            PairMetricError::LengthMismatch { left: 3, right: 2 }
        );
        let z = word(&f2, &[0, 1]);
        assert_eq!(pair_distance(&y, &z).unwrap_err(), PairMetricError::FieldMismatch);
    }

    #[test]
    fn pair_weight_and_run_profile_examples() {
        let f = Field::new(2, 1).unwrap();
        let x = word(&f, &[0, 1, 1, 0]);
        assert_eq!(run_profile(&x), RunProfile { hamming_weight: 2, runs: 1 });
        assert_eq!(pair_weight(&x), 3); // h + runs when 0 < h < n

        let ones = word(&f, &[1, 1, 1, 1]);
        assert_eq!(run_profile(&ones), RunProfile { hamming_weight: 4, runs: 1 });
        assert_eq!(pair_weight(&ones), 4); // full weight: exactly n, not h + runs

        let zero = word(&f, &[0, 0, 0, 0]);
        assert_eq!(run_profile(&zero), RunProfile { hamming_weight: 0, runs: 0 });
        assert_eq!(pair_weight(&zero), 0);

        let alt = word(&f, &[1, 0, 1, 0]);
        assert_eq!(run_profile(&alt), RunProfile { hamming_weight: 2, runs: 2 });
        assert_eq!(pair_weight(&alt), 4);
    }

    #[test]
    fn run_identity_on_all_binary_words_up_to_n8() {
        // pair_weight == hamming + runs whenever 0 < h < n.
        let f = Field::new(2, 1).unwrap();
        for n in 2..=8usize {
            for bits in 0..(1u32 << n) {
                let idx: Vec<u32> = (0..n).map(|i| (bits >> i) & 1).collect();
                let x = word(&f, &idx);
                let prof = run_profile(&x);
                let wp = pair_weight(&x);
                if prof.hamming_weight == 0 {
                    assert_eq!(wp, 0);
                } else if prof.hamming_weight == n {
                    assert_eq!(wp, n);
                } else {
                    assert_eq!(wp, prof.hamming_weight + prof.runs);
                }
            }
        }
    }

    #[test]
    fn runs_count_examples_and_domain() {
        assert_eq!(runs_count(2, 1, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(runs_count(4, 3, 2).unwrap(), BigUint::from(0u32));
        assert_eq!(runs_count(6, 3, 2).unwrap(), BigUint::from(12u32));
        assert!(runs_count(4, 4, 1).is_err()); // l must be <= n-1
        assert!(runs_count(4, 2, 3).is_err()); // w must be <= l
        assert!(runs_count(4, 2, 0).is_err());
        assert!(runs_count(1, 1, 1).is_err());
    }

    #[test]
    fn ball_size_exact_pinned_values() {
        let b = |n, q, r| ball_size_exact(n, q, r).unwrap();
        // Values cross-checked against exhaustive enumeration.
        assert_eq!(b(2, 2, 2), BigUint::from(4u32)); // needs the all-nonzero correction
        assert_eq!(b(5, 2, 3), BigUint::from(11u32));
        assert_eq!(b(4, 2, 2), BigUint::from(5u32));
        assert_eq!(b(8, 2, 4), BigUint::from(45u32));
        assert_eq!(b(5, 3, 3), BigUint::from(31u32));
        assert_eq!(b(4, 4, 2), BigUint::from(13u32));
        assert_eq!(b(3, 5, 2), BigUint::from(13u32));
        assert_eq!(b(12, 2, 5), BigUint::from(199u32));
        assert_eq!(b(8, 3, 4), BigUint::from(193u32));
        assert_eq!(b(7, 8, 6), BigUint::from(197961u32));
        // Radius n covers the whole space.
        assert_eq!(b(16, 2, 16), BigUint::from(65536u32));
        assert_eq!(b(10, 3, 10), BigUint::from(59049u32));
        // Radius 0 and 1 both give just the center (pair distance 1 is impossible).
        assert_eq!(b(6, 4, 0), BigUint::from(1u32));
        assert_eq!(b(6, 4, 1), BigUint::from(1u32));
        assert!(ball_size_exact(5, 2, 6).is_err());
        assert!(ball_size_exact(1, 2, 0).is_err());
        assert!(ball_size_exact(5, 1, 0).is_err());
    }

    #[test]
    fn ball_size_log_matches_exact_small() {
        // log_2 of the exact count 11 at (n, q, delta) = (5, 2, 3/5).
        let got = ball_size_log(5, 2, 0.6).unwrap();
        let expect = 3.459431618637297; // log2(11)
        assert!((got - expect).abs() <= 1e-9 * expect, "got {got}");

        for (n, q, r) in [(8usize, 2u32, 4usize), (7, 8, 6), (12, 2, 5), (10, 3, 10)] {
            let delta = r as f64 / n as f64;
            let got = ball_size_log(n, q, delta).unwrap();
            let exact_bits = super::ball_size_exact(n, q, r).unwrap();
            let exact = exact_bits.to_string().parse::<f64>().unwrap();
            let expect = libm::log(exact) / libm::log(q as f64);
            assert!(
                (got - expect).abs() <= 1e-9 * expect.abs().max(1.0),
                "(n={n}, q={q}, r={r}): got {got}, expected {expect}"
            );
        }
    }

    #[test]
    fn ball_enumerate_counts_and_guard() {
        let f = Field::new(2, 1).unwrap();
        let center = Word::zero(&f, 5).unwrap();
        assert_eq!(ball_enumerate(&center, 3).unwrap().count(), 11);
        assert_eq!(ball_enumerate(&center, 5).unwrap().count(), 32);
        // Every enumerated word really is within distance r.
        for w in ball_enumerate(&center, 3).unwrap() {
            assert!(pair_distance(&w, &center).unwrap() <= 3);
        }
        // Off-center: ball sizes are center-independent.
        let c2 = word(&f, &[1, 0, 1, 1, 0]);
        assert_eq!(ball_enumerate(&c2, 3).unwrap().count(), 11);

        let f257 = Field::new(257, 1).unwrap();
        let big_center = Word::zero(&f257, 4).unwrap();
        assert_eq!(
            ball_enumerate(&big_center, 2).unwrap_err(),
            PairMetricError::SearchSpaceTooLarge
        );
    }

    #[test]
    fn word_shift_and_translation_helpers() {
        let f = Field::new(5, 1).unwrap();
        let x = word(&f, &[1, 2, 3, 4]);
        assert_eq!(x.cyclic_shift(1).indices(), vec![2, 3, 4, 1]);
        assert_eq!(x.cyclic_shift(4).indices(), x.indices());
        let y = word(&f, &[4, 4, 4, 4]);
        let diff = x.sub(&f, &y).unwrap();
        assert_eq!(diff.indices(), vec![2, 3, 4, 0]);
        let back = diff.add(&f, &y).unwrap();
        assert_eq!(back, x);
    }
}
