//! Reed-Solomon codes evaluated at consecutive powers of the field's
//! primitive element, their behaviour under the pair metric, the 2-fold view
//! used by the list decoder, and controlled pair-error injection.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use rand::Rng;

use crate::galois::{Field, FieldElement};
use crate::pair_metric::{self, PairMetricError, Word};
use crate::poly::Poly;

/// Exhaustive-search guard: q^k may not exceed this.
pub const MESSAGE_SPACE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsError {
    DomainError(&'static str),
    /// Message degree exceeds k-1.
    DegreeTooLarge { degree: usize, max: usize },
    /// q^k exceeds the exhaustive-search guard.
    SearchSpaceTooLarge,
    FieldMismatch,
    LengthMismatch { left: usize, right: usize },
}

impl fmt::Display for RsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RsError::DomainError(what) => write!(f, "argument out of range: {what}"),
            RsError::DegreeTooLarge { degree, max } => {
                write!(f, "message degree {degree} exceeds k-1 = {max}")
            }
            RsError::SearchSpaceTooLarge => {
                write!(f, "q^k exceeds the exhaustive-search limit of 2^20")
            }
            RsError::FieldMismatch => write!(f, "operands belong to different fields"),
            RsError::LengthMismatch { left, right } => {
                write!(f, "lengths differ: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for RsError {}

impl From<PairMetricError> for RsError {
    fn from(e: PairMetricError) -> RsError {
        match e {
            PairMetricError::FieldMismatch => RsError::FieldMismatch,
            PairMetricError::LengthMismatch { left, right } => {
                RsError::LengthMismatch { left, right }
            }
            _ => RsError::DomainError("invalid word"),
        }
    }
}

/// Parameters of RS[n, k] over F_q: messages are polynomials of degree < k,
/// codewords their evaluations at gamma^0, gamma^1, ..., gamma^(n-1). The
/// evaluation points are distinct exactly when n <= q - 1, which construction
/// enforces.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    field: Field,
    n: usize,
    k: usize,
    eval_points: Vec<FieldElement>,
}

impl CodeSpec {
    pub fn new(field: &Field, n: usize, k: usize) -> Result<CodeSpec, RsError> {
        if n < 2 {
            return Err(RsError::DomainError("code length must be at least 2"));
        }
        if k < 1 || k > n {
            return Err(RsError::DomainError("dimension must satisfy 1 <= k <= n"));
        }
        if n > (field.order() - 1) as usize {
            return Err(RsError::DomainError(
                "code length must be at most q - 1 (number of distinct powers of gamma)",
            ));
        }
        let gamma = field.gamma();
        let mut eval_points = Vec::with_capacity(n);
        let mut cur = field.one();
        for _ in 0..n {
            eval_points.push(cur);
            cur = field.mul(cur, gamma);
        }
        Ok(CodeSpec { field: field.clone(), n, k, eval_points })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn eval_points(&self) -> &[FieldElement] {
        &self.eval_points
    }

    /// Number of codewords, q^k.
    pub fn message_count(&self) -> BigUint {
        BigUint::from(self.q()).pow(self.k as u32)
    }

    /// Designed minimum pair distance n - k + 2 (valid once 2 <= k < n).
    pub fn designed_pair_distance(&self) -> usize {
        self.n - self.k + 2
    }
}

/// Evaluates a message polynomial of degree <= k-1 at the code's points.
pub fn rs_encode(spec: &CodeSpec, f: &Poly) -> Result<Word, RsError> {
    if !f.is_over(&spec.field) {
        return Err(RsError::FieldMismatch);
    }
    if let Some(d) = f.degree() {
        if d > spec.k - 1 {
            return Err(RsError::DegreeTooLarge { degree: d, max: spec.k - 1 });
        }
    }
    let symbols: Vec<FieldElement> =
        spec.eval_points.iter().map(|&pt| f.eval(&spec.field, pt)).collect();
    Ok(Word::new(&spec.field, symbols)?)
}

/// The 2-fold non-cyclic view of a word: n-1 columns (x_{i-1}, x_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedWord {
    field_id: u32,
    cols: Vec<(FieldElement, FieldElement)>,
}

impl FoldedWord {
    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn cols(&self) -> &[(FieldElement, FieldElement)] {
        &self.cols
    }

    /// Column-wise Hamming distance between folded words.
    pub fn hamming_distance(&self, other: &FoldedWord) -> Result<usize, RsError> {
        if self.field_id != other.field_id {
            return Err(RsError::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(RsError::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(self.cols.iter().zip(&other.cols).filter(|(a, b)| a != b).count())
    }
}

/// Folds x into its n-1 overlapping columns (x_0,x_1), (x_1,x_2), ...,
/// (x_{n-2},x_{n-1}). Unlike the cyclic pair read this drops the wraparound
/// column, so folded Hamming distance never exceeds pair distance.
pub fn fold2(x: &Word) -> FoldedWord {
    let s = x.symbols();
    let cols = s.windows(2).map(|w| (w[0], w[1])).collect();
    FoldedWord { field_id: x.field_id(), cols }
}

/// Reconstructs the word from overlapping columns, checking the overlaps
/// agree.
pub fn unfold(field: &Field, folded: &FoldedWord) -> Result<Word, RsError> {
    if folded.cols.is_empty() {
        return Err(RsError::DomainError("folded word must have at least one column"));
    }
    let mut symbols = Vec::with_capacity(folded.cols.len() + 1);
    symbols.push(folded.cols[0].0);
    for (i, &(a, b)) in folded.cols.iter().enumerate() {
        if a != symbols[i] {
            return Err(RsError::DomainError("folded columns do not overlap consistently"));
        }
        symbols.push(b);
    }
    Ok(Word::new(field, symbols)?)
}

/// A codeword attaining the minimum pair distance n - k + 2, together with
/// its message: f = (x - gamma^0)(x - gamma^1)...(x - gamma^(k-2)). Its
/// zeros occupy positions 0..k-2, one cyclic run, so the pair weight is
/// (n - k + 1) + 1. Requires 2 <= k < n.
pub fn min_pair_distance_witness(spec: &CodeSpec) -> Result<(Poly, Word), RsError> {
    if spec.k < 2 || spec.k >= spec.n {
        return Err(RsError::DomainError("witness construction needs 2 <= k < n"));
    }
    let f = Poly::from_roots(&spec.field, &spec.eval_points[..spec.k - 1]);
    let c = rs_encode(spec, &f)?;
    debug_assert_eq!(c.hamming_weight(), spec.n - spec.k + 1);
    debug_assert_eq!(pair_metric::pair_weight(&c), spec.n - spec.k + 2);
    Ok((f, c))
}

/// Minimum pair weight over all nonzero codewords, by exhausting the q^k
/// messages (linearity: min distance = min nonzero weight). Guarded by
/// [`MESSAGE_SPACE_LIMIT`].
pub fn min_pair_distance_exhaustive(spec: &CodeSpec) -> Result<usize, RsError> {
    let mut space = 1u64;
    for _ in 0..spec.k {
        space = space.saturating_mul(spec.q() as u64);
        if space > MESSAGE_SPACE_LIMIT {
            return Err(RsError::SearchSpaceTooLarge);
        }
    }
    let q = spec.q();
    let mut best = usize::MAX;
    let mut coeffs = alloc::vec![0u32; spec.k];
    loop {
        // Advance odometer; the all-zero message is skipped below.
        let mut i = 0;
        loop {
            if i == spec.k {
                return Ok(best);
            }
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        let f = Poly::from_indices(&spec.field, &coeffs).map_err(|_| RsError::FieldMismatch)?;
        let c = rs_encode(spec, &f)?;
        best = best.min(pair_metric::pair_weight(&c));
    }
}

/// How injected pair errors are arranged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorPattern {
    /// Maximize the number of runs: r = floor(t/2) separated single-ish runs.
    #[default]
    Spread,
    /// One contiguous burst: a single run of t-1 corrupted symbols.
    Burst,
}

/// Corrupts `x` with pair weight exactly `t` (for 2 <= t <= n): picks a run
/// count r and corrupted-symbol count h with h + r = t, places r pairwise
/// non-adjacent cyclic runs totalling h symbols, and adds a uniform nonzero
/// error on each corrupted position. t <= 1 returns x unchanged (a pair
/// distance of exactly 1 is unattainable).
pub fn inject_pair_errors<R: Rng + ?Sized>(
    field: &Field,
    x: &Word,
    t: usize,
    pattern: ErrorPattern,
    rng: &mut R,
) -> Result<Word, RsError> {
    if !field.owns(x.symbols()[0]) {
        return Err(RsError::FieldMismatch);
    }
    let n = x.len();
    if t > n {
        return Err(RsError::DomainError("pair-error budget cannot exceed n"));
    }
    if t <= 1 {
        return Ok(x.clone());
    }
    let runs = match pattern {
        ErrorPattern::Spread => t / 2,
        ErrorPattern::Burst => 1,
    };
    let h = t - runs; // corrupted symbols; h >= runs >= 1 and h + runs <= n
    debug_assert!((1..=h).contains(&runs) && h + runs <= n);

    // Run lengths: distribute h over `runs` runs as evenly as possible.
    let base = h / runs;
    let extra = h % runs;
    let lengths: Vec<usize> =
        (0..runs).map(|i| base + usize::from(i < extra)).collect();

    // Gaps between consecutive runs (cyclically): each at least 1, with the
    // remaining slack spread uniformly at random.
    let mut gaps = alloc::vec![1usize; runs];
    let mut slack = n - h - runs;
    while slack > 0 {
        let i = rng.gen_range(0..runs);
        gaps[i] += 1;
        slack -= 1;
    }

    let start = rng.gen_range(0..n);
    let mut symbols = x.symbols().to_vec();
    let q = field.order();
    let mut pos = start;
    for (len, gap) in lengths.iter().zip(&gaps) {
        for _ in 0..*len {
            let e = field.element(rng.gen_range(1..q)).expect("nonzero error symbol");
            symbols[pos % n] = field.add(symbols[pos % n], e);
            pos += 1;
        }
        pos += gap;
    }
    let y = Word::new(field, symbols)?;
    debug_assert_eq!(pair_metric::pair_distance(&y, x).unwrap(), t);
    Ok(y)
}
