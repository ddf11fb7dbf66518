//! Random-code experiments probing list decodability under the pair metric.
//!
//! The headline experiment samples codes of rate just below 1 - kappa - eps
//! (kappa being the pair-ball growth exponent at the chosen radius) and
//! measures the largest number of codewords any single ball of that radius
//! contains, checking it against the list-size target ceil(4/eps) - 1. A
//! double-counting identity over all centers provides an exact self-check of
//! the ball-size formula on sampled codes.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{self, BoundsError};
use crate::galois::Field;
use crate::pair_metric::{self, PairMetricError, Word};

/// Exhaustive center enumeration and sampled code sizes are both capped at
/// 2^20.
pub const EXPERIMENT_SPACE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentError {
    DomainError(&'static str),
    /// q^n (for exhaustive center scans) or the code size exceeds 2^20.
    SearchSpaceTooLarge,
    FieldMismatch,
    Bounds(BoundsError),
    Metric(PairMetricError),
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::DomainError(what) => write!(f, "argument out of range: {what}"),
            ExperimentError::SearchSpaceTooLarge => {
                write!(f, "enumeration space exceeds the 2^20 limit")
            }
            ExperimentError::FieldMismatch => write!(f, "operands belong to different fields"),
            ExperimentError::Bounds(e) => write!(f, "bound evaluation failed: {e}"),
            ExperimentError::Metric(e) => write!(f, "pair-metric evaluation failed: {e}"),
        }
    }
}

impl core::error::Error for ExperimentError {}

impl From<BoundsError> for ExperimentError {
    fn from(e: BoundsError) -> ExperimentError {
        ExperimentError::Bounds(e)
    }
}

impl From<PairMetricError> for ExperimentError {
    fn from(e: PairMetricError) -> ExperimentError {
        ExperimentError::Metric(e)
    }
}

/// SplitMix64 step; scrambles a seed into a well-mixed 64-bit value.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Per-trial RNG seed: splitmix64 of the master seed advanced by (i+1)
/// golden-ratio steps, so trials are decorrelated but fully reproducible.
pub fn trial_seed(master_seed: u64, index: usize) -> u64 {
    splitmix64(master_seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E3779B97F4A7C15)))
}

/// ceil(q^(rate * n)), the code size matching a target rate; rejected when it
/// exceeds 2^20.
pub fn code_size_for_rate(q: u32, n: usize, rate: f64) -> Result<usize, ExperimentError> {
    if q < 2 {
        return Err(ExperimentError::DomainError("q must be at least 2"));
    }
    if n < 2 {
        return Err(ExperimentError::DomainError("n must be at least 2"));
    }
    if !(0.0..=1.0).contains(&rate) {
        return Err(ExperimentError::DomainError("rate must lie in [0, 1]"));
    }
    let m = libm::ceil(libm::pow(q as f64, rate * n as f64));
    if !(1.0..=EXPERIMENT_SPACE_LIMIT as f64).contains(&m) {
        return Err(ExperimentError::SearchSpaceTooLarge);
    }
    Ok(m as usize)
}

/// Samples `size` words of length n uniformly (rows drawn in order, symbols
/// left to right), seeded; repeats are kept, matching the random-code model.
pub fn sample_random_code(
    field: &Field,
    n: usize,
    size: usize,
    seed: u64,
) -> Result<Vec<Word>, ExperimentError> {
    if n < 2 {
        return Err(ExperimentError::DomainError("n must be at least 2"));
    }
    if size == 0 {
        return Err(ExperimentError::DomainError("code must have at least one word"));
    }
    if size as u64 > EXPERIMENT_SPACE_LIMIT {
        return Err(ExperimentError::SearchSpaceTooLarge);
    }
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut code = Vec::with_capacity(size);
    for _ in 0..size {
        let indices: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        code.push(Word::from_indices(field, &indices).map_err(ExperimentError::Metric)?);
    }
    Ok(code)
}

fn code_indices(field: &Field, code: &[Word]) -> Result<(usize, Vec<Vec<u32>>), ExperimentError> {
    let Some(first) = code.first() else {
        return Err(ExperimentError::DomainError("code must have at least one word"));
    };
    let n = first.len();
    for w in code {
        if w.field_id() != field.id() {
            return Err(ExperimentError::FieldMismatch);
        }
        if w.len() != n {
            return Err(ExperimentError::DomainError("codewords must share one length"));
        }
    }
    Ok((n, code.iter().map(|w| w.indices()).collect()))
}

fn list_count(rows: &[Vec<u32>], center: &[u32], radius: usize) -> usize {
    rows.iter().filter(|row| pair_metric::pair_distance_raw(row, center) <= radius).count()
}

/// Largest number of codewords (with multiplicity) in any pair ball of the
/// given radius, over every center in F_q^n. Guarded by q^n <= 2^20.
pub fn max_list_size_exhaustive(
    field: &Field,
    code: &[Word],
    radius: usize,
) -> Result<usize, ExperimentError> {
    let (n, rows) = code_indices(field, code)?;
    let q = field.order();
    let mut space = 1u64;
    for _ in 0..n {
        space = space.saturating_mul(q as u64);
        if space > EXPERIMENT_SPACE_LIMIT {
            return Err(ExperimentError::SearchSpaceTooLarge);
        }
    }
    let mut center = alloc::vec![0u32; n];
    let mut best = list_count(&rows, &center, radius);
    loop {
        let mut i = 0;
        loop {
            if i == n {
                return Ok(best);
            }
            center[i] += 1;
            if center[i] < q {
                break;
            }
            center[i] = 0;
            i += 1;
        }
        best = best.max(list_count(&rows, &center, radius));
    }
}

/// Same measurement over `centers` uniformly sampled centers; a seeded,
/// reproducible lower bound on the exhaustive value.
pub fn max_list_size_sampled(
    field: &Field,
    code: &[Word],
    radius: usize,
    centers: usize,
    seed: u64,
) -> Result<usize, ExperimentError> {
    if centers == 0 {
        return Err(ExperimentError::DomainError("need at least one sampled center"));
    }
    let (n, rows) = code_indices(field, code)?;
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut center = alloc::vec![0u32; n];
    let mut best = 0;
    for _ in 0..centers {
        for c in center.iter_mut() {
            *c = rng.gen_range(0..q);
        }
        best = best.max(list_count(&rows, &center, radius));
    }
    Ok(best)
}

/// Both sides of the double-counting identity
/// sum over centers x of |{c in C : d_P(x, c) <= r}|  =  |C| * |B_P(r)|,
/// evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCountCheck {
    /// Sum of list sizes over all q^n centers.
    pub per_center_sum: BigUint,
    /// Code size times the exact ball size.
    pub per_codeword_sum: BigUint,
    pub consistent: bool,
}

/// Exhaustively verifies the double-counting identity for a code; exact
/// integer arithmetic throughout. Guarded by q^n <= 2^20.
pub fn double_counting_check(
    field: &Field,
    code: &[Word],
    radius: usize,
) -> Result<DoubleCountCheck, ExperimentError> {
    let (n, rows) = code_indices(field, code)?;
    let q = field.order();
    if radius > n {
        return Err(ExperimentError::DomainError("radius cannot exceed n"));
    }
    let mut space = 1u64;
    for _ in 0..n {
        space = space.saturating_mul(q as u64);
        if space > EXPERIMENT_SPACE_LIMIT {
            return Err(ExperimentError::SearchSpaceTooLarge);
        }
    }
    // Counts fit comfortably in u64 (at most 2^20 centers times 2^20 words).
    let mut total = 0u64;
    let mut center = alloc::vec![0u32; n];
    loop {
        total += list_count(&rows, &center, radius) as u64;
        let mut i = 0;
        loop {
            if i == n {
                let per_center_sum = BigUint::from(total);
                let ball = pair_metric::ball_size_exact(n, q, radius)?;
                let per_codeword_sum = BigUint::from(rows.len()) * ball;
                let consistent = per_center_sum == per_codeword_sum;
                return Ok(DoubleCountCheck { per_center_sum, per_codeword_sum, consistent });
            }
            center[i] += 1;
            if center[i] < q {
                break;
            }
            center[i] = 0;
            i += 1;
        }
    }
}

/// Inputs of one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentParams {
    pub q: u32,
    pub n: usize,
    /// Pair-metric radius of the balls being measured.
    pub radius: usize,
    /// Rate used to size the code.
    pub rate: f64,
    /// Codewords per sampled code, ceil(q^(rate n)).
    pub code_size: usize,
    pub trials: usize,
    /// Max-list target; a trial is "within bound" when its maximum list size
    /// does not exceed this.
    pub list_bound: usize,
    pub master_seed: u64,
    /// `None` scans every center (guarded); `Some(c)` samples c centers per
    /// trial.
    pub centers_per_trial: Option<usize>,
}

/// Outcome of a single sampled code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialResult {
    pub index: usize,
    pub seed: u64,
    pub max_list: usize,
    pub within_bound: bool,
}

/// Aggregated experiment outcome. Timing is left to callers that have a
/// clock; the core fills `runtime_seconds` with `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub params: ExperimentParams,
    /// Human-readable description of how per-trial seeds derive from the
    /// master seed.
    pub seed_scheme: String,
    pub trials: Vec<TrialResult>,
    pub max_list_overall: usize,
    /// Share of trials within the list bound; 1.0 when there are no trials.
    pub fraction_within_bound: f64,
    pub runtime_seconds: Option<f64>,
}

/// Runs one trial: sample a code from the trial seed, measure its maximum
/// list size (exhaustively or over sampled centers).
pub fn experiment_trial(
    field: &Field,
    params: &ExperimentParams,
    index: usize,
) -> Result<TrialResult, ExperimentError> {
    if field.order() != params.q {
        return Err(ExperimentError::FieldMismatch);
    }
    let seed = trial_seed(params.master_seed, index);
    let code = sample_random_code(field, params.n, params.code_size, seed)?;
    let max_list = match params.centers_per_trial {
        None => max_list_size_exhaustive(field, &code, params.radius)?,
        Some(centers) => {
            // Separate stream for center sampling, still derived from the
            // trial seed.
            let center_seed = splitmix64(seed ^ 0xD1B54A32D192ED03);
            max_list_size_sampled(field, &code, params.radius, centers, center_seed)?
        }
    };
    Ok(TrialResult { index, seed, max_list, within_bound: max_list <= params.list_bound })
}

/// Runs all trials of `params` and aggregates them into a report.
pub fn run_experiment(params: &ExperimentParams) -> Result<ExperimentReport, ExperimentError> {
    let field = Field::from_order(params.q)
        .map_err(|_| ExperimentError::DomainError("q must be a prime power"))?;
    let mut trials = Vec::with_capacity(params.trials);
    for index in 0..params.trials {
        trials.push(experiment_trial(&field, params, index)?);
    }
    Ok(assemble_report(params.clone(), trials))
}

/// Builds the report for already-run trials (callers that parallelize trial
/// execution aggregate through this to keep ordering deterministic).
pub fn assemble_report(params: ExperimentParams, mut trials: Vec<TrialResult>) -> ExperimentReport {
    trials.sort_by_key(|t| t.index);
    let max_list_overall = trials.iter().map(|t| t.max_list).max().unwrap_or(0);
    let fraction_within_bound = if trials.is_empty() {
        1.0
    } else {
        trials.iter().filter(|t| t.within_bound).count() as f64 / trials.len() as f64
    };
    ExperimentReport {
        params,
        seed_scheme: String::from("splitmix64(master_seed + (index+1) * 0x9E3779B97F4A7C15)"),
        trials,
        max_list_overall,
        fraction_within_bound,
        runtime_seconds: None,
    }
}

/// Parameters derived for the list-decodability experiment at radius
/// fraction delta and slack epsilon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GvDerivation {
    /// Ball growth exponent kappa at (q, delta).
    pub kappa: f64,
    pub epsilon: f64,
    /// max(0, 1 - kappa - epsilon).
    pub rate: f64,
    /// ceil(4/epsilon) - 1.
    pub list_bound: usize,
    /// floor(delta * n).
    pub radius: usize,
    pub code_size: usize,
}

/// Derives the experiment parameters backing the claim that rate
/// 1 - kappa - epsilon codes have lists no larger than ceil(4/epsilon) - 1.
pub fn gv_design(
    q: u32,
    n: usize,
    delta: f64,
    epsilon: f64,
) -> Result<GvDerivation, ExperimentError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(ExperimentError::DomainError("epsilon must lie in (0, 1)"));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(ExperimentError::DomainError("delta must lie in (0, 1]"));
    }
    if n < 2 {
        return Err(ExperimentError::DomainError("n must be at least 2"));
    }
    let kappa = bounds::kappa_sp(q, delta, 1e-7)?.value;
    let rate = (1.0 - kappa - epsilon).max(0.0);
    let list_bound = libm::ceil(4.0 / epsilon) as usize - 1;
    let radius = libm::floor(delta * n as f64 + 1e-9) as usize;
    let code_size = code_size_for_rate(q, n, rate)?;
    Ok(GvDerivation { kappa, epsilon, rate, list_bound, radius, code_size })
}

/// End-to-end list-decodability experiment: derive parameters via
/// [`gv_design`], then sample and measure `trials` random codes with
/// exhaustive center scans.
pub fn gv_list_experiment(
    q: u32,
    n: usize,
    delta: f64,
    epsilon: f64,
    trials: usize,
    master_seed: u64,
) -> Result<(GvDerivation, ExperimentReport), ExperimentError> {
    let design = gv_design(q, n, delta, epsilon)?;
    let params = ExperimentParams {
        q,
        n,
        radius: design.radius,
        rate: design.rate,
        code_size: design.code_size,
        trials,
        list_bound: design.list_bound,
        master_seed,
        centers_per_trial: None,
    };
    let report = run_experiment(&params)?;
    Ok((design, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_stable() {
        // Reference values of the standard SplitMix64 scrambler.
        assert_eq!(splitmix64(0), 0xE220A8397B1DCDAF);
        assert_eq!(splitmix64(1), 0x910A2DEC89025CC1);
        assert_ne!(trial_seed(0, 0), trial_seed(0, 1));
        assert_eq!(trial_seed(7, 3), trial_seed(7, 3));
    }

    #[test]
    fn code_size_matches_rate() {
        // 2^(0.5 * 10) = 32 exactly.
        assert_eq!(code_size_for_rate(2, 10, 0.5).unwrap(), 32);
        assert_eq!(code_size_for_rate(2, 10, 0.0).unwrap(), 1);
        assert!(code_size_for_rate(2, 50, 1.0).is_err());
        assert!(code_size_for_rate(2, 10, 1.5).is_err());
    }

    #[test]
    fn sampling_is_reproducible_and_in_range() {
        let f = Field::new(3, 1).unwrap();
        let a = sample_random_code(&f, 6, 40, 9).unwrap();
        let b = sample_random_code(&f, 6, 40, 9).unwrap();
        assert_eq!(a, b);
        let c = sample_random_code(&f, 6, 40, 10).unwrap();
        assert_ne!(a, c);
        assert!(a.iter().all(|w| w.len() == 6));
    }

    #[test]
    fn max_list_agrees_with_direct_count() {
        let f = Field::new(2, 1).unwrap();
        let code = sample_random_code(&f, 6, 12, 4).unwrap();
        let radius = 3;
        // Direct recount against the public pair_distance on Words.
        let mut best = 0;
        for x in 0..64u32 {
            let bits: Vec<u32> = (0..6).map(|i| (x >> i) & 1).collect();
            let center = Word::from_indices(&f, &bits).unwrap();
            let count = code
                .iter()
                .filter(|c| pair_metric::pair_distance(c, &center).unwrap() <= radius)
                .count();
            best = best.max(count);
        }
        assert_eq!(max_list_size_exhaustive(&f, &code, radius).unwrap(), best);
    }

    #[test]
    fn sampled_never_exceeds_exhaustive() {
        let f = Field::new(2, 1).unwrap();
        let code = sample_random_code(&f, 8, 20, 21).unwrap();
        let exhaustive = max_list_size_exhaustive(&f, &code, 4).unwrap();
        for seed in 0..5 {
            let sampled = max_list_size_sampled(&f, &code, 4, 30, seed).unwrap();
            assert!(sampled <= exhaustive);
        }
    }

    #[test]
    fn exhaustive_guard_fires() {
        let f = Field::new(17, 1).unwrap();
        let code = sample_random_code(&f, 8, 4, 0).unwrap();
        assert_eq!(
            max_list_size_exhaustive(&f, &code, 2).unwrap_err(),
            ExperimentError::SearchSpaceTooLarge
        );
    }

    #[test]
    fn double_counting_holds_exactly() {
        for (q, n, radius, seed) in
            [(2u32, 7usize, 3usize, 1u64), (3, 5, 2, 2), (2, 9, 0, 3), (3, 4, 4, 4), (5, 4, 2, 5)]
        {
            let f = Field::new(q, 1).unwrap();
            let code = sample_random_code(&f, n, 15, seed).unwrap();
            let check = double_counting_check(&f, &code, radius).unwrap();
            assert!(check.consistent, "q={q} n={n} r={radius}");
            assert_eq!(check.per_center_sum, check.per_codeword_sum);
        }
    }

    #[test]
    fn gv_design_pins_headline_parameters() {
        let d = gv_design(2, 12, 0.25, 0.15).unwrap();
        assert_eq!(d.list_bound, 26);
        assert_eq!(d.radius, 3);
        assert_eq!(d.code_size, 10);
        assert!((d.kappa - 0.582831427623).abs() < 1e-6);
        let d = gv_design(2, 20, 0.25, 0.1).unwrap();
        assert_eq!(d.list_bound, 39);
        assert!(gv_design(2, 12, 0.25, 0.0).is_err());
        assert!(gv_design(2, 12, 1.5, 0.1).is_err());
    }

    #[test]
    fn gv_experiment_is_reproducible() {
        let (da, ra) = gv_list_experiment(2, 12, 0.25, 0.15, 5, 0).unwrap();
        let (db, rb) = gv_list_experiment(2, 12, 0.25, 0.15, 5, 0).unwrap();
        assert_eq!(da, db);
        assert_eq!(ra, rb);
        assert_eq!(ra.trials.len(), 5);
        assert!(ra.runtime_seconds.is_none());
        // A different master seed draws different codes.
        let (_, rc) = gv_list_experiment(2, 12, 0.25, 0.15, 5, 1).unwrap();
        assert_ne!(ra.trials, rc.trials);
    }

    #[test]
    fn empty_experiment_reports_full_compliance() {
        let params = ExperimentParams {
            q: 2,
            n: 6,
            radius: 2,
            rate: 0.5,
            code_size: 8,
            trials: 0,
            list_bound: 3,
            master_seed: 0,
            centers_per_trial: None,
        };
        let report = run_experiment(&params).unwrap();
        assert_eq!(report.fraction_within_bound, 1.0);
        assert_eq!(report.max_list_overall, 0);
    }

    #[test]
    fn sampled_strategy_runs_large_spaces() {
        let params = ExperimentParams {
            q: 17,
            n: 12,
            radius: 4,
            rate: 0.25,
            code_size: 30,
            trials: 3,
            list_bound: 10,
            master_seed: 2,
            centers_per_trial: Some(50),
        };
        let report = run_experiment(&params).unwrap();
        assert_eq!(report.trials.len(), 3);
        // 17^12 centers cannot be scanned exhaustively.
        let exhaust = ExperimentParams { centers_per_trial: None, ..params };
        assert_eq!(
            run_experiment(&exhaust).unwrap_err(),
            ExperimentError::SearchSpaceTooLarge
        );
    }
}
