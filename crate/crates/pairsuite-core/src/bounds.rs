//! Asymptotic rate bounds for codes in the pair metric: q-ary entropy, the
//! pair-ball growth exponent kappa, Gilbert-Varshamov style achievability
//! rates, Singleton-type limits, and the Johnson-type list-decoding radius.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsError {
    DomainError(&'static str),
    /// The requested rate is not attained by any radius in [0, 1].
    NoSolution,
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::DomainError(what) => write!(f, "argument out of range: {what}"),
            BoundsError::NoSolution => write!(f, "no radius in [0, 1] attains the requested rate"),
        }
    }
}

impl core::error::Error for BoundsError {}

fn log_q(q: u32, x: f64) -> f64 {
    libm::log(x) / libm::log(q as f64)
}

/// q-ary entropy H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x), with
/// the usual convention 0 log 0 = 0.
pub fn entropy_q(q: u32, x: f64) -> Result<f64, BoundsError> {
    if q < 2 {
        return Err(BoundsError::DomainError("q must be at least 2"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(BoundsError::DomainError("entropy argument must lie in [0, 1]"));
    }
    Ok(entropy_q_unchecked(q, x))
}

fn entropy_q_unchecked(q: u32, x: f64) -> f64 {
    let mut h = x * log_q(q, (q - 1) as f64);
    if x > 0.0 {
        h -= x * log_q(q, x);
    }
    if x < 1.0 {
        h -= (1.0 - x) * log_q(q, 1.0 - x);
    }
    h
}

/// Result of the kappa maximization: the value, where it was attained, and
/// the final grid resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaResult {
    pub value: f64,
    pub beta: f64,
    pub theta: f64,
    /// Final grid step of the refinement; the argmax is located to within
    /// this resolution.
    pub resolution: f64,
}

/// Objective beta H_q((2 beta - theta)/beta) + (1 - beta) H_q((theta - beta)/(1 - beta))
/// over the feasible triangle 0 <= theta/2 <= beta <= theta <= delta. The
/// limits beta -> 0 and beta -> 1 are taken as 0 for their respective terms.
fn kappa_objective(q: u32, beta: f64, theta: f64) -> f64 {
    let mut v = 0.0;
    if beta > 0.0 {
        let a = ((2.0 * beta - theta) / beta).clamp(0.0, 1.0);
        v += beta * entropy_q_unchecked(q, a);
    }
    if beta < 1.0 {
        let b = ((theta - beta) / (1.0 - beta)).clamp(0.0, 1.0);
        v += (1.0 - beta) * entropy_q_unchecked(q, b);
    }
    v
}

/// The exponent kappa_sp(q, delta): asymptotic log_q size per coordinate of a
/// pair-metric ball of relative radius delta. Maximizes the two-parameter
/// entropy objective over the feasible triangle with a coarse 1e-3 grid
/// followed by tenfold local refinements down to `tol`; deterministic, with
/// lexicographically smallest (beta, theta) on ties.
pub fn kappa_sp(q: u32, delta: f64, tol: f64) -> Result<KappaResult, BoundsError> {
    if q < 2 {
        return Err(BoundsError::DomainError("q must be at least 2"));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(BoundsError::DomainError("delta must lie in [0, 1]"));
    }
    if tol.is_nan() || tol < 1e-9 {
        return Err(BoundsError::DomainError("tolerance must be at least 1e-9"));
    }
    if delta == 0.0 {
        return Ok(KappaResult { value: 0.0, beta: 0.0, theta: 0.0, resolution: 0.0 });
    }

    const COARSE_STEP: f64 = 1e-3;

    // Incumbent ordering: larger value wins; on exact ties the
    // lexicographically smaller (beta, theta) is kept, making the argmax
    // deterministic.
    fn merge(best: (f64, f64, f64), value: f64, beta: f64, theta: f64) -> (f64, f64, f64) {
        if value > best.0 || (value == best.0 && (beta, theta) < (best.1, best.2)) {
            (value, beta, theta)
        } else {
            best
        }
    }

    // Grid scan of a (theta, beta) window, clamped to its boundary so the
    // endpoints are always probed.
    fn scan(
        q: u32,
        mut best: (f64, f64, f64),
        theta_lo: f64,
        theta_hi: f64,
        beta_window: impl Fn(f64) -> (f64, f64),
        step: f64,
    ) -> (f64, f64, f64) {
        let tn = ((theta_hi - theta_lo) / step) as usize;
        for ti in 0..=tn + 1 {
            let theta = (theta_lo + ti as f64 * step).min(theta_hi);
            let (blo, bhi) = beta_window(theta);
            if bhi >= blo {
                let bn = ((bhi - blo) / step) as usize;
                for bi in 0..=bn + 1 {
                    let beta = (blo + bi as f64 * step).min(bhi);
                    best = merge(best, kappa_objective(q, beta, theta), beta, theta);
                    if beta >= bhi {
                        break;
                    }
                }
            }
            if theta >= theta_hi {
                break;
            }
        }
        best
    }

    // Coarse pass over the whole triangle.
    let mut best = scan(q, (0.0, 0.0, 0.0), 0.0, delta, |t| (t / 2.0, t), COARSE_STEP);

    // Local refinement: shrink the window around the incumbent by 10x per
    // round until the grid step drops below tol.
    let mut step = COARSE_STEP;
    while step > tol {
        let next = step / 10.0;
        let (_, b0, t0) = best;
        let theta_lo = (t0 - step).max(0.0);
        let theta_hi = (t0 + step).min(delta);
        best = scan(
            q,
            best,
            theta_lo,
            theta_hi,
            move |t: f64| ((b0 - step).max(t / 2.0), (b0 + step).min(t)),
            next,
        );
        step = next;
    }

    Ok(KappaResult { value: best.0, beta: best.1, theta: best.2, resolution: step })
}

/// Default optimization tolerance used by the rate helpers.
const KAPPA_TOL: f64 = 1e-9;

/// Achievable rate in the pair metric: max(0, 1 - kappa_sp(q, delta)).
pub fn gv_rate_pair(q: u32, delta: f64) -> Result<f64, BoundsError> {
    let kappa = kappa_sp(q, delta, KAPPA_TOL)?;
    Ok((1.0 - kappa.value).max(0.0))
}

/// Classical Hamming-metric benchmark: max(0, 1 - H_q(delta)).
pub fn gv_rate_hamming(q: u32, delta: f64) -> Result<f64, BoundsError> {
    Ok((1.0 - entropy_q(q, delta)?).max(0.0))
}

/// Singleton-type rate limit 1 - delta.
pub fn singleton_rate(delta: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(BoundsError::DomainError("delta must lie in [0, 1]"));
    }
    Ok(1.0 - delta)
}

/// Checks the finite-length Singleton-type condition M <= q^(n - d_p + 2)
/// for a code of size M with minimum pair distance d_p.
pub fn singleton_size_check(
    n: usize,
    m: &BigUint,
    d_p: usize,
    q: u32,
) -> Result<bool, BoundsError> {
    if q < 2 {
        return Err(BoundsError::DomainError("q must be at least 2"));
    }
    if d_p < 2 || d_p > n {
        return Err(BoundsError::DomainError("need 2 <= d_p <= n"));
    }
    let bound = BigUint::from(q).pow((n - d_p + 2) as u32);
    Ok(*m <= bound)
}

/// Largest relative radius tau with 1 - kappa_sp(q, tau) >= R, located by
/// bisection (kappa_sp is nondecreasing in the radius).
pub fn list_radius_upper(q: u32, rate: f64, tol: f64) -> Result<f64, BoundsError> {
    if q < 2 {
        return Err(BoundsError::DomainError("q must be at least 2"));
    }
    if !(rate > 0.0 && rate < 1.0) {
        return Err(BoundsError::DomainError("rate must lie in (0, 1)"));
    }
    if tol.is_nan() || tol < 1e-9 {
        return Err(BoundsError::DomainError("tolerance must be at least 1e-9"));
    }
    let inner_tol = (tol / 10.0).max(1e-9);
    let g = |tau: f64| -> Result<f64, BoundsError> {
        Ok(1.0 - kappa_sp(q, tau, inner_tol)?.value - rate)
    };
    if g(1.0)? > 0.0 {
        // Even the full-radius ball exponent leaves the rate attainable;
        // there is no crossing point inside [0, 1].
        return Err(BoundsError::NoSolution);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if g(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest relative pair distance the Johnson-type radius accepts: (q^2-1)/q^2.
pub fn johnson_delta_limit(q: u32) -> f64 {
    let q2 = (q as f64) * (q as f64);
    (q2 - 1.0) / q2
}

/// Johnson-type list-decoding radius for relative minimum pair distance
/// delta: (q^2-1)/q^2 (1 - sqrt(1 - q^2 delta / (q^2-1))), clamped to the
/// valid range.
pub fn johnson_radius(q: u32, delta: f64) -> Result<f64, BoundsError> {
    if q < 2 {
        return Err(BoundsError::DomainError("q must be at least 2"));
    }
    let limit = johnson_delta_limit(q);
    if !(0.0..=1.0).contains(&delta) || delta > limit {
        return Err(BoundsError::DomainError(
            "delta must lie in [0, (q^2-1)/q^2] for the Johnson radius",
        ));
    }
    let q2 = (q as f64) * (q as f64);
    let radicand = (1.0 - q2 * delta / (q2 - 1.0)).max(0.0);
    let tau = limit * (1.0 - libm::sqrt(radicand));
    Ok(tau.clamp(0.0, limit))
}

/// List-size guarantee accompanying the Johnson-type radius: 2 (q^2-1) n d.
pub fn johnson_list_size(q: u32, n: usize, d: usize) -> Result<u128, BoundsError> {
    if q < 2 {
        return Err(BoundsError::DomainError("q must be at least 2"));
    }
    if d < 1 || d > n {
        return Err(BoundsError::DomainError("need 1 <= d <= n"));
    }
    let q2 = (q as u128) * (q as u128);
    Ok(2 * (q2 - 1) * n as u128 * d as u128)
}

/// One row of a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub delta: f64,
    pub gv_pair: f64,
    pub gv_hamming: f64,
    pub singleton: f64,
    pub johnson_tau: f64,
    /// List-size growth coefficient at this delta: the Johnson guarantee for
    /// a length-n code with d = delta n is this value times n^2.
    pub johnson_list_coeff: f64,
}

/// Rate bounds tabulated over a grid of relative distances.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub q: u32,
    pub rows: Vec<BoundRow>,
}

/// Evaluates every bound on the given delta grid. The Johnson radius is
/// evaluated at min(delta, (q^2-1)/q^2), its saturation point.
pub fn bound_report(q: u32, deltas: &[f64]) -> Result<BoundReport, BoundsError> {
    let mut rows = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        if !(0.0..=1.0).contains(&delta) {
            return Err(BoundsError::DomainError("delta grid must lie in [0, 1]"));
        }
        let capped = delta.min(johnson_delta_limit(q));
        rows.push(BoundRow {
            delta,
            gv_pair: gv_rate_pair(q, delta)?,
            gv_hamming: gv_rate_hamming(q, delta)?,
            singleton: singleton_rate(delta)?,
            johnson_tau: johnson_radius(q, capped)?,
            johnson_list_coeff: 2.0 * (((q as f64) * (q as f64)) - 1.0) * delta,
        });
    }
    Ok(BoundReport { q, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FROZEN_TOL: f64 = 1e-6;

    #[test]
    fn entropy_edge_cases_and_values() {
        assert_eq!(entropy_q(2, 0.0).unwrap(), 0.0);
        assert!((entropy_q(2, 0.5).unwrap() - 1.0).abs() < 1e-12);
        // H_q(1) = log_q(q-1).
        let h1 = entropy_q(17, 1.0).unwrap();
        assert!((h1 - libm::log(16.0) / libm::log(17.0)).abs() < 1e-12);
        // Independently computed: H_17(0.3).
        assert!((entropy_q(17, 0.3).unwrap() - 0.509188946802519).abs() < 1e-12);
        assert!(entropy_q(17, 1.1).is_err());
        assert!(entropy_q(1, 0.5).is_err());
        assert!(entropy_q(17, -0.1).is_err());
    }

    #[test]
    fn kappa_frozen_values_from_dense_grid_search() {
        // Expected values were produced by an independent dense grid search
        // at step 1e-5 with local refinement to 1e-7 (see tests/kappa_oracle.rs).
        let cases = [
            (2u32, 0.5f64, 0.884610435722f64),
            (17, 0.5, 0.566422985226),
            (2, 0.25, 0.582831427623),
            (17, 0.3, 0.357785927451),
        ];
        for (q, delta, expect) in cases {
            let got = kappa_sp(q, delta, 1e-6).unwrap();
            assert!(
                (got.value - expect).abs() <= FROZEN_TOL,
                "kappa({q}, {delta}) = {} but expected {expect}",
                got.value
            );
        }
    }

    #[test]
    fn kappa_degenerate_and_saturated() {
        let z = kappa_sp(17, 0.0, 1e-6).unwrap();
        assert_eq!(z.value, 0.0);
        // For q = 2 the exponent saturates at 1 from delta = 3/4 on.
        let s = kappa_sp(2, 0.75, 1e-6).unwrap();
        assert!((s.value - 1.0).abs() <= 1e-9, "kappa(2, 0.75) = {}", s.value);
        let s = kappa_sp(2, 1.0, 1e-6).unwrap();
        assert!((s.value - 1.0).abs() <= 1e-9);
        assert!(kappa_sp(2, 0.5, 1e-10).is_err());
        assert!(kappa_sp(2, 1.5, 1e-6).is_err());
    }

    #[test]
    fn kappa_matches_no_finer_grid_point() {
        // No point of a 10x finer full-region grid may beat the optimizer by
        // more than the requested tolerance.
        let q = 5;
        let delta = 0.4;
        let tol = 1e-3;
        let got = kappa_sp(q, delta, tol).unwrap().value;
        let fine = tol / 10.0;
        let mut max_fine = 0.0f64;
        let tn = (delta / fine) as usize;
        for ti in 0..=tn {
            let theta = (ti as f64 * fine).min(delta);
            let bn = ((theta - theta / 2.0) / fine) as usize;
            for bi in 0..=bn {
                let beta = (theta / 2.0 + bi as f64 * fine).min(theta);
                max_fine = max_fine.max(kappa_objective(q, beta, theta));
            }
        }
        assert!(
            max_fine <= got + tol,
            "fine grid found {max_fine}, optimizer returned {got}"
        );
    }

    #[test]
    fn gv_rates_and_ordering() {
        // Frozen: 1 - kappa(17, 0.3).
        let r = gv_rate_pair(17, 0.3).unwrap();
        assert!((r - 0.642214072549).abs() <= FROZEN_TOL, "gv_pair(17, 0.3) = {r}");
        let rh = gv_rate_hamming(17, 0.3).unwrap();
        assert!((rh - 0.490811053197481).abs() <= 1e-12);
        assert!(r >= rh - 1e-9);
        // Rates clamp at zero once the exponent exceeds 1... (q=2 beyond 3/4).
        assert_eq!(gv_rate_pair(2, 0.9).unwrap(), 0.0);
        assert_eq!(gv_rate_hamming(2, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn kappa_below_entropy_on_valid_range() {
        // The pair ball of radius r sits inside the Hamming ball of radius r,
        // so kappa_sp(delta) <= H_q(delta) wherever H_q is the Hamming
        // exponent, i.e. delta <= 1 - 1/q.
        for q in [2u32, 17] {
            let lim = 1.0 - 1.0 / q as f64;
            for i in 1..=40 {
                let delta = lim * i as f64 / 40.0;
                let kappa = kappa_sp(q, delta, 1e-6).unwrap().value;
                let h = entropy_q(q, delta).unwrap();
                assert!(
                    kappa <= h + 1e-9,
                    "kappa_sp({q}, {delta}) = {kappa} exceeds H = {h}"
                );
            }
        }
    }

    #[test]
    fn singleton_values_and_errors() {
        assert_eq!(singleton_rate(0.0).unwrap(), 1.0);
        assert_eq!(singleton_rate(1.0).unwrap(), 0.0);
        assert!(singleton_rate(1.2).is_err());
        // M = q^(n-d+2) passes, M = q^(n-d+2) + 1 fails.
        let q = 8u32;
        let bound = BigUint::from(q).pow(7 - 6 + 2);
        assert!(singleton_size_check(7, &bound, 6, q).unwrap());
        let over = bound + BigUint::from(1u32);
        assert!(!singleton_size_check(7, &over, 6, q).unwrap());
        assert!(singleton_size_check(7, &BigUint::from(1u32), 1, q).is_err());
        assert!(singleton_size_check(7, &BigUint::from(1u32), 8, q).is_err());
    }

    #[test]
    fn johnson_radius_pinned_and_shape() {
        // Independently computed with 30-digit arithmetic.
        let t = johnson_radius(4, 0.5).unwrap();
        assert!((t - 0.297065577127525).abs() < 1e-12, "johnson(4, 0.5) = {t}");
        let t = johnson_radius(257, 0.5).unwrap();
        assert!((t - 0.292894137245375).abs() < 1e-12);
        // tau(0) = 0; tau at the delta limit equals the limit itself.
        assert_eq!(johnson_radius(5, 0.0).unwrap(), 0.0);
        let lim = johnson_delta_limit(5);
        assert!((johnson_radius(5, lim).unwrap() - lim).abs() < 1e-12);
        assert!(johnson_radius(2, 0.8).is_err()); // beyond (q^2-1)/q^2 = 0.75
        // Increasing and superlinear-in-delta (convex): check monotone + tau >= delta/2.
        let mut prev = -1.0;
        for i in 0..=20 {
            let d = lim * i as f64 / 20.0;
            let t = johnson_radius(5, d).unwrap();
            assert!(t >= prev);
            assert!(t >= d / 2.0 - 1e-12 && t <= d + 1e-12);
            prev = t;
        }
    }

    #[test]
    fn johnson_list_size_values() {
        assert_eq!(johnson_list_size(2, 10, 5).unwrap(), 2 * 3 * 10 * 5);
        // Large parameters exceed u64: 2 (65536^2 - 1) * 65535 * 65535.
        let v = johnson_list_size(65536, 65535, 65535).unwrap();
        assert_eq!(v, 2 * ((65536u128 * 65536) - 1) * 65535 * 65535);
        assert!(johnson_list_size(4, 5, 6).is_err());
        assert!(johnson_list_size(4, 5, 0).is_err());
    }

    #[test]
    fn list_radius_round_trips_with_gv_rate() {
        for (q, delta) in [(2u32, 0.3f64), (17, 0.25), (17, 0.5), (5, 0.4)] {
            let rate = gv_rate_pair(q, delta).unwrap();
            assert!(rate > 0.0 && rate < 1.0);
            let tau = list_radius_upper(q, rate, 1e-5).unwrap();
            assert!(
                (tau - delta).abs() <= 1e-4,
                "round trip q={q}: delta {delta} -> rate {rate} -> tau {tau}"
            );
        }
        assert!(list_radius_upper(2, 1.5, 1e-5).is_err());
        assert!(list_radius_upper(2, 0.3, 1e-10).is_err());
    }

    #[test]
    fn bound_report_trivial_row() {
        let rep = bound_report(17, &[0.0]).unwrap();
        let row = rep.rows[0];
        assert_eq!(
            (row.delta, row.gv_pair, row.gv_hamming, row.singleton, row.johnson_tau),
            (0.0, 1.0, 1.0, 1.0, 0.0)
        );
        assert_eq!(row.johnson_list_coeff, 0.0);
        assert!(bound_report(17, &[0.5, 2.0]).is_err());
    }
}
