//! List decoding of the Reed-Solomon codes from [`crate::rs_codes`] under
//! the pair metric.
//!
//! The decoder works on the 2-fold view of the received word. It interpolates
//! a trivariate polynomial Q(X, Y1, Y2) = A0(X) + A1(X) Y1 + A2(X) Y2 that
//! vanishes on the n-1 folded columns, then observes that any message f
//! close to the received word satisfies A0 + A1 f(X) + A2 f(gamma X) = 0.
//! Inside L = F_q\[X\]/(X^(q-1) - gamma), where f(gamma X) coincides with
//! f(X)^q, that identity becomes the affine q-linearized equation
//! A1 z + A2 z^q = -A0, whose solution set is empty, a point, or a line -
//! never more than q candidates. Candidates are filtered by message degree
//! and by actual pair distance, so the returned list is exact.

use alloc::vec::Vec;
use core::fmt;

use crate::galois::{BigField, GaloisError};
use crate::linalg::{self, Matrix};
use crate::pair_metric::{pair_distance, Word};
use crate::poly::Poly;
use crate::rs_codes::{fold2, rs_encode, CodeSpec, FoldedWord, RsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderError {
    /// floor(2(n-2-k)/3) < 1: the guaranteed decoding radius vanishes.
    RadiusNonpositive { n: usize, k: usize },
    DomainError(&'static str),
    FieldMismatch,
    LengthMismatch { left: usize, right: usize },
}

impl fmt::Display for DecoderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderError::RadiusNonpositive { n, k } => write!(
                f,
                "no guaranteed decoding radius for n = {n}, k = {k}: floor(2(n-2-k)/3) < 1"
            ),
            DecoderError::DomainError(what) => write!(f, "argument out of range: {what}"),
            DecoderError::FieldMismatch => write!(f, "operands belong to different fields"),
            DecoderError::LengthMismatch { left, right } => {
                write!(f, "lengths differ: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for DecoderError {}

impl From<RsError> for DecoderError {
    fn from(e: RsError) -> DecoderError {
        match e {
            RsError::FieldMismatch => DecoderError::FieldMismatch,
            RsError::LengthMismatch { left, right } => {
                DecoderError::LengthMismatch { left, right }
            }
            _ => DecoderError::DomainError("invalid code or word"),
        }
    }
}

impl From<GaloisError> for DecoderError {
    fn from(_: GaloisError) -> DecoderError {
        DecoderError::DomainError("field construction failed")
    }
}

/// Guaranteed decoding radius floor(2(n-2-k)/3); errors when that is < 1.
pub fn decode_radius(n: usize, k: usize) -> Result<usize, DecoderError> {
    if k < 1 {
        return Err(DecoderError::DomainError("dimension must be at least 1"));
    }
    let twice = 2 * (n as i64 - 2 - k as i64);
    if twice < 3 {
        return Err(DecoderError::RadiusNonpositive { n, k });
    }
    Ok((twice / 3) as usize)
}

/// Degree cap m = ceil((n-k)/3) for the interpolation multipliers A1, A2.
/// With it, the linear system has at least three more unknowns than
/// constraints, so an interpolant with (A1, A2) != (0, 0) always exists.
pub fn aux_degree(n: usize, k: usize) -> usize {
    (n - k).div_ceil(3)
}

/// The interpolation polynomial Q = A0 + A1 Y1 + A2 Y2, with
/// deg A0 <= m+k-1 and deg A1, A2 <= m, vanishing on all folded columns.
struct Interpolant {
    a0: Poly,
    a1: Poly,
    a2: Poly,
    nullity: usize,
}

fn interpolate(spec: &CodeSpec, folded: &FoldedWord, m: usize) -> Interpolant {
    let field = spec.field();
    let n = spec.n();
    let k = spec.k();
    let rows = n - 1;
    let cols = (m + k) + 2 * (m + 1);
    let mut mat = Matrix::zero(field, rows, cols);
    for (i, &(a, b)) in folded.cols().iter().enumerate() {
        let xi = spec.eval_points()[i];
        let mut pw = field.one();
        for j in 0..m + k {
            mat.set(i, j, pw);
            if j <= m {
                mat.set(i, m + k + j, field.mul(a, pw));
                mat.set(i, m + k + m + 1 + j, field.mul(b, pw));
            }
            pw = field.mul(pw, xi);
        }
    }
    let basis = linalg::nullspace_basis(field, mat);
    let nullity = basis.len();
    debug_assert!(nullity >= 3, "column count exceeds row count by at least 3");
    // Solutions with A1 = A2 = 0 form a subspace of dimension at most 1
    // (A0 of degree <= m+k-1 vanishing at n-1 distinct points), so at most
    // one independent basis vector can be degenerate.
    let v = basis
        .iter()
        .find(|v| v[m + k..].iter().any(|c| !c.is_zero()))
        .expect("nullspace of dimension >= 3 contains a vector with (A1, A2) != 0");
    let a0 = Poly::new(field, v[..m + k].to_vec()).expect("coefficients lie in the field");
    let a1 = Poly::new(field, v[m + k..m + k + m + 1].to_vec())
        .expect("coefficients lie in the field");
    let a2 =
        Poly::new(field, v[m + k + m + 1..].to_vec()).expect("coefficients lie in the field");
    Interpolant { a0, a1, a2, nullity }
}

/// All z in L with A1 z + A2 z^q = -A0, lifted back to polynomials of degree
/// <= q-2, in a deterministic order. Requires (A1, A2) != (0, 0), which
/// bounds the solution count by q.
fn solve_linearized(big: &BigField, ipl: &Interpolant) -> Vec<Poly> {
    let base = big.base();
    let dim = big.dim();
    let za1 = big.embed_poly(&ipl.a1).expect("deg A1 <= m < q-1");
    let za2 = big.embed_poly(&ipl.a2).expect("deg A2 <= m < q-1");
    assert!(
        !(za1.is_zero() && za2.is_zero()),
        "interpolation produced a degenerate multiplier pair"
    );

    // Matrix of the F_q-linear map z -> A1 z + A2 z^q in the monomial basis:
    // X^j maps to (A1 + gamma^j A2) X^j.
    let mut mat = Matrix::zero(base, dim, dim);
    let mut xj = big.one();
    for j in 0..dim {
        let coeff = big.add(&za1, &big.scalar_mul(big.c_pow(j), &za2));
        let col = big.mul(&xj, &coeff);
        for (r, &c) in col.coeffs().iter().enumerate() {
            mat.set(r, j, c);
        }
        xj = big.mul(&xj, &big.x());
    }
    let rhs_elem = big.neg(&big.embed_poly(&ipl.a0).expect("deg A0 <= m+k-1 <= q-2"));
    let sol = linalg::solve_affine(base, mat, rhs_elem.coeffs());
    let Some(part) = sol.particular else {
        return Vec::new();
    };
    // The kernel of z -> A1 z + A2 z^q is {0} or one F_q-line: nonzero
    // kernel elements satisfy z^(q-1) = -A1/A2, of which there are at most
    // q-1.
    assert!(sol.kernel.len() <= 1, "linearized kernel has dimension at most 1");
    let mut out = Vec::new();
    match sol.kernel.first() {
        None => {
            out.push(Poly::new(base, part).expect("solution lies in the base field"));
        }
        Some(kv) => {
            for t in 0..base.order() {
                let t = base.element(t).expect("scalar in range");
                let coeffs: Vec<_> = part
                    .iter()
                    .zip(kv)
                    .map(|(&p, &kc)| base.add(p, base.mul(t, kc)))
                    .collect();
                out.push(Poly::new(base, coeffs).expect("solution lies in the base field"));
            }
        }
    }
    out
}

/// Counters describing one decoding run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeDiagnostics {
    /// Radius actually used (default or caller-supplied).
    pub radius: usize,
    /// Degree cap m on the interpolation multipliers.
    pub aux_degree: usize,
    /// True when n-1-radius > m+k-1, which guarantees every codeword within
    /// the radius appears in the list. Always true for the default radius.
    pub completeness_guaranteed: bool,
    /// Dimension of the interpolation nullspace (at least 3).
    pub interpolation_nullity: usize,
    /// Solutions of the linearized equation before any filtering (0, 1, or q).
    pub linearized_solutions: usize,
    /// Candidates discarded for having degree >= k.
    pub degree_rejected: usize,
    /// Candidates discarded for lying outside the decoding radius.
    pub distance_rejected: usize,
}

/// A decoded list plus diagnostics. Entries are (message, codeword) pairs
/// sorted by message coefficients, lowest degree first.
#[derive(Debug, Clone)]
pub struct DecodeOutcome {
    pub list: Vec<(Poly, Word)>,
    pub diagnostics: DecodeDiagnostics,
}

/// Lists every codeword within pair distance `radius` of `received`
/// (defaulting to [`decode_radius`]). The list is exact - filtered by true
/// pair distance - and has at most q entries whenever the completeness
/// guarantee holds.
pub fn list_decode(
    spec: &CodeSpec,
    received: &Word,
    radius: Option<usize>,
) -> Result<DecodeOutcome, DecoderError> {
    let field = spec.field();
    let n = spec.n();
    let k = spec.k();
    if received.field_id() != field.id() {
        return Err(DecoderError::FieldMismatch);
    }
    if received.len() != n {
        return Err(DecoderError::LengthMismatch { left: received.len(), right: n });
    }
    let t = match radius {
        Some(t) => {
            if t < 1 || t > n {
                return Err(DecoderError::DomainError("radius must satisfy 1 <= radius <= n"));
            }
            t
        }
        None => decode_radius(n, k)?,
    };
    let m = aux_degree(n, k);
    let completeness_guaranteed = (n as i64 - 1 - t as i64) > (m + k - 1) as i64;

    let folded = fold2(received);
    let ipl = interpolate(spec, &folded, m);
    let big = BigField::new(field)?;
    let candidates = solve_linearized(&big, &ipl);
    let linearized_solutions = candidates.len();

    let mut degree_rejected = 0;
    let mut distance_rejected = 0;
    let mut list = Vec::new();
    for f in candidates {
        if f.degree().is_some_and(|d| d > k - 1) {
            degree_rejected += 1;
            continue;
        }
        let c = rs_encode(spec, &f)?;
        if pair_distance(&c, received).map_err(RsError::from)? <= t {
            list.push((f, c));
        } else {
            distance_rejected += 1;
        }
    }
    list.sort_by_key(|(f, _)| f.lex_key(k));
    debug_assert!(list.len() <= field.order() as usize);

    Ok(DecodeOutcome {
        list,
        diagnostics: DecodeDiagnostics {
            radius: t,
            aux_degree: m,
            completeness_guaranteed,
            interpolation_nullity: ipl.nullity,
            linearized_solutions,
            degree_rejected,
            distance_rejected,
        },
    })
}

/// Margin in the limit of large alphabet and block length: the decoder
/// reaches relative radius 2 delta / 3 while the Johnson-type radius stops
/// at 1 - sqrt(1 - delta). Zero exactly at delta = 3/4, positive below it.
pub fn asymptotic_margin(delta: f64) -> Result<f64, DecoderError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(DecoderError::DomainError("delta must lie in [0, 1]"));
    }
    Ok(2.0 * delta / 3.0 - (1.0 - libm::sqrt(1.0 - delta)))
}

/// Finite-length margin of the guaranteed radius over the Johnson-type
/// radius for RS[n, k] over F_q in the high-rate regime 2k >= n + 2:
/// 2(n-k-2)/(3n) - johnson_radius(q, (n-k+2)/n). Positive means the decoder
/// provably reaches beyond the generic Johnson guarantee.
pub fn beyond_johnson_margin(q: u32, n: usize, k: usize) -> Result<f64, DecoderError> {
    if n < 4 || k < 2 || k >= n {
        return Err(DecoderError::DomainError("need 2 <= k < n and n >= 4"));
    }
    if n > q as usize - 1 {
        return Err(DecoderError::DomainError("code length must be at most q - 1"));
    }
    if 2 * k < n + 2 {
        return Err(DecoderError::DomainError(
            "margin is stated for the high-rate regime 2k >= n + 2",
        ));
    }
    let delta_p = (n - k + 2) as f64 / n as f64;
    let johnson = crate::bounds::johnson_radius(q, delta_p)
        .map_err(|_| DecoderError::DomainError("pair distance outside the Johnson domain"))?;
    Ok(2.0 * (n as f64 - k as f64 - 2.0) / (3.0 * n as f64) - johnson)
}
