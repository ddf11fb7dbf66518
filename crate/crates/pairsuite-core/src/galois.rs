//! Finite fields F_q with q = p^e <= 2^16, plus the big extension
//! L = F_q\[X\]/(X^(q-1) - gamma) used by the list decoder's root-finding step.
//!
//! Elements are canonical integer indices in 0..q. For prime fields the index
//! is the residue; for extension fields it encodes the coefficient vector of
//! the element over F_p in base p (least-significant digit = constant term).
//! Prime fields multiply by modular arithmetic; extension fields use
//! log/antilog tables keyed to the verified primitive element `gamma`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU32, Ordering};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaloisError {
    /// Characteristic is not a prime number.
    NonPrimeCharacteristic { p: u32 },
    /// p^e exceeds the supported maximum of 2^16.
    OrderTooLarge { p: u32, e: u32 },
    /// Extension degree must be at least 1.
    InvalidDegree { e: u32 },
    /// Order passed to [`Field::from_order`] is not a prime power.
    NotPrimePower { q: u32 },
    /// Element index outside 0..q.
    ElementOutOfRange { idx: u32, q: u32 },
    /// Multiplicative inverse of zero requested.
    DivisionByZero,
    /// Operands belong to different fields.
    FieldMismatch,
    /// X^(q-1) - c is reducible over F_q (c is not primitive enough).
    ReducibleModulus,
    /// The big extension needs a base field with at least 3 elements.
    BaseFieldTooSmall,
    /// Polynomial degree too large for the requested embedding.
    DegreeTooLarge { degree: usize, max: usize },
}

impl fmt::Display for GaloisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisError::NonPrimeCharacteristic { p } => {
                write!(f, "characteristic {p} is not prime")
            }
            GaloisError::OrderTooLarge { p, e } => {
                write!(f, "field order {p}^{e} exceeds 2^16")
            }
            GaloisError::InvalidDegree { e } => write!(f, "extension degree {e} must be >= 1"),
            GaloisError::NotPrimePower { q } => write!(f, "{q} is not a prime power"),
            GaloisError::ElementOutOfRange { idx, q } => {
                write!(f, "element index {idx} out of range for field of order {q}")
            }
            GaloisError::DivisionByZero => write!(f, "division by zero"),
            GaloisError::FieldMismatch => write!(f, "operands belong to different fields"),
            GaloisError::ReducibleModulus => {
                write!(f, "X^(q-1) - c is reducible: c does not generate the unit group")
            }
            GaloisError::BaseFieldTooSmall => {
                write!(f, "big extension requires a base field of order >= 3")
            }
            GaloisError::DegreeTooLarge { degree, max } => {
                write!(f, "degree {degree} exceeds maximum {max}")
            }
        }
    }
}

impl core::error::Error for GaloisError {}

/// An element of a [`Field`], tagged with the identity of its owning field so
/// cross-field mixing is detected. Value-like: `Copy`, thread-safe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field_id: u32,
    idx: u32,
}

impl FieldElement {
    pub(crate) fn from_raw(field_id: u32, idx: u32) -> Self {
        FieldElement { field_id, idx }
    }

    /// Canonical index of the element in 0..q.
    pub fn index(self) -> u32 {
        self.idx
    }

    /// Identifier of the owning field.
    pub fn field_id(self) -> u32 {
        self.field_id
    }

    pub fn is_zero(self) -> bool {
        self.idx == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.idx)
    }
}

static NEXT_FIELD_ID: AtomicU32 = AtomicU32::new(1);

struct FieldInner {
    id: u32,
    p: u32,
    e: u32,
    q: u32,
    gamma: u32,
    /// Monic modulus polynomial over F_p, ascending coefficients, length e+1.
    /// `None` for prime fields.
    modulus: Option<Vec<u32>>,
    /// antilog[j] = index of gamma^j, length q-1. Empty for prime fields.
    antilog: Vec<u32>,
    /// log[idx] = discrete log of idx base gamma; log[0] unused. Empty for prime fields.
    log: Vec<u32>,
}

/// A finite field F_q, q = p^e <= 2^16. Immutable after construction and safe
/// to share freely across threads; cloning is cheap (reference-counted).
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(GF({}))", self.inner.q)
    }
}

impl Field {
    /// Constructs F_{p^e}. The modulus polynomial and the primitive element
    /// `gamma` are canonical, so repeated construction yields identical tables.
    pub fn new(p: u32, e: u32) -> Result<Field, GaloisError> {
        if e == 0 {
            return Err(GaloisError::InvalidDegree { e });
        }
        if !is_prime(p) {
            return Err(GaloisError::NonPrimeCharacteristic { p });
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q *= p as u64;
            if q > MAX_ORDER as u64 {
                return Err(GaloisError::OrderTooLarge { p, e });
            }
        }
        let q = q as u32;

        let inner = if e == 1 {
            let gamma = smallest_primitive_root(p);
            FieldInner {
                id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
                p,
                e,
                q,
                gamma,
                modulus: None,
                antilog: Vec::new(),
                log: Vec::new(),
            }
        } else {
            let (modulus, gamma_hint) = match conway_polynomial(p, e) {
                Some(coeffs) => {
                    debug_assert!(modpoly::is_irreducible(coeffs, p));
                    // For a tabulated modulus the class of X is primitive.
                    (coeffs.to_vec(), Some(p))
                }
                None => (first_irreducible(p, e), None),
            };
            let slow = SlowExtension { p, e, q, modulus: &modulus };
            let gamma = match gamma_hint {
                Some(g) => {
                    assert!(
                        slow.is_primitive(g),
                        "tabulated modulus must make X primitive"
                    );
                    g
                }
                None => slow.first_primitive(),
            };
            let (antilog, log) = slow.build_tables(gamma);
            FieldInner {
                id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
                p,
                e,
                q,
                gamma,
                modulus: Some(modulus),
                antilog,
                log,
            }
        };
        Ok(Field { inner: Arc::new(inner) })
    }

    /// Constructs the field of order `q`, factoring `q` as p^e.
    pub fn from_order(q: u32) -> Result<Field, GaloisError> {
        if q < 2 {
            return Err(GaloisError::NotPrimePower { q });
        }
        let p = smallest_prime_factor(q);
        let mut e = 0;
        let mut m = q;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if m != 1 {
            return Err(GaloisError::NotPrimePower { q });
        }
        Field::new(p, e)
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.inner.e
    }

    /// Unique identifier of this field instance.
    pub fn id(&self) -> u32 {
        self.inner.id
    }

    /// The canonical primitive element: smallest primitive root for prime
    /// fields, the class of X for tabulated moduli, otherwise the element of
    /// smallest index with multiplicative order q-1.
    pub fn gamma(&self) -> FieldElement {
        FieldElement::from_raw(self.inner.id, self.inner.gamma)
    }

    /// Modulus polynomial over F_p (ascending coefficients), if this is a
    /// proper extension field.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_raw(self.inner.id, 0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_raw(self.inner.id, 1)
    }

    pub fn element(&self, idx: u32) -> Result<FieldElement, GaloisError> {
        if idx >= self.inner.q {
            return Err(GaloisError::ElementOutOfRange { idx, q: self.inner.q });
        }
        Ok(FieldElement::from_raw(self.inner.id, idx))
    }

    /// All field elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let id = self.inner.id;
        (0..self.inner.q).map(move |idx| FieldElement::from_raw(id, idx))
    }

    pub fn owns(&self, a: FieldElement) -> bool {
        a.field_id == self.inner.id
    }

    fn check(&self, a: FieldElement) {
        assert!(
            self.owns(a),
            "field element belongs to field {} but was used with field {}",
            a.field_id,
            self.inner.id
        );
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let inner = &*self.inner;
        let idx = if inner.e == 1 {
            (a.idx + b.idx) % inner.p
        } else {
            digitwise(a.idx, b.idx, inner.p, |x, y| (x + y) % inner.p)
        };
        FieldElement::from_raw(inner.id, idx)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        let inner = &*self.inner;
        let idx = if inner.e == 1 {
            (inner.p - a.idx) % inner.p
        } else {
            digitwise(a.idx, 0, inner.p, |x, _| (inner.p - x) % inner.p)
        };
        FieldElement::from_raw(inner.id, idx)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let inner = &*self.inner;
        let idx = if inner.e == 1 {
            ((a.idx as u64 * b.idx as u64) % inner.p as u64) as u32
        } else if a.idx == 0 || b.idx == 0 {
            0
        } else {
            let n = inner.q - 1;
            inner.antilog[((inner.log[a.idx as usize] + inner.log[b.idx as usize]) % n) as usize]
        };
        FieldElement::from_raw(inner.id, idx)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GaloisError> {
        self.check(a);
        if a.idx == 0 {
            return Err(GaloisError::DivisionByZero);
        }
        let inner = &*self.inner;
        let idx = if inner.e == 1 {
            modpow(a.idx as u64, inner.p as u64 - 2, inner.p as u64) as u32
        } else {
            let n = inner.q - 1;
            inner.antilog[((n - inner.log[a.idx as usize]) % n) as usize]
        };
        Ok(FieldElement::from_raw(inner.id, idx))
    }

    /// a^k with the convention a^0 = 1 for every a (including zero).
    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        self.check(a);
        if k == 0 {
            return self.one();
        }
        if a.idx == 0 {
            return self.zero();
        }
        let inner = &*self.inner;
        let n = inner.q as u64 - 1;
        let k = k % n;
        let idx = if inner.e == 1 {
            modpow(a.idx as u64, k, inner.p as u64) as u32
        } else {
            inner.antilog[((inner.log[a.idx as usize] as u64 * k) % n) as usize]
        };
        FieldElement::from_raw(inner.id, idx)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64, GaloisError> {
        self.check(a);
        if a.idx == 0 {
            return Err(GaloisError::DivisionByZero);
        }
        let n = self.inner.q as u64 - 1;
        let mut d = n;
        for r in distinct_prime_factors(n as u32) {
            let r = r as u64;
            while d.is_multiple_of(r) && self.pow(a, d / r) == self.one() {
                d /= r;
            }
        }
        Ok(d)
    }

    pub fn try_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GaloisError> {
        if !self.owns(a) || !self.owns(b) {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(self.add(a, b))
    }

    pub fn try_sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GaloisError> {
        if !self.owns(a) || !self.owns(b) {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(self.sub(a, b))
    }

    pub fn try_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GaloisError> {
        if !self.owns(a) || !self.owns(b) {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(self.mul(a, b))
    }

    pub fn try_div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GaloisError> {
        if !self.owns(a) || !self.owns(b) {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(self.mul(a, self.inv(b)?))
    }
}

/// Applies `op` to corresponding base-p digits of `a` and `b`.
fn digitwise(a: u32, b: u32, p: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut mult = 1u32;
    while a != 0 || b != 0 {
        out += op(a % p, b % p) * mult;
        a /= p;
        b /= p;
        mult *= p;
    }
    out
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn smallest_prime_factor(n: u32) -> u32 {
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn modpow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Smallest g with multiplicative order p-1 modulo the prime p.
fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let n = p as u64 - 1;
    let factors = distinct_prime_factors(p - 1);
    'outer: for g in 2..p {
        for &r in &factors {
            if modpow(g as u64, n / r as u64, p as u64) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every prime field has a primitive root");
}

/// Conway polynomials (ascending coefficients, monic) for the small fields
/// this crate is expected to meet most often. Each entry is checked by tests
/// to be irreducible with X primitive; fields outside the table fall back to
/// the first irreducible polynomial in lexicographic coefficient order.
fn conway_polynomial(p: u32, e: u32) -> Option<&'static [u32]> {
    let table: &[(u32, u32, &[u32])] = &[
        (2, 2, &[1, 1, 1]),
        (2, 3, &[1, 1, 0, 1]),
        (2, 4, &[1, 1, 0, 0, 1]),
        (2, 5, &[1, 0, 1, 0, 0, 1]),
        (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
        (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
        (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
        (3, 2, &[2, 2, 1]),
        (3, 3, &[1, 2, 0, 1]),
        (3, 4, &[2, 0, 0, 2, 1]),
        (5, 2, &[2, 4, 1]),
        (5, 3, &[3, 3, 0, 1]),
        (7, 2, &[3, 6, 1]),
    ];
    table
        .iter()
        .find(|&&(tp, te, _)| tp == p && te == e)
        .map(|&(_, _, c)| c)
}

/// First monic irreducible polynomial of degree e over F_p, ordered by the
/// ascending-coefficient tuple (c_0, ..., c_{e-1}) read as a base-p number.
fn first_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for t in 0..count {
        let mut coeffs = vec![0u32; e as usize + 1];
        let mut m = t;
        for c in coeffs.iter_mut().take(e as usize) {
            *c = (m % p as u64) as u32;
            m /= p as u64;
        }
        coeffs[e as usize] = 1;
        if modpoly::is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

/// Construction-time arithmetic for an extension field, before the log tables
/// exist: elements as indices, multiplication through polynomial remainders.
struct SlowExtension<'a> {
    p: u32,
    e: u32,
    q: u32,
    modulus: &'a [u32],
}

impl SlowExtension<'_> {
    fn idx_to_poly(&self, idx: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut m = idx;
        for _ in 0..self.e {
            v.push(m % self.p);
            m /= self.p;
        }
        modpoly::trim(&mut v);
        v
    }

    fn poly_to_idx(&self, poly: &[u32]) -> u32 {
        let mut idx = 0u32;
        for &c in poly.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let prod = modpoly::mul(&self.idx_to_poly(a), &self.idx_to_poly(b), self.p);
        self.poly_to_idx(&modpoly::rem(&prod, self.modulus, self.p))
    }

    fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn is_primitive(&self, a: u32) -> bool {
        if a == 0 {
            return false;
        }
        let n = self.q as u64 - 1;
        distinct_prime_factors(self.q - 1)
            .iter()
            .all(|&r| self.pow(a, n / r as u64) != 1)
    }

    fn first_primitive(&self) -> u32 {
        (2..self.q)
            .find(|&a| self.is_primitive(a))
            .expect("the unit group of a finite field is cyclic")
    }

    fn build_tables(&self, gamma: u32) -> (Vec<u32>, Vec<u32>) {
        let n = (self.q - 1) as usize;
        let mut antilog = Vec::with_capacity(n);
        let mut log = vec![u32::MAX; self.q as usize];
        let mut cur = 1u32;
        for j in 0..n {
            assert_eq!(log[cur as usize], u32::MAX, "gamma is not primitive");
            antilog.push(cur);
            log[cur as usize] = j as u32;
            cur = self.mul(cur, gamma);
        }
        assert_eq!(cur, 1, "gamma^(q-1) must equal 1");
        (antilog, log)
    }
}

/// Polynomial arithmetic over F_p on raw coefficient vectors (ascending),
/// used only while constructing fields.
mod modpoly {
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &mc) in m.iter().enumerate() {
                let t = (lead as u64 * mc as u64) % p as u64;
                let cur = &mut r[shift + i];
                *cur = ((*cur as u64 + p as u64 - t) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out = vec![0u32; n];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            // Scale b monic before taking remainders.
            let lead = *b.last().unwrap();
            let inv = super::modpow(lead as u64, p as u64 - 2, p as u64) as u32;
            let monic: Vec<u32> =
                b.iter().map(|&c| ((c as u64 * inv as u64) % p as u64) as u32).collect();
            let r = rem(&a, &monic, p);
            a = b;
            b = r;
        }
        a
    }

    fn powmod(base: &[u32], mut k: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(base, m, p);
        let mut acc = vec![1u32];
        while k > 0 {
            if k & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            k >>= 1;
        }
        acc
    }

    /// Rabin's irreducibility test: f (monic, degree e) is irreducible over
    /// F_p iff X^(p^e) = X mod f and gcd(X^(p^(e/r)) - X, f) is constant for
    /// every prime r dividing e.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let e = f.len() - 1;
        if e == 0 {
            return false;
        }
        if e == 1 {
            return true;
        }
        let x = vec![0u32, 1];
        // frob[j] = X^(p^j) mod f, computed by repeated p-th powers.
        let mut frob = Vec::with_capacity(e + 1);
        frob.push(x.clone());
        for _ in 0..e {
            let prev = frob.last().unwrap();
            frob.push(powmod(prev, p as u64, f, p));
        }
        if frob[e] != rem(&x, f, p) {
            return false;
        }
        for r in super::distinct_prime_factors(e as u32) {
            let g = gcd(&sub(&frob[e / r as usize], &x, p), f, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

/// The extension L = F_q\[X\]/(X^(q-1) - c) with c = gamma by default. When c
/// generates the unit group of F_q the modulus is irreducible, so L is the
/// field with q^(q-1) elements. The q-power Frobenius acts diagonally on the
/// monomial basis: X^j maps to c^j X^j.
#[derive(Debug)]
pub struct BigField {
    base: Field,
    dim: usize,
    /// c_pows[j] = c^j for j in 0..q-1.
    c_pows: Vec<FieldElement>,
}

/// An element of [`BigField`]: a coefficient vector of length q-1 over the
/// base field (ascending powers of X).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFieldElement {
    coeffs: Vec<FieldElement>,
}

impl BigFieldElement {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl BigField {
    /// Builds L over the given base field with the canonical constant
    /// c = gamma. Requires q >= 3.
    pub fn new(base: &Field) -> Result<BigField, GaloisError> {
        BigField::with_constant(base, base.gamma())
    }

    /// Builds F_q\[X\]/(X^(q-1) - c), verifying irreducibility: every prime
    /// factor of q-1 must divide ord(c) and not divide (q-1)/ord(c).
    pub fn with_constant(base: &Field, c: FieldElement) -> Result<BigField, GaloisError> {
        if base.order() < 3 {
            return Err(GaloisError::BaseFieldTooSmall);
        }
        if !base.owns(c) {
            return Err(GaloisError::FieldMismatch);
        }
        if c.is_zero() {
            return Err(GaloisError::ReducibleModulus);
        }
        let t = base.order() as u64 - 1;
        let s = base.multiplicative_order(c)?;
        for r in distinct_prime_factors(t as u32) {
            let r = r as u64;
            if !s.is_multiple_of(r) || (t / s).is_multiple_of(r) {
                return Err(GaloisError::ReducibleModulus);
            }
        }
        // When 4 divides the modulus degree t = q-1, irreducibility also
        // requires 4 | q-1, which is the same condition and holds trivially.
        let dim = t as usize;
        let mut c_pows = Vec::with_capacity(dim);
        let mut cur = base.one();
        for _ in 0..dim {
            c_pows.push(cur);
            cur = base.mul(cur, c);
        }
        Ok(BigField { base: base.clone(), dim, c_pows })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// Degree of L over the base field (q-1).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn zero(&self) -> BigFieldElement {
        BigFieldElement { coeffs: vec![self.base.zero(); self.dim] }
    }

    pub fn one(&self) -> BigFieldElement {
        let mut z = self.zero();
        z.coeffs[0] = self.base.one();
        z
    }

    /// The class of X.
    pub fn x(&self) -> BigFieldElement {
        let mut z = self.zero();
        z.coeffs[1] = self.base.one();
        z
    }

    pub fn embed_scalar(&self, c: FieldElement) -> BigFieldElement {
        assert!(self.base.owns(c));
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    /// Embeds a polynomial of degree < q-1 as an element of L.
    pub fn embed_poly(&self, f: &crate::poly::Poly) -> Result<BigFieldElement, GaloisError> {
        if !f.is_over(&self.base) {
            return Err(GaloisError::FieldMismatch);
        }
        if let Some(d) = f.degree() {
            if d >= self.dim {
                return Err(GaloisError::DegreeTooLarge { degree: d, max: self.dim - 1 });
            }
        }
        let mut z = self.zero();
        for (i, &c) in f.coeffs().iter().enumerate() {
            z.coeffs[i] = c;
        }
        Ok(z)
    }

    /// Lifts an element of L back to the polynomial of degree <= q-2 with the
    /// same coefficients.
    pub fn lift(&self, z: &BigFieldElement) -> crate::poly::Poly {
        crate::poly::Poly::new(&self.base, z.coeffs.clone())
            .expect("coefficients of a BigFieldElement lie in the base field")
    }

    fn check(&self, z: &BigFieldElement) {
        assert_eq!(z.coeffs.len(), self.dim, "element belongs to a different big field");
        if let Some(&c) = z.coeffs.first() {
            assert!(self.base.owns(c), "element belongs to a different base field");
        }
    }

    pub fn add(&self, a: &BigFieldElement, b: &BigFieldElement) -> BigFieldElement {
        self.check(a);
        self.check(b);
        let coeffs =
            a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.base.add(x, y)).collect();
        BigFieldElement { coeffs }
    }

    pub fn sub(&self, a: &BigFieldElement, b: &BigFieldElement) -> BigFieldElement {
        self.check(a);
        self.check(b);
        let coeffs =
            a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.base.sub(x, y)).collect();
        BigFieldElement { coeffs }
    }

    pub fn neg(&self, a: &BigFieldElement) -> BigFieldElement {
        self.check(a);
        BigFieldElement { coeffs: a.coeffs.iter().map(|&x| self.base.neg(x)).collect() }
    }

    pub fn scalar_mul(&self, c: FieldElement, a: &BigFieldElement) -> BigFieldElement {
        self.check(a);
        BigFieldElement { coeffs: a.coeffs.iter().map(|&x| self.base.mul(c, x)).collect() }
    }

    /// Schoolbook product reduced by X^(q-1) = c: the coefficient at degree
    /// d >= q-1 folds onto degree d-(q-1) scaled by c.
    pub fn mul(&self, a: &BigFieldElement, b: &BigFieldElement) -> BigFieldElement {
        self.check(a);
        self.check(b);
        let f = &self.base;
        let mut out = self.zero();
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = f.mul(x, y);
                let d = i + j;
                if d < self.dim {
                    out.coeffs[d] = f.add(out.coeffs[d], t);
                } else {
                    let folded = f.mul(t, self.c_pows[1]);
                    out.coeffs[d - self.dim] = f.add(out.coeffs[d - self.dim], folded);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &BigFieldElement, mut k: u64) -> BigFieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// The q-power Frobenius z -> z^q, evaluated diagonally: the coefficient
    /// of X^j is scaled by c^j.
    pub fn frobenius_q(&self, z: &BigFieldElement) -> BigFieldElement {
        self.check(z);
        let coeffs = z
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &x)| self.base.mul(x, self.c_pows[j]))
            .collect();
        BigFieldElement { coeffs }
    }

    /// c^j for 0 <= j < q-1.
    pub fn c_pow(&self, j: usize) -> FieldElement {
        self.c_pows[j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn f17_gamma_is_three_and_generates() {
        let f = Field::new(17, 1).unwrap();
        assert_eq!(f.gamma().index(), 3);
        // Exhaust all powers: 3^j for j < 16 never hits 1, 3^16 = 1.
        let mut seen = std::collections::HashSet::new();
        let mut cur = f.one();
        for _ in 0..16 {
            assert!(seen.insert(cur.index()));
            cur = f.mul(cur, f.gamma());
        }
        assert_eq!(cur, f.one());
        assert_eq!(seen.len(), 16);
        assert_eq!(f.pow(f.gamma(), 16), f.one());
    }

    #[test]
    fn f2_gamma_is_one() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.gamma().index(), 1);
        assert_eq!(f.add(f.one(), f.one()), f.zero());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Field::new(4, 1).unwrap_err(),
            GaloisError::NonPrimeCharacteristic { p: 4 }
        );
        assert_eq!(Field::new(2, 17).unwrap_err(), GaloisError::OrderTooLarge { p: 2, e: 17 });
        assert_eq!(Field::new(7, 0).unwrap_err(), GaloisError::InvalidDegree { e: 0 });
        assert_eq!(Field::from_order(12).unwrap_err(), GaloisError::NotPrimePower { q: 12 });
        assert_eq!(Field::from_order(1).unwrap_err(), GaloisError::NotPrimePower { q: 1 });
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.element(5).unwrap_err(), GaloisError::ElementOutOfRange { idx: 5, q: 5 });
        assert_eq!(f.inv(f.zero()).unwrap_err(), GaloisError::DivisionByZero);
    }

    #[test]
    fn from_order_matches_new() {
        let a = Field::from_order(16).unwrap();
        assert_eq!((a.characteristic(), a.extension_degree()), (2, 4));
        let b = Field::from_order(27).unwrap();
        assert_eq!((b.characteristic(), b.extension_degree()), (3, 3));
    }

    #[test]
    fn cross_field_mixing_is_detected() {
        let f4 = Field::new(2, 2).unwrap();
        let f5 = Field::new(5, 1).unwrap();
        let a = f4.one();
        let b = f5.one();
        assert_eq!(f4.try_add(a, b).unwrap_err(), GaloisError::FieldMismatch);
        assert_eq!(f4.try_mul(b, a).unwrap_err(), GaloisError::FieldMismatch);
        assert_eq!(f5.try_div(b, a).unwrap_err(), GaloisError::FieldMismatch);
    }

    fn check_axioms(f: &Field, trials: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = f.order();
        for _ in 0..trials {
            let a = f.element(rng.gen_range(0..q)).unwrap();
            let b = f.element(rng.gen_range(0..q)).unwrap();
            let c = f.element(rng.gen_range(0..q)).unwrap();
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            assert_eq!(f.mul(a, f.one()), a);
            if !b.is_zero() {
                let binv = f.inv(b).unwrap();
                assert_eq!(f.mul(b, binv), f.one());
                assert_eq!(f.try_div(a, b).unwrap(), f.mul(a, binv));
            }
            // a^q = a in a field with q elements.
            assert_eq!(f.pow(a, q as u64), a);
        }
    }

    #[test]
    fn field_axioms_hold_on_random_samples() {
        for (p, e) in [(2u32, 1u32), (17, 1), (257, 1), (2, 4), (3, 2), (2, 3), (5, 2), (3, 3)] {
            let f = Field::new(p, e).unwrap();
            check_axioms(&f, 1000, 0xC0FFEE ^ ((p as u64) << 8) ^ e as u64);
        }
    }

    #[test]
    fn gamma_is_primitive_in_every_constructed_field() {
        for (p, e) in [(2u32, 1u32), (3, 1), (17, 1), (257, 1), (2, 2), (2, 4), (3, 2), (7, 2)] {
            let f = Field::new(p, e).unwrap();
            assert_eq!(
                f.multiplicative_order(f.gamma()).unwrap(),
                f.order() as u64 - 1,
                "gamma must generate the unit group of GF({})",
                f.order()
            );
        }
    }

    /// Independent check of the tabulated moduli: trial division by every
    /// monic polynomial of degree 1..=e/2, plus primitivity of X.
    #[test]
    fn tabulated_moduli_are_irreducible_with_x_primitive() {
        fn divides(div: &[u32], f: &[u32], p: u32) -> bool {
            modpoly::rem(f, div, p).is_empty()
        }
        for (p, e) in
            [(2u32, 2u32), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 8), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)]
        {
            let coeffs = conway_polynomial(p, e).expect("entry must exist").to_vec();
            assert_eq!(coeffs.len() as u32, e + 1);
            assert_eq!(*coeffs.last().unwrap(), 1);
            for d in 1..=(e / 2) {
                let count = (p as u64).pow(d);
                for t in 0..count {
                    let mut div = vec![0u32; d as usize + 1];
                    let mut m = t;
                    for c in div.iter_mut().take(d as usize) {
                        *c = (m % p as u64) as u32;
                        m /= p as u64;
                    }
                    div[d as usize] = 1;
                    assert!(
                        !divides(&div, &coeffs, p),
                        "tabulated modulus for GF({p}^{e}) has a factor of degree {d}"
                    );
                }
            }
            let f = Field::new(p, e).unwrap();
            assert_eq!(f.gamma().index(), p, "gamma must be the class of X");
        }
    }

    #[test]
    fn untabulated_extension_field_still_works() {
        // 11^2 = 121 has no table entry here; exercises the search path.
        let f = Field::new(11, 2).unwrap();
        assert_eq!(f.order(), 121);
        assert_eq!(f.multiplicative_order(f.gamma()).unwrap(), 120);
        check_axioms(&f, 500, 7);
    }

    #[test]
    fn big_field_construction_and_errors() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(BigField::new(&f2).unwrap_err(), GaloisError::BaseFieldTooSmall);

        let f5 = Field::new(5, 1).unwrap();
        // ord(1) = 1: X^4 - 1 factors.
        assert_eq!(
            BigField::with_constant(&f5, f5.one()).unwrap_err(),
            GaloisError::ReducibleModulus
        );
        // ord(4) = 2 in F_5: 2 divides ord but also divides (q-1)/ord = 2.
        assert_eq!(
            BigField::with_constant(&f5, f5.element(4).unwrap()).unwrap_err(),
            GaloisError::ReducibleModulus
        );
        assert!(BigField::new(&f5).is_ok());
    }

    #[test]
    fn big_field_frobenius_matches_pow_q() {
        for (p, e) in [(5u32, 1u32), (2, 2), (7, 1), (3, 2), (2, 3)] {
            let f = Field::new(p, e).unwrap();
            let big = BigField::new(&f).unwrap();
            let q = f.order() as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(q);
            for _ in 0..20 {
                let coeffs: Vec<FieldElement> = (0..big.dim())
                    .map(|_| f.element(rng.gen_range(0..f.order())).unwrap())
                    .collect();
                let z = BigFieldElement { coeffs };
                assert_eq!(big.frobenius_q(&z), big.pow(&z, q), "z^q mismatch in GF({})", q);
            }
        }
    }

    #[test]
    fn big_field_frobenius_is_linear_and_periodic() {
        let f = Field::new(5, 1).unwrap();
        let big = BigField::new(&f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let rand_elem = |rng: &mut ChaCha8Rng| BigFieldElement {
                coeffs: (0..big.dim())
                    .map(|_| f.element(rng.gen_range(0..5)).unwrap())
                    .collect(),
            };
            let a = rand_elem(&mut rng);
            let b = rand_elem(&mut rng);
            let c = f.element(rng.gen_range(0..5)).unwrap();
            // Additivity and F_q-linearity.
            assert_eq!(
                big.frobenius_q(&big.add(&a, &b)),
                big.add(&big.frobenius_q(&a), &big.frobenius_q(&b))
            );
            assert_eq!(
                big.frobenius_q(&big.scalar_mul(c, &a)),
                big.scalar_mul(c, &big.frobenius_q(&a))
            );
            // Applying Frobenius dim times is the identity.
            let mut z = a.clone();
            for _ in 0..big.dim() {
                z = big.frobenius_q(&z);
            }
            assert_eq!(z, a);
        }
    }

    #[test]
    fn big_field_is_a_field_on_random_samples() {
        let f = Field::new(2, 2).unwrap();
        let big = BigField::new(&f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let qq = 4u64.pow(3); // |L| = q^(q-1) = 64
        for _ in 0..30 {
            let z = BigFieldElement {
                coeffs: (0..big.dim())
                    .map(|_| f.element(rng.gen_range(0..4)).unwrap())
                    .collect(),
            };
            if z.is_zero() {
                continue;
            }
            // z^(|L|-1) = 1 certifies invertibility of every nonzero element.
            assert_eq!(big.pow(&z, qq - 1), big.one());
        }
    }

    #[test]
    fn big_field_embed_lift_roundtrip() {
        let f = Field::new(5, 1).unwrap();
        let big = BigField::new(&f).unwrap();
        let poly = crate::poly::Poly::from_indices(&f, &[2, 0, 3, 1]).unwrap();
        let z = big.embed_poly(&poly).unwrap();
        assert_eq!(big.lift(&z), poly);
        let too_big = crate::poly::Poly::from_indices(&f, &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(
            big.embed_poly(&too_big).unwrap_err(),
            GaloisError::DegreeTooLarge { degree: 4, max: 3 }
        );
    }
}
