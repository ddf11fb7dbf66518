//! Dense univariate polynomials over a [`Field`], used as Reed-Solomon
//! message space and as workspace for the decoder's interpolation step.

use alloc::vec::Vec;

use crate::galois::{Field, FieldElement, GaloisError};

/// A polynomial with ascending coefficients; the zero polynomial stores no
/// coefficients and has degree `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field_id: u32,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    /// Builds a polynomial from coefficients (constant term first), trimming
    /// trailing zeros to keep the representation canonical.
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Result<Poly, GaloisError> {
        if coeffs.iter().any(|c| !field.owns(*c)) {
            return Err(GaloisError::FieldMismatch);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(Poly { field_id: field.id(), coeffs })
    }

    pub fn from_indices(field: &Field, indices: &[u32]) -> Result<Poly, GaloisError> {
        let coeffs = indices
            .iter()
            .map(|&i| field.element(i))
            .collect::<Result<Vec<_>, _>>()?;
        Poly::new(field, coeffs)
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field_id: field.id(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: FieldElement) -> Poly {
        Poly::new(field, alloc::vec![c]).expect("constant from the same field")
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, field: &Field, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_else(|| field.zero())
    }

    pub fn is_over(&self, field: &Field) -> bool {
        self.field_id == field.id()
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &Field, at: FieldElement) -> FieldElement {
        let mut acc = field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, at), c);
        }
        acc
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        self.zip_with(field, other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        self.zip_with(field, other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(
        &self,
        field: &Field,
        other: &Poly,
        op: impl Fn(&Field, FieldElement, FieldElement) -> FieldElement,
    ) -> Poly {
        assert!(self.is_over(field) && other.is_over(field));
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| op(field, self.coeff(field, i), other.coeff(field, i)))
            .collect();
        Poly::new(field, coeffs).expect("coefficients stay in the field")
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        assert!(self.is_over(field) && other.is_over(field));
        if self.is_zero() || other.is_zero() {
            return Poly::zero(field);
        }
        let mut out = alloc::vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(field, out).expect("coefficients stay in the field")
    }

    pub fn scale(&self, field: &Field, c: FieldElement) -> Poly {
        assert!(self.is_over(field));
        let coeffs = self.coeffs.iter().map(|&a| field.mul(a, c)).collect();
        Poly::new(field, coeffs).expect("coefficients stay in the field")
    }

    /// Monic product (x - r_1)(x - r_2)... over the given roots.
    pub fn from_roots(field: &Field, roots: &[FieldElement]) -> Poly {
        let mut acc = Poly::constant(field, field.one());
        for &r in roots {
            let factor = Poly::new(field, alloc::vec![field.neg(r), field.one()])
                .expect("linear factor");
            acc = acc.mul(field, &factor);
        }
        acc
    }

    /// Comparison key: coefficient indices padded to `len` entries, for a
    /// deterministic lexicographic ordering of candidate lists.
    pub fn lex_key(&self, len: usize) -> Vec<u32> {
        let mut key: Vec<u32> = self.coeffs.iter().map(|c| c.index()).collect();
        key.resize(len.max(key.len()), 0);
        key
    }
}
