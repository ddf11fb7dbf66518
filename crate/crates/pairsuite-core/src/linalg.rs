//! Dense linear algebra over a runtime [`Field`]: reduced row echelon form
//! with deterministic first-nonzero pivoting, nullspace extraction and affine
//! system solving. Internal to the crate; the decoder is the only consumer.

use alloc::vec;
use alloc::vec::Vec;

use crate::galois::{Field, FieldElement};

/// Row-major matrix of field elements.
pub(crate) struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }
}

/// Outcome of Gauss-Jordan elimination: for each column, the row of its pivot
/// (if the column is a pivot column).
struct Echelon {
    pivot_row_of_col: Vec<Option<usize>>,
}

/// In-place reduced row echelon form. Pivots are chosen deterministically:
/// columns left to right, first row (top-down among unused rows) with a
/// nonzero entry.
fn rref(field: &Field, m: &mut Matrix) -> Echelon {
    let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; m.cols];
    let mut next_row = 0;
    for (col, pivot_slot) in pivot_row_of_col.iter_mut().enumerate() {
        let Some(pr) = (next_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        // Swap pivot row into position.
        if pr != next_row {
            for c in 0..m.cols {
                let a = m.at(next_row, c);
                let b = m.at(pr, c);
                m.set(next_row, c, b);
                m.set(pr, c, a);
            }
        }
        let inv = field.inv(m.at(next_row, col)).expect("pivot is nonzero");
        for c in col..m.cols {
            m.set(next_row, c, field.mul(m.at(next_row, c), inv));
        }
        for r in 0..m.rows {
            if r == next_row || m.at(r, col).is_zero() {
                continue;
            }
            let factor = m.at(r, col);
            for c in col..m.cols {
                let v = field.sub(m.at(r, c), field.mul(factor, m.at(next_row, c)));
                m.set(r, c, v);
            }
        }
        *pivot_slot = Some(next_row);
        next_row += 1;
        if next_row == m.rows {
            break;
        }
    }
    Echelon { pivot_row_of_col }
}

/// Builds the kernel basis vector associated with free column `free_col`:
/// that coordinate is 1, other free coordinates 0, pivots back-substituted.
fn kernel_vector(field: &Field, m: &Matrix, ech: &Echelon, free_col: usize) -> Vec<FieldElement> {
    let mut v = vec![field.zero(); m.cols];
    v[free_col] = field.one();
    for (col, pr) in ech.pivot_row_of_col.iter().enumerate() {
        if let Some(r) = pr {
            v[col] = field.neg(m.at(*r, free_col));
        }
    }
    v
}

/// Full nullspace basis, one vector per free column, ordered by column index.
pub(crate) fn nullspace_basis(field: &Field, mut m: Matrix) -> Vec<Vec<FieldElement>> {
    let ech = rref(field, &mut m);
    (0..m.cols)
        .filter(|&c| ech.pivot_row_of_col[c].is_none())
        .map(|c| kernel_vector(field, &m, &ech, c))
        .collect()
}

/// Solution set of A x = b as a particular solution plus kernel basis.
pub(crate) struct AffineSolution {
    /// `None` when the system is inconsistent.
    pub particular: Option<Vec<FieldElement>>,
    pub kernel: Vec<Vec<FieldElement>>,
}

pub(crate) fn solve_affine(field: &Field, a: Matrix, b: &[FieldElement]) -> AffineSolution {
    assert_eq!(a.rows, b.len());
    let cols = a.cols;
    // Augmented matrix [A | b].
    let mut aug = Matrix::zero(field, a.rows, cols + 1);
    for (r, &rhs) in b.iter().enumerate() {
        for c in 0..cols {
            aug.set(r, c, a.at(r, c));
        }
        aug.set(r, cols, rhs);
    }
    let ech = rref(field, &mut aug);
    if ech.pivot_row_of_col[cols].is_some() {
        return AffineSolution { particular: None, kernel: Vec::new() };
    }
    let mut particular = vec![field.zero(); cols];
    for (col, pr) in ech.pivot_row_of_col.iter().take(cols).enumerate() {
        if let Some(r) = pr {
            particular[col] = aug.at(*r, cols);
        }
    }
    let kernel = (0..cols)
        .filter(|&c| ech.pivot_row_of_col[c].is_none())
        .map(|c| {
            let mut v = kernel_vector(field, &aug, &ech, c);
            v.truncate(cols);
            v
        })
        .collect();
    AffineSolution { particular: Some(particular), kernel }
}
