//! Subspaces of `k^n` held as row spaces in reduced echelon form.

use super::field::Field;
use super::matrix::Matrix;

/// A subspace of row vectors of length `ambient`, stored by an RREF basis.
///
/// The basis rows are the unique reduced echelon basis, so coordinates of a
/// member vector are read directly off the pivot columns.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSpace<F: Field> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> RowSpace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        RowSpace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        RowSpace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn span(m: &Matrix<F>) -> Self {
        let mut r = m.clone();
        let pivots = r.rref_in_place();
        let rank = pivots.len();
        let keep: Vec<usize> = (0..rank).collect();
        RowSpace {
            basis: r.select_rows(&keep),
            pivots,
        }
    }

    pub fn span_vecs(field: &F, ambient: usize, vecs: &[Vec<F::Elem>]) -> Self {
        Self::span(&Matrix::from_rows(field, ambient, vecs))
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots; their unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    /// `v` minus its component along the basis (zero at every pivot column).
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                f.sub_mul_assign(o, &c, b);
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    pub fn contains_space(&self, other: &RowSpace<F>) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Coefficients of `v` in the basis, if `v` lies in the space.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &RowSpace<F>) -> RowSpace<F> {
        RowSpace::span(&self.basis.vstack(&other.basis))
    }

    /// Adds vectors, returning whether the space grew.
    pub fn extend(&mut self, vecs: &[Vec<F::Elem>]) -> bool {
        let before = self.dim();
        let extra = Matrix::from_rows(self.field(), self.ambient(), vecs);
        *self = RowSpace::span(&self.basis.vstack(&extra));
        self.dim() > before
    }

    /// Matrix sending a vector of the ambient space to its coordinates in
    /// the quotient by this space, with respect to the free-column complement.
    pub fn quotient_projection(&self) -> Matrix<F> {
        let f = self.field();
        let free = self.free_columns();
        let mut m = Matrix::zeros(f, self.ambient(), free.len());
        for (j, &c) in free.iter().enumerate() {
            m.set(c, j, f.one());
        }
        for (r, &p) in self.pivots.iter().enumerate() {
            for (j, &c) in free.iter().enumerate() {
                m.set(p, j, f.neg(self.basis.get(r, c)));
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::Rationals;

    #[test]
    fn coords_and_quotient() {
        let q = Rationals;
        let s = RowSpace::span(&Matrix::from_i64(&q, &[&[1, 1, 0], &[2, 2, 0]]));
        assert_eq!(s.dim(), 1);
        assert_eq!(s.free_columns(), vec![1, 2]);
        let v = vec![q.from_i64(3), q.from_i64(3), q.from_i64(0)];
        assert_eq!(s.coords(&v), Some(vec![q.from_i64(3)]));
        assert!(!s.contains(&[q.from_i64(1), q.from_i64(0), q.from_i64(0)]));
        // the projection kills the subspace
        let proj = s.quotient_projection();
        assert!(s.basis().mul(&proj).is_zero());
        assert_eq!(proj.rank(), 2);
    }
}
