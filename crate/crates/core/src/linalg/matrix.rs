//! Dense row-major matrices over an exact field.

use std::fmt;

use thiserror::Error;

use super::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, cols, &rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                let neg_a = f.neg(a);
                let base = r * other.cols;
                for c in 0..other.cols {
                    f.sub_mul_assign(&mut out.data[base + c], &neg_a, other.get(k, c));
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            let neg_a = f.neg(a);
            for (c, o) in out.iter_mut().enumerate() {
                f.sub_mul_assign(o, &neg_a, self.get(k, c));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    f.sub_mul_assign(&mut acc, &f.neg(a), b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(c, a)).collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::from_vec(&self.field, self.rows + other.rows, self.cols, data)
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend(self.row(r).iter().cloned());
            data.extend(other.row(r).iter().cloned());
        }
        Self::from_vec(&self.field, self.rows, cols, data)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        m.write_block(0, 0, self);
        m.write_block(self.rows, self.cols, other);
        m
    }

    pub fn write_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend(self.row(r).iter().cloned());
        }
        Self::from_vec(&self.field, idx.len(), self.cols, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            for &c in idx {
                data.push(self.get(r, c).clone());
            }
        }
        Self::from_vec(&self.field, self.rows, idx.len(), data)
    }

    /// Reduced row echelon form together with pivot columns and rank.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    /// Gauss-Jordan elimination in place; returns the pivot columns.
    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == rows {
                break;
            }
            let Some(p) = (lead..rows).find(|&r| !f.is_zero(self.get(r, c))) else {
                continue;
            };
            self.swap_rows(lead, p);
            let inv = f.inv(self.get(lead, c)).expect("pivot is non-zero");
            for k in c..cols {
                let v = f.mul(&inv, self.get(lead, k));
                self.set(lead, k, v);
            }
            let (head, tail) = self.data.split_at_mut(lead * cols);
            let (pivot_row, rest) = tail.split_at_mut(cols);
            for other in head.chunks_mut(cols).chain(rest.chunks_mut(cols)) {
                if f.is_zero(&other[c]) {
                    continue;
                }
                let factor = other[c].clone();
                for k in c..cols {
                    f.sub_mul_assign(&mut other[k], &factor, &pivot_row[k]);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space `{v : m v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(matrix.get(r, free));
                }
                v
            })
            .collect()
    }

    /// Rows spanning the left null space `{x : x m = 0}`.
    pub fn left_kernel(&self) -> Matrix<F> {
        let basis = self.transpose().kernel_basis();
        Matrix::from_rows(&self.field, self.rows, &basis)
    }

    /// Some `x` with `m x = b`, or `None` when the system is inconsistent.
    pub fn solve_linear(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "right-hand side has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let rhs = Matrix::from_vec(f, self.rows, 1, b.to_vec());
        let Rref { matrix, pivots, .. } = self.hstack(&rhs).rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }
}
