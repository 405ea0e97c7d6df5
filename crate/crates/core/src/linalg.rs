//! Dense matrices over a prime field and Gaussian elimination.
//!
//! Elimination always pivots on the first nonzero entry of the leftmost
//! remaining column, so reduced echelon forms, kernel bases and solutions
//! are fully determined by the input.

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// Builds a matrix from rows of field elements. All rows must agree in length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<Fe>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension(format!("ragged row of length {} (expected {cols})", row.len())));
            }
            data.extend_from_slice(row);
        }
        Ok(Self { field, rows: rows.len(), cols, data })
    }

    /// Like [`Matrix::from_rows`] but reduces raw integers into the field.
    pub fn from_u64_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.iter().map(|&v| field.elem(v)).collect()).collect();
        Self::from_rows(field, &rows)
    }

    pub fn diagonal(field: PrimeField, diag: &[Fe]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Rows as plain integers, convenient for serialization.
    pub fn to_u64_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|v| v.0).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Self { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(l, j))));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, found: v.len() });
        }
        let f = self.field;
        let mut out = vec![Fe::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(a, g));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: v.len() });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(src) = (prow..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(prow, src);
            let inv = f.inv(self.get(prow, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = self.get(prow, j);
                self.set(prow, j, f.mul(v, inv));
            }
            for r in 0..self.rows {
                if r == prow {
                    continue;
                }
                let factor = self.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(r, j), f.mul(factor, self.get(prow, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a basis of the right kernel `{v : M v = 0}`.
    ///
    /// The basis has one vector per free column, taken in increasing column
    /// order, with a 1 in that column.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<Fe>>) {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Fe::ZERO; self.cols];
            v[free] = Fe::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }

    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        self.rank_and_kernel().1
    }

    /// Basis of the left kernel `{v : v M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<Fe>> {
        self.transpose().kernel()
    }

    /// Solves `M x = b`, returning the particular solution with free
    /// variables set to zero.
    pub fn solve(&self, b: &[Fe]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols);
        }
        Ok(Solution { x, underdetermined: pivots.len() < self.cols })
    }

    /// Inverse of a square matrix, or [`Error::Inconsistent`] if singular.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Fe::ONE);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Inconsistent);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(aug.select_columns(&cols))
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Result<Fe> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Fe::ONE;
        for c in 0..n {
            let Some(src) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Ok(Fe::ZERO);
            };
            if src != c {
                m.swap_rows(c, src);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot)?;
            for r in c + 1..n {
                let factor = f.mul(m.get(r, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(c, j)));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Fe>,
    /// True when the system has more than one solution.
    pub underdetermined: bool,
}
