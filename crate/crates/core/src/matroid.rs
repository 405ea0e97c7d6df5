//! Column matroids of generator and parity-check matrices.
//!
//! The minimum distance of a code equals the size of the smallest circuit
//! of the matroid of its parity-check matrix. For plane codes, moving the
//! base points while keeping the fiber values changes the generator only by
//! an invertible row operation and a column scaling, so the matroid (and
//! hence the distance) does not depend on the base points.

use serde::Serialize;

use crate::code::{Code, CodeKind};
use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::linalg::Matrix;

/// Rank oracle on the columns of a matrix.
#[derive(Clone, Debug)]
pub struct MatroidOracle {
    matrix: Matrix,
}

impl MatroidOracle {
    pub fn new(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn ground_size(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rank(&self, subset: &[usize]) -> Result<usize> {
        if let Some(&bad) = subset.iter().find(|&&c| c >= self.ground_size()) {
            return Err(Error::IndexOutOfRange(bad));
        }
        if subset.is_empty() {
            return Ok(0);
        }
        Ok(self.matrix.select_columns(subset).rank())
    }

    /// A dependent set of least size whose proper subsets are all
    /// independent; the lexicographically first one of that size.
    pub fn smallest_circuit(&self, size_cap: usize) -> Result<(usize, Vec<usize>)> {
        let field = self.matrix.field();
        let columns: Vec<Vec<Fe>> = (0..self.ground_size()).map(|c| self.matrix.column(c)).collect();
        for size in 1..=size_cap.min(self.ground_size()) {
            let mut path = Vec::with_capacity(size);
            if let Some(found) = circuit_dfs(&field, &columns, size, 0, &mut Vec::new(), &mut path) {
                return Ok((size, found));
            }
        }
        Err(Error::NotFound(size_cap))
    }
}

/// Echelon basis entries are `(pivot index, vector with 1 at the pivot)`.
fn reduce(field: &PrimeField, basis: &[(usize, Vec<Fe>)], col: &[Fe]) -> Vec<Fe> {
    let mut v = col.to_vec();
    for (p, b) in basis {
        let f = v[*p];
        if !f.is_zero() {
            for (x, &y) in v.iter_mut().zip(b) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
    }
    v
}

fn circuit_dfs(
    field: &PrimeField,
    columns: &[Vec<Fe>],
    size: usize,
    start: usize,
    basis: &mut Vec<(usize, Vec<Fe>)>,
    path: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = path.len();
    for j in start..columns.len() {
        if columns.len() - j < size - depth {
            break;
        }
        let v = reduce(field, basis, &columns[j]);
        let pivot = v.iter().position(|x| !x.is_zero());
        path.push(j);
        if depth + 1 == size {
            if pivot.is_none() {
                return Some(path.clone());
            }
        } else if let Some(p) = pivot {
            // Smaller sets are independent once shorter circuits are ruled out.
            let inv = field.inv(v[p]).expect("pivot is nonzero");
            let v: Vec<Fe> = v.iter().map(|&x| field.mul(x, inv)).collect();
            basis.push((p, v));
            let found = circuit_dfs(field, columns, size, j + 1, basis, path);
            basis.pop();
            if found.is_some() {
                return found;
            }
        }
        path.pop();
    }
    None
}

/// Rows spanning the right kernel of the generator.
pub fn parity_check_matrix(code: &Code) -> Matrix {
    let g = code.generator();
    let kernel = g.kernel();
    if kernel.is_empty() {
        return Matrix::zeros(g.field(), 0, g.cols());
    }
    Matrix::from_rows(g.field(), &kernel).expect("kernel vectors share a length")
}

/// Rows `x^0..x^{b-2}` evaluated at the given values.
pub fn vandermonde_rows(field: &PrimeField, xs: &[Fe]) -> Matrix {
    let b = xs.len();
    let mut m = Matrix::zeros(*field, b.saturating_sub(1), b);
    for (j, &x) in xs.iter().enumerate() {
        let mut acc = Fe::ONE;
        for i in 0..b.saturating_sub(1) {
            m.set(i, j, acc);
            acc = field.mul(acc, x);
        }
    }
    m
}

fn check_distinct(xs: &[Fe]) -> Result<()> {
    for (i, a) in xs.iter().enumerate() {
        if xs[i + 1..].contains(a) {
            return Err(Error::DegenerateInput(format!("base value {a} repeats")));
        }
    }
    Ok(())
}

/// `(A, D)` with `A · M · D = M'`, where `M`, `M'` are [`vandermonde_rows`]
/// of `xs`, `xs2` and `D_j = ∏_{i≠j} (x'_j - x'_i)/(x_j - x_i)`.
pub fn base_change_witness(field: &PrimeField, xs: &[Fe], xs2: &[Fe]) -> Result<(Matrix, Matrix)> {
    if xs.len() != xs2.len() {
        return Err(Error::LengthMismatch { expected: xs.len(), found: xs2.len() });
    }
    if xs.len() < 2 {
        return Err(Error::DegenerateInput("need at least two base points".into()));
    }
    check_distinct(xs)?;
    check_distinct(xs2)?;
    let b = xs.len();
    let diag: Vec<Fe> = (0..b)
        .map(|j| {
            (0..b).filter(|&i| i != j).fold(Fe::ONE, |acc, i| {
                let num = field.sub(xs2[j], xs2[i]);
                let den = field.sub(xs[j], xs[i]);
                field.mul(acc, field.div(num, den).expect("distinct base values"))
            })
        })
        .collect();
    let d = Matrix::diagonal(*field, &diag);
    let md = vandermonde_rows(field, xs).mul(&d)?;
    let square: Vec<usize> = (0..b - 1).collect();
    let m2 = vandermonde_rows(field, xs2);
    let a = m2.select_columns(&square).mul(&md.select_columns(&square).inverse()?)?;
    Ok((a, d))
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoWitness {
    /// Block-diagonal row operation, one copy of `A` per power of `y`.
    pub t: Vec<Vec<u64>>,
    /// Diagonal column scaling, `D_a` repeated over batch `a`.
    pub r: Vec<Vec<u64>>,
    /// Whether `T · G · R = G'` holds entrywise.
    pub holds: bool,
    #[serde(skip)]
    pub t_matrix: Matrix,
    #[serde(skip)]
    pub r_matrix: Matrix,
}

/// Builds `T` and `R` with `T · G · R = G'` for two plane codes that
/// differ only in their base points, and checks the identity.
pub fn verify_matroid_iso(code: &Code, other: &Code) -> Result<IsoWitness> {
    let (CodeKind::Plane { r, z, points }, CodeKind::Plane { r: r2, z: z2, points: points2 }) =
        (&code.spec().kind, &other.spec().kind)
    else {
        return Err(Error::SpecMismatch("both codes must be plane codes".into()));
    };
    if code.field() != other.field() || r != r2 || *z != 0 || *z2 != 0 || points.b() != points2.b() {
        return Err(Error::SpecMismatch("field, locality, batch count and z = 0 must agree".into()));
    }
    if points.batches.iter().zip(&points2.batches).any(|(a, b)| a.ys != b.ys) {
        return Err(Error::SpecMismatch("fiber values differ".into()));
    }
    let field = code.field();
    let b = points.b();
    let (a, d) = base_change_witness(&field, &points.xs(), &points2.xs())?;
    let k = code.k();
    let mut t = Matrix::zeros(field, k, k);
    for l in 0..*r {
        for i in 0..b - 1 {
            for j in 0..b - 1 {
                t.set(l * (b - 1) + i, l * (b - 1) + j, a.get(i, j));
            }
        }
    }
    let n = code.n();
    let diag: Vec<Fe> = (0..n).map(|c| d.get(code.batch_of(c), code.batch_of(c))).collect();
    let rm = Matrix::diagonal(field, &diag);
    let holds = t.mul(code.generator())?.mul(&rm)? == *other.generator();
    Ok(IsoWitness { t: t.to_u64_rows(), r: rm.to_u64_rows(), holds, t_matrix: t, r_matrix: rm })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_base_change() {
        let f = PrimeField::new(31).unwrap();
        let (a, d) = base_change_witness(&f, &[Fe(0), Fe(1)], &[Fe(0), Fe(2)]).unwrap();
        assert_eq!(a.to_u64_rows(), vec![vec![16]]);
        assert_eq!(d.to_u64_rows(), vec![vec![2, 0], vec![0, 2]]);
        assert!(base_change_witness(&f, &[Fe(1), Fe(1)], &[Fe(0), Fe(2)]).is_err());
    }

    #[test]
    fn identity_has_no_circuits() {
        let f = PrimeField::new(7).unwrap();
        let o = MatroidOracle::new(Matrix::identity(f, 4));
        assert_eq!(o.smallest_circuit(4), Err(Error::NotFound(4)));
        assert_eq!(o.rank(&[]).unwrap(), 0);
        assert_eq!(o.rank(&[0, 3]).unwrap(), 2);
        assert_eq!(o.rank(&[4]), Err(Error::IndexOutOfRange(4)));
    }

    #[test]
    fn finds_parallel_columns() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_u64_rows(f, &[vec![1, 0, 1, 2], vec![0, 1, 1, 0]]).unwrap();
        let o = MatroidOracle::new(m);
        assert_eq!(o.smallest_circuit(4).unwrap(), (2, vec![0, 3]));
    }
}
