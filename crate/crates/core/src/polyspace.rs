//! Ordered monomial bases and evaluation.
//!
//! A [`PlaneBasis`] spans polynomials `Σ a_ℓ(x) y^ℓ` with `deg a_ℓ ≤ b-2-z`
//! and `ℓ ≤ r-1`. Monomials are ordered with the `y` power outermost:
//! `1, x, …, x^{b-2-z}, y, xy, …`. A [`BihomBasis`] spans forms of bidegree
//! `(α, β)` on `A¹ × P^m`, ordered by `y` multi-index (lexicographic on the
//! exponent tuple) and then by `x` power. For `m = 1` the multi-index
//! `(ℓ, β-ℓ)` comes in position `ℓ`, so the two orders agree on the affine
//! chart.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneBasis {
    pub b: usize,
    pub r: usize,
    pub z: usize,
    /// `(x power, y power)` pairs in basis order.
    pub monomials: Vec<(usize, usize)>,
}

impl PlaneBasis {
    pub fn new(b: usize, r: usize, z: usize) -> Result<Self> {
        if b < z + 2 {
            return Err(Error::InvalidParams(format!("need b - 2 - z >= 0, got b = {b}, z = {z}")));
        }
        if r < 1 {
            return Err(Error::InvalidParams("locality r must be at least 1".into()));
        }
        let xdeg = b - 2 - z;
        let monomials = (0..r).flat_map(|l| (0..=xdeg).map(move |i| (i, l))).collect();
        Ok(Self { b, r, z, monomials })
    }

    pub fn max_x_degree(&self) -> usize {
        self.b - 2 - self.z
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BihomBasis {
    pub alpha: usize,
    pub beta: usize,
    pub m: usize,
    /// Degree-`β` multi-indices over `y_0..y_m`, in order.
    pub fiber_monomials: Vec<Vec<usize>>,
    /// `(x power, index into fiber_monomials)` pairs in basis order.
    pub monomials: Vec<(usize, usize)>,
}

impl BihomBasis {
    pub fn new(alpha: usize, beta: usize, m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParams("fiber dimension m must be at least 1".into()));
        }
        let fiber_monomials = multi_indices(m + 1, beta);
        let monomials = (0..fiber_monomials.len()).flat_map(|j| (0..=alpha).map(move |i| (i, j))).collect();
        Ok(Self { alpha, beta, m, fiber_monomials, monomials })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// All exponent tuples of length `vars` summing to `degree`, lexicographically ascending.
pub fn multi_indices(vars: usize, degree: usize) -> Vec<Vec<usize>> {
    fn rec(vars: usize, degree: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if vars == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            rec(vars - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars > 0 {
        rec(vars, degree, &mut Vec::with_capacity(vars), &mut out);
    }
    out
}

/// `C(n, k)` without overflow for the sizes used here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as usize
}

/// An evaluation point: plane `(x, y)` or bundle `(x, [y_0 : … : y_m])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Point {
    Plane { x: Fe, y: Fe },
    Bundle { x: Fe, y: Vec<Fe> },
}

impl Point {
    pub fn x(&self) -> Fe {
        match self {
            Point::Plane { x, .. } | Point::Bundle { x, .. } => *x,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    Plane(PlaneBasis),
    Bihom(BihomBasis),
}

impl Basis {
    pub fn len(&self) -> usize {
        match self {
            Basis::Plane(p) => p.len(),
            Basis::Bihom(h) => h.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Dimension of the fiber part: `r` for plane bases, `C(β+m, m)` for bundles.
    pub fn fiber_dim(&self) -> usize {
        match self {
            Basis::Plane(p) => p.r,
            Basis::Bihom(h) => h.fiber_monomials.len(),
        }
    }

    /// Values of the fiber monomials (`y^ℓ`, or the degree-`β` forms) at a point.
    pub fn fiber_row(&self, field: &PrimeField, point: &Point) -> Result<Vec<Fe>> {
        match (self, point) {
            (Basis::Plane(p), Point::Plane { y, .. }) => Ok(powers(field, *y, p.r)),
            (Basis::Bihom(h), Point::Bundle { y, .. }) => {
                if y.len() != h.m + 1 {
                    return Err(Error::ArityMismatch { expected: h.m + 1, found: y.len() });
                }
                Ok(h.fiber_monomials.iter().map(|idx| monomial(field, y, idx)).collect())
            }
            (Basis::Plane(_), Point::Bundle { y, .. }) => Err(Error::ArityMismatch { expected: 1, found: y.len() }),
            (Basis::Bihom(h), Point::Plane { .. }) => Err(Error::ArityMismatch { expected: h.m + 1, found: 1 }),
        }
    }

    /// Values of every basis monomial at a point, in basis order.
    pub fn eval_row(&self, field: &PrimeField, point: &Point) -> Result<Vec<Fe>> {
        let fiber = self.fiber_row(field, point)?;
        let (xdeg, monos) = match self {
            Basis::Plane(p) => (p.max_x_degree(), &p.monomials),
            Basis::Bihom(h) => (h.alpha, &h.monomials),
        };
        let xp = powers(field, point.x(), xdeg + 1);
        Ok(monos.iter().map(|&(i, j)| field.mul(xp[i], fiber[j])).collect())
    }
}

fn powers(field: &PrimeField, v: Fe, count: usize) -> Vec<Fe> {
    let mut out = Vec::with_capacity(count);
    let mut acc = Fe::ONE;
    for _ in 0..count {
        out.push(acc);
        acc = field.mul(acc, v);
    }
    out
}

fn monomial(field: &PrimeField, y: &[Fe], idx: &[usize]) -> Fe {
    y.iter().zip(idx).fold(Fe::ONE, |acc, (&v, &e)| field.mul(acc, field.pow(v, e as u64)))
}

/// A polynomial given by its coefficients in some basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyVec {
    pub basis: Basis,
    pub coeffs: Vec<Fe>,
}

impl PolyVec {
    pub fn new(basis: Basis, coeffs: Vec<Fe>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::LengthMismatch { expected: basis.len(), found: coeffs.len() });
        }
        Ok(Self { basis, coeffs })
    }

    pub fn eval(&self, field: &PrimeField, point: &Point) -> Result<Fe> {
        let row = self.basis.eval_row(field, point)?;
        Ok(row.iter().zip(&self.coeffs).fold(Fe::ZERO, |acc, (&a, &c)| field.add(acc, field.mul(a, c))))
    }
}

/// Dense bivariate polynomial, `coeffs[ℓ][i]` multiplying `x^i y^ℓ`.
///
/// Only used to expand products of factors into a [`PlaneBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanePoly {
    coeffs: Vec<Vec<Fe>>,
}

impl PlanePoly {
    pub fn constant(c: Fe) -> Self {
        Self { coeffs: vec![vec![c]] }
    }

    /// Reads a polynomial from its coordinates in a plane basis.
    pub fn from_basis(basis: &PlaneBasis, coeffs: &[Fe]) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::LengthMismatch { expected: basis.len(), found: coeffs.len() });
        }
        let mut out = vec![vec![Fe::ZERO; basis.max_x_degree() + 1]; basis.r];
        for (&(i, l), &c) in basis.monomials.iter().zip(coeffs) {
            out[l][i] = c;
        }
        Ok(Self { coeffs: out })
    }

    /// `x - a`.
    pub fn x_minus(field: &PrimeField, a: Fe) -> Self {
        Self { coeffs: vec![vec![field.neg(a), Fe::ONE]] }
    }

    /// `y - c`.
    pub fn y_minus(field: &PrimeField, c: Fe) -> Self {
        Self { coeffs: vec![vec![field.neg(c)], vec![Fe::ONE]] }
    }

    pub fn mul(&self, other: &Self, field: &PrimeField) -> Self {
        let ydeg = self.coeffs.len() + other.coeffs.len() - 1;
        let xlen = |p: &Self| p.coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let xdeg = xlen(self) + xlen(other) - 1;
        let mut out = vec![vec![Fe::ZERO; xdeg]; ydeg];
        for (l1, row1) in self.coeffs.iter().enumerate() {
            for (i1, &a) in row1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (l2, row2) in other.coeffs.iter().enumerate() {
                    for (i2, &c) in row2.iter().enumerate() {
                        let cell = &mut out[l1 + l2][i1 + i2];
                        *cell = field.add(*cell, field.mul(a, c));
                    }
                }
            }
        }
        Self { coeffs: out }
    }

    pub fn coeff(&self, xpow: usize, ypow: usize) -> Fe {
        self.coeffs.get(ypow).and_then(|row| row.get(xpow)).copied().unwrap_or(Fe::ZERO)
    }

    /// Coordinates in `basis`; fails if a nonzero term falls outside it.
    pub fn to_polyvec(&self, basis: &PlaneBasis) -> Result<PolyVec> {
        for (l, row) in self.coeffs.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() && (l >= basis.r || i > basis.max_x_degree()) {
                    return Err(Error::InvalidParams(format!("term x^{i} y^{l} is outside the basis")));
                }
            }
        }
        let coeffs = basis.monomials.iter().map(|&(i, l)| self.coeff(i, l)).collect();
        PolyVec::new(Basis::Plane(basis.clone()), coeffs)
    }

    /// `∏ (x - a) · ∏ (y - c)`.
    pub fn from_roots(field: &PrimeField, x_roots: &[Fe], y_roots: &[Fe]) -> Self {
        let mut p = Self::constant(Fe::ONE);
        for &a in x_roots {
            p = p.mul(&Self::x_minus(field, a), field);
        }
        for &c in y_roots {
            p = p.mul(&Self::y_minus(field, c), field);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(PlaneBasis::new(4, 3, 0).unwrap().len(), 9);
        assert_eq!(PlaneBasis::new(6, 3, 3).unwrap().len(), 6);
        assert_eq!(PlaneBasis::new(2, 1, 0).unwrap().monomials, vec![(0, 0)]);
        assert!(PlaneBasis::new(3, 2, 2).is_err());
        assert!(PlaneBasis::new(3, 0, 0).is_err());
        assert_eq!(BihomBasis::new(1, 1, 1).unwrap().len(), 4);
        assert_eq!(BihomBasis::new(0, 0, 3).unwrap().len(), 1);
        assert_eq!(BihomBasis::new(2, 2, 2).unwrap().len(), 18);
    }

    #[test]
    fn plane_order() {
        let b = PlaneBasis::new(4, 2, 0).unwrap();
        assert_eq!(b.monomials, vec![(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn multi_index_order() {
        assert_eq!(multi_indices(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(multi_indices(3, 1), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn expanded_product() {
        let f = PrimeField::new(31).unwrap();
        let fe = |v: &[u64]| v.iter().map(|&a| Fe(a)).collect::<Vec<_>>();
        let basis = PlaneBasis::new(4, 3, 0).unwrap();
        let p = PlanePoly::from_roots(&f, &fe(&[6, 23]), &fe(&[4, 10])).to_polyvec(&basis).unwrap();
        // x²y² + 17x²y + 9x² + 2xy² + 3xy + 18x + 14y² + 21y + 2
        assert_eq!(p.coeffs, fe(&[2, 18, 9, 21, 3, 17, 14, 2, 1]));
        assert_eq!(p.eval(&f, &Point::Plane { x: Fe(1), y: Fe(1) }).unwrap(), Fe(25));
        assert_eq!(p.eval(&f, &Point::Plane { x: Fe(6), y: Fe(5) }).unwrap(), Fe(0));
    }

    #[test]
    fn arity_checked() {
        let f = PrimeField::new(31).unwrap();
        let h = Basis::Bihom(BihomBasis::new(1, 1, 2).unwrap());
        let bad = Point::Bundle { x: Fe(1), y: vec![Fe(1), Fe(2)] };
        assert!(matches!(h.eval_row(&f, &bad), Err(Error::ArityMismatch { expected: 3, found: 2 })));
        assert!(h.eval_row(&f, &Point::Plane { x: Fe(1), y: Fe(1) }).is_err());
    }
}
