//! Evaluation point sets: validation and seeded sampling.
//!
//! Sampling uses xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). A value below `q` is drawn from
//! `next_u64()` by rejecting outputs at or above `q * floor(2^64 / q)` and
//! reducing the rest modulo `q`. Distinct values are obtained by discarding
//! repeats. These rules are enough to replay a sample stream elsewhere.

use std::collections::HashSet;

use itertools::Itertools;
use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::linalg::Matrix;
use crate::polyspace::{binomial, multi_indices, Point};

pub type Rng = Xoshiro256PlusPlus;

pub fn rng_from_seed(seed: u64) -> Rng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Uniform integer in `[0, bound)`.
pub fn uniform_below(rng: &mut Rng, bound: u64) -> u64 {
    assert!(bound > 0);
    let zone = bound * (u64::MAX / bound);
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

/// `count` distinct residues below `bound`, in draw order.
pub fn distinct_below(rng: &mut Rng, bound: u64, count: usize) -> Vec<u64> {
    assert!(count as u128 <= bound as u128);
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = uniform_below(rng, bound);
        if seen.insert(v) {
            out.push(v);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneBatch {
    pub x: Fe,
    pub ys: Vec<Fe>,
}

/// Batches `A_1, …, A_b` of a plane code; batch `i` is `{(x_i, y_ij)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanePoints {
    pub batches: Vec<PlaneBatch>,
}

impl PlanePoints {
    pub fn new(batches: Vec<PlaneBatch>) -> Self {
        Self { batches }
    }

    /// Groups a batch-major list of `(x, y)` pairs into batches of `r + 1`.
    pub fn from_pairs(field: &PrimeField, pairs: &[(u64, u64)], r: usize) -> Result<Self> {
        let size = r + 1;
        if pairs.is_empty() || pairs.len() % size != 0 {
            return Err(Error::BatchSizeMismatch {
                batch: pairs.len() / size + 1,
                expected: size,
                found: pairs.len() % size,
            });
        }
        let mut batches = Vec::with_capacity(pairs.len() / size);
        for (bi, chunk) in pairs.chunks(size).enumerate() {
            let x = field.checked(chunk[0].0)?;
            let mut ys = Vec::with_capacity(size);
            for &(px, py) in chunk {
                if px != x.0 {
                    return Err(Error::InconsistentBatchX(bi + 1));
                }
                ys.push(field.checked(py)?);
            }
            batches.push(PlaneBatch { x, ys });
        }
        Ok(Self { batches })
    }

    pub fn b(&self) -> usize {
        self.batches.len()
    }

    pub fn xs(&self) -> Vec<Fe> {
        self.batches.iter().map(|b| b.x).collect()
    }

    /// All points in batch-major order.
    pub fn points(&self) -> Vec<Point> {
        self.batches.iter().flat_map(|b| b.ys.iter().map(move |&y| Point::Plane { x: b.x, y })).collect()
    }

    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.batches.iter().flat_map(|b| b.ys.iter().map(move |y| (b.x.0, y.0))).collect()
    }

    /// Same fiber coordinates over new base points.
    pub fn with_xs(&self, xs: &[Fe]) -> Self {
        let batches = self.batches.iter().zip(xs).map(|(b, &x)| PlaneBatch { x, ys: b.ys.clone() }).collect();
        Self { batches }
    }
}

fn check_capacity(field: &PrimeField, b: usize, per_batch: usize) -> Result<()> {
    let q = field.order() as u128;
    if b as u128 > q {
        return Err(Error::CapacityExceeded(format!("{b} base points exceed the {q} field elements")));
    }
    let total = b as u128 * per_batch as u128;
    if total > q {
        return Err(Error::CapacityExceeded(format!("{total} distinct fiber values exceed the {q} field elements")));
    }
    Ok(())
}

/// Checks batch sizes, capacity, distinct base points and globally distinct `y`.
pub fn validate_plane(field: &PrimeField, pts: &PlanePoints, r: usize) -> Result<()> {
    for (i, batch) in pts.batches.iter().enumerate() {
        if batch.ys.len() != r + 1 {
            return Err(Error::BatchSizeMismatch { batch: i + 1, expected: r + 1, found: batch.ys.len() });
        }
    }
    check_capacity(field, pts.b(), r + 1)?;
    let mut xs = HashSet::new();
    let mut ys = HashSet::new();
    for batch in &pts.batches {
        field.checked(batch.x.0)?;
        if !xs.insert(batch.x) {
            return Err(Error::DuplicateX(batch.x.0));
        }
        for &y in &batch.ys {
            field.checked(y.0)?;
            if !ys.insert(y) {
                return Err(Error::DuplicateY(y.0.to_string()));
            }
        }
    }
    Ok(())
}

/// Uniform base points and a uniform set of `b(r+1)` distinct fiber values,
/// assigned to the batches in draw order.
pub fn sample_plane(field: &PrimeField, b: usize, r: usize, seed: u64) -> Result<PlanePoints> {
    check_capacity(field, b, r + 1)?;
    let mut rng = rng_from_seed(seed);
    let q = field.order();
    let xs = distinct_below(&mut rng, q, b);
    let ys = distinct_below(&mut rng, q, b * (r + 1));
    let batches = xs
        .iter()
        .zip(ys.chunks(r + 1))
        .map(|(&x, chunk)| PlaneBatch { x: Fe(x), ys: chunk.iter().map(|&y| Fe(y)).collect() })
        .collect();
    Ok(PlanePoints { batches })
}

/// Scales a nonzero vector so its last nonzero coordinate is 1.
pub fn normalize_projective(field: &PrimeField, y: &[Fe]) -> Result<Vec<Fe>> {
    let last = y
        .iter()
        .rev()
        .find(|v| !v.is_zero())
        .ok_or_else(|| Error::DegenerateInput("the zero vector is not a projective point".into()))?;
    let inv = field.inv(*last)?;
    Ok(y.iter().map(|&v| field.mul(v, inv)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleBatch {
    pub x: Fe,
    /// Normalized points of `P^m`.
    pub ys: Vec<Vec<Fe>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundlePoints {
    pub m: usize,
    pub batches: Vec<BundleBatch>,
}

impl BundlePoints {
    /// Builds batches from raw coordinates, normalizing every fiber point.
    pub fn from_raw(field: &PrimeField, m: usize, batches: &[(u64, Vec<Vec<u64>>)]) -> Result<Self> {
        let mut out = Vec::with_capacity(batches.len());
        for (x, ys) in batches {
            let x = field.checked(*x)?;
            let mut norm = Vec::with_capacity(ys.len());
            for y in ys {
                if y.len() != m + 1 {
                    return Err(Error::ArityMismatch { expected: m + 1, found: y.len() });
                }
                let y: Vec<Fe> = y.iter().map(|&v| field.checked(v)).collect::<Result<_>>()?;
                norm.push(normalize_projective(field, &y)?);
            }
            out.push(BundleBatch { x, ys: norm });
        }
        Ok(Self { m, batches: out })
    }

    pub fn b(&self) -> usize {
        self.batches.len()
    }

    pub fn points(&self) -> Vec<Point> {
        self.batches
            .iter()
            .flat_map(|b| b.ys.iter().map(move |y| Point::Bundle { x: b.x, y: y.clone() }))
            .collect()
    }
}

fn fiber_eval_matrix(field: &PrimeField, ys: &[&Vec<Fe>], monos: &[Vec<usize>]) -> Matrix {
    let rows: Vec<Vec<Fe>> = ys
        .iter()
        .map(|y| {
            monos
                .iter()
                .map(|idx| y.iter().zip(idx).fold(Fe::ONE, |acc, (&v, &e)| field.mul(acc, field.pow(v, e as u64))))
                .collect()
        })
        .collect();
    Matrix::from_rows(*field, &rows).expect("rows share the monomial count")
}

/// True when no nonzero degree-`β` form vanishes on any `C(β+m, m)` points of the batch.
pub fn check_general_position(field: &PrimeField, batch: &[Vec<Fe>], beta: usize, m: usize) -> bool {
    let monos = multi_indices(m + 1, beta);
    let r = monos.len();
    if batch.len() < r {
        return true;
    }
    batch.iter().combinations(r).all(|subset| fiber_eval_matrix(field, &subset, &monos).rank() == r)
}

/// Number of points of `P^m(F_q)`, saturating.
pub fn projective_point_count(q: u64, m: usize) -> u128 {
    let q = q as u128;
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..=m {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(q);
    }
    total
}

/// Checks arity, batch sizes, distinct bases, distinct fiber points and general position.
pub fn validate_bundle(field: &PrimeField, pts: &BundlePoints, t: usize, beta: usize) -> Result<()> {
    let r = binomial(beta + pts.m, pts.m);
    let size = t * r + 1;
    if pts.b() as u128 > field.order() as u128 {
        return Err(Error::CapacityExceeded(format!("{} base points exceed the field size", pts.b())));
    }
    if size as u128 > projective_point_count(field.order(), pts.m) {
        return Err(Error::CapacityExceeded(format!("{size} fiber points exceed the size of P^{}", pts.m)));
    }
    let mut xs = HashSet::new();
    for (i, batch) in pts.batches.iter().enumerate() {
        if batch.ys.len() != size {
            return Err(Error::BatchSizeMismatch { batch: i + 1, expected: size, found: batch.ys.len() });
        }
        if !xs.insert(batch.x) {
            return Err(Error::DuplicateX(batch.x.0));
        }
        let mut seen = HashSet::new();
        for y in &batch.ys {
            if y.len() != pts.m + 1 {
                return Err(Error::ArityMismatch { expected: pts.m + 1, found: y.len() });
            }
            let n = normalize_projective(field, y)?;
            if &n != y {
                return Err(Error::DegenerateInput(format!("fiber point {y:?} is not normalized")));
            }
            if !seen.insert(n) {
                return Err(Error::DuplicateY(format!("{y:?} in batch {}", i + 1)));
            }
        }
        if !check_general_position(field, &batch.ys, beta, pts.m) {
            return Err(Error::GeneralPositionViolated { batch: i + 1 });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleSampling {
    pub b: usize,
    pub t: usize,
    pub beta: usize,
    pub m: usize,
    pub max_attempts: usize,
}

pub const DEFAULT_MAX_ATTEMPTS: usize = 1000;

/// Uniform distinct base points in the affine chart, and for each batch
/// `tr + 1` distinct uniform points of `P^m`, redrawn as a whole until they
/// are in general position.
pub fn sample_bundle(field: &PrimeField, params: BundleSampling, seed: u64) -> Result<BundlePoints> {
    let BundleSampling { b, t, beta, m, max_attempts } = params;
    if m < 1 {
        return Err(Error::InvalidParams("fiber dimension m must be at least 1".into()));
    }
    let q = field.order();
    let r = binomial(beta + m, m);
    let size = t * r + 1;
    if b as u128 > q as u128 {
        return Err(Error::CapacityExceeded(format!("{b} base points exceed the {q} affine values")));
    }
    if size as u128 > projective_point_count(q, m) {
        return Err(Error::CapacityExceeded(format!("{size} fiber points exceed the size of P^{m}")));
    }
    let mut rng = rng_from_seed(seed);
    let xs = distinct_below(&mut rng, q, b);
    let mut batches = Vec::with_capacity(b);
    for &x in &xs {
        let mut found = None;
        for _ in 0..max_attempts {
            let ys = sample_fiber(field, &mut rng, m, size);
            if check_general_position(field, &ys, beta, m) {
                found = Some(ys);
                break;
            }
        }
        let ys = found.ok_or(Error::GeneralPositionExhausted { attempts: max_attempts })?;
        batches.push(BundleBatch { x: Fe(x), ys });
    }
    Ok(BundlePoints { m, batches })
}

fn sample_fiber(field: &PrimeField, rng: &mut Rng, m: usize, count: usize) -> Vec<Vec<Fe>> {
    let q = field.order();
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<Fe> = (0..=m).map(|_| Fe(uniform_below(rng, q))).collect();
        let Ok(p) = normalize_projective(field, &v) else { continue };
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f31() -> PrimeField {
        PrimeField::new(31).unwrap()
    }

    #[test]
    fn capacity_and_duplicates() {
        let f = f31();
        assert!(matches!(sample_plane(&PrimeField::new(5).unwrap(), 3, 1, 1), Err(Error::CapacityExceeded(_))));
        let pts = PlanePoints::from_pairs(&f, &[(1, 1), (1, 2), (2, 3), (2, 1)], 1).unwrap();
        assert!(matches!(validate_plane(&f, &pts, 1), Err(Error::DuplicateY(_))));
        let pts = PlanePoints::from_pairs(&f, &[(1, 1), (1, 2), (1, 3), (1, 4)], 1).unwrap();
        assert_eq!(validate_plane(&f, &pts, 1), Err(Error::DuplicateX(1)));
        assert!(matches!(
            PlanePoints::from_pairs(&f, &[(1, 1), (2, 2)], 1),
            Err(Error::InconsistentBatchX(1))
        ));
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = f31();
        let a = sample_plane(&f, 3, 1, 9).unwrap();
        assert_eq!(a, sample_plane(&f, 3, 1, 9).unwrap());
        validate_plane(&f, &a, 1).unwrap();
    }

    #[test]
    fn collinear_points_fail_general_position() {
        let f = PrimeField::new(37).unwrap();
        let pts: Vec<Vec<Fe>> =
            [[0, 0, 1], [1, 0, 1], [2, 0, 1], [0, 1, 1]].iter().map(|p| p.iter().map(|&v| Fe(v)).collect()).collect();
        assert!(!check_general_position(&f, &pts, 1, 2));
        assert!(check_general_position(&f, &pts[1..], 1, 2));
    }

    #[test]
    fn normalization() {
        let f = f31();
        assert_eq!(normalize_projective(&f, &[Fe(2), Fe(4), Fe(0)]).unwrap(), vec![Fe(16), Fe(1), Fe(0)]);
        assert!(normalize_projective(&f, &[Fe(0), Fe(0)]).is_err());
    }
}
