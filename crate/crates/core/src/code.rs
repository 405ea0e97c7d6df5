//! Evaluation codes: construction, encoding and parameters.

use std::collections::BTreeSet;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::linalg::Matrix;
use crate::points::{validate_bundle, validate_plane, BundlePoints, PlanePoints};
use crate::polyspace::{binomial, Basis, BihomBasis, PlaneBasis, Point, PolyVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CodeKind {
    Plane { r: usize, z: usize, points: PlanePoints },
    Bundle { t: usize, alpha: usize, beta: usize, points: BundlePoints },
}

/// Everything needed to realize a code: the field, the polynomial space and the points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub field: PrimeField,
    pub kind: CodeKind,
}

impl CodeSpec {
    pub fn plane(field: PrimeField, r: usize, z: usize, points: PlanePoints) -> Self {
        Self { field, kind: CodeKind::Plane { r, z, points } }
    }

    pub fn bundle(field: PrimeField, t: usize, alpha: usize, beta: usize, points: BundlePoints) -> Self {
        Self { field, kind: CodeKind::Bundle { t, alpha, beta, points } }
    }

    pub fn b(&self) -> usize {
        match &self.kind {
            CodeKind::Plane { points, .. } => points.b(),
            CodeKind::Bundle { points, .. } => points.b(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.kind {
            CodeKind::Plane { r, points, .. } => validate_plane(&self.field, points, *r),
            CodeKind::Bundle { t, beta, points, .. } => {
                if *t < 1 {
                    return Err(Error::InvalidParams("availability t must be at least 1".into()));
                }
                validate_bundle(&self.field, points, *t, *beta)
            }
        }
    }

    pub fn basis(&self) -> Result<Basis> {
        match &self.kind {
            CodeKind::Plane { r, z, points } => Ok(Basis::Plane(PlaneBasis::new(points.b(), *r, *z)?)),
            CodeKind::Bundle { alpha, beta, points, .. } => Ok(Basis::Bihom(BihomBasis::new(*alpha, *beta, points.m)?)),
        }
    }

    pub fn points(&self) -> Vec<Point> {
        match &self.kind {
            CodeKind::Plane { points, .. } => points.points(),
            CodeKind::Bundle { points, .. } => points.points(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Codeword(pub Vec<Fe>);

impl Codeword {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn values(&self) -> Vec<u64> {
        self.0.iter().map(|v| v.0).collect()
    }

    /// Scales so the first nonzero symbol is 1.
    pub fn normalized(&self, field: &PrimeField) -> Codeword {
        match self.0.iter().find(|v| !v.is_zero()) {
            Some(&lead) => {
                let inv = field.inv(lead).expect("lead is nonzero");
                Codeword(self.0.iter().map(|&v| field.mul(v, inv)).collect())
            }
            None => self.clone(),
        }
    }
}

/// Parameters of a locally recoverable code.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub t: usize,
    pub q: u64,
    pub rate: f64,
    /// `n - k - ceil(k/r) + 2`.
    pub singleton: usize,
}

/// `n - k - ceil(k/r) + 2`, the largest distance a locality-`r` code can reach.
pub fn singleton_bound(n: usize, k: usize, r: usize) -> usize {
    (n + 2).saturating_sub(k + k.div_ceil(r))
}

/// A realized code with its generator matrix.
///
/// Row `j` of the generator is basis monomial `j` evaluated at the points;
/// columns follow the batch-major point order.
#[derive(Clone, Debug)]
pub struct Code {
    spec: CodeSpec,
    basis: Basis,
    generator: Matrix,
    points: Vec<Point>,
    batch_len: usize,
}

impl Code {
    pub fn build(spec: CodeSpec) -> Result<Self> {
        spec.validate()?;
        let basis = spec.basis()?;
        let field = spec.field;
        let points = spec.points();
        let mut g = Matrix::zeros(field, basis.len(), points.len());
        for (c, p) in points.iter().enumerate() {
            for (r, v) in basis.eval_row(&field, p)?.into_iter().enumerate() {
                g.set(r, c, v);
            }
        }
        let rank = g.rank();
        if rank < basis.len() {
            return Err(Error::InjectivityFailure { rank, k: basis.len() });
        }
        let batch_len = points.len() / spec.b();
        Ok(Self { spec, basis, generator: g, points, batch_len })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn field(&self) -> PrimeField {
        self.spec.field
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn b(&self) -> usize {
        self.spec.b()
    }

    /// Locality.
    pub fn r(&self) -> usize {
        match &self.spec.kind {
            CodeKind::Plane { r, .. } => *r,
            CodeKind::Bundle { beta, points, .. } => binomial(beta + points.m, points.m),
        }
    }

    /// Availability.
    pub fn t(&self) -> usize {
        match &self.spec.kind {
            CodeKind::Plane { .. } => 1,
            CodeKind::Bundle { t, .. } => *t,
        }
    }

    /// Degree drop of a plane code, zero for bundles.
    pub fn z(&self) -> usize {
        match &self.spec.kind {
            CodeKind::Plane { z, .. } => *z,
            CodeKind::Bundle { .. } => 0,
        }
    }

    pub fn is_plane(&self) -> bool {
        matches!(self.spec.kind, CodeKind::Plane { .. })
    }

    pub fn batch_len(&self) -> usize {
        self.batch_len
    }

    /// Zero-based batch of a zero-based position.
    pub fn batch_of(&self, pos: usize) -> usize {
        pos / self.batch_len
    }

    /// Zero-based positions of a zero-based batch.
    pub fn batch_range(&self, batch: usize) -> Range<usize> {
        batch * self.batch_len..(batch + 1) * self.batch_len
    }

    pub fn encode(&self, message: &[Fe]) -> Result<Codeword> {
        if message.len() != self.k() {
            return Err(Error::LengthMismatch { expected: self.k(), found: message.len() });
        }
        Ok(Codeword(self.generator.left_apply(message)?))
    }

    /// Evaluates a polynomial of this code's space at every point.
    pub fn evaluate(&self, poly: &PolyVec) -> Result<Codeword> {
        if poly.basis != self.basis {
            return Err(Error::SpecMismatch("polynomial basis differs from the code's".into()));
        }
        self.encode(&poly.coeffs)
    }

    pub fn params(&self) -> CodeParams {
        let (n, k, r) = (self.n(), self.k(), self.r());
        CodeParams {
            n,
            k,
            r,
            t: self.t(),
            q: self.field().order(),
            rate: k as f64 / n as f64,
            singleton: singleton_bound(n, k, r),
        }
    }

    /// One-based indices of the batches on which `word` vanishes.
    pub fn zero_fibers(&self, word: &Codeword) -> BTreeSet<usize> {
        (0..self.b())
            .filter(|&i| word.0[self.batch_range(i)].iter().all(|v| v.is_zero()))
            .map(|i| i + 1)
            .collect()
    }

    /// Generator matrix as CSV, one row per basis monomial.
    pub fn generator_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.generator.to_u64_rows() {
            w.write_record(row.iter().map(u64::to_string)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}
