//! Low-weight words of plane codes with `b = r = 4`.
//!
//! Such a code has `d ≤ 7`. A word of weight at most 6 can be built as
//! `(x - x_1) · g(x, y)` when `g = Σ_{ℓ<4} (a_ℓ + b_ℓ x) y^ℓ` vanishes on
//! three points of each of the other three batches. That is nine linear
//! conditions on eight coefficients, with rows `(1, x, y, xy, y², xy², y³, xy³)`,
//! so it has a solution exactly when the 9×8 matrix has rank at most 7.

use itertools::Itertools;
use serde::Serialize;

use crate::code::{Code, CodeKind, CodeSpec, Codeword};
use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::linalg::Matrix;
use crate::points::{distinct_below, rng_from_seed, PlaneBatch, PlanePoints};
use crate::polyspace::{PlaneBasis, PlanePoly, PolyVec};

/// The 9×8 interpolation matrix for three base values and nine fiber values
/// (three per base value, in order).
#[derive(Clone, Debug)]
pub struct MinorSystem {
    pub xs: [Fe; 3],
    pub ys: [Fe; 9],
    pub matrix: Matrix,
}

pub fn build_minor_system(field: &PrimeField, xs: &[Fe], ys: &[Fe]) -> Result<MinorSystem> {
    let xs: [Fe; 3] = xs
        .try_into()
        .map_err(|_| Error::DegenerateInput(format!("need 3 base values, got {}", xs.len())))?;
    let ys: [Fe; 9] = ys
        .try_into()
        .map_err(|_| Error::DegenerateInput(format!("need 9 fiber values, got {}", ys.len())))?;
    if xs.iter().tuple_combinations().any(|(a, b)| a == b) {
        return Err(Error::DegenerateInput("base values must be distinct".into()));
    }
    if ys.iter().tuple_combinations().any(|(a, b)| a == b) {
        return Err(Error::DegenerateInput("fiber values must be distinct".into()));
    }
    let mut matrix = Matrix::zeros(*field, 9, 8);
    for (row, &y) in ys.iter().enumerate() {
        let x = xs[row / 3];
        let mut yp = Fe::ONE;
        for l in 0..4 {
            matrix.set(row, 2 * l, yp);
            matrix.set(row, 2 * l + 1, field.mul(x, yp));
            yp = field.mul(yp, y);
        }
    }
    Ok(MinorSystem { xs, ys, matrix })
}

impl MinorSystem {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Whether all nine maximal minors vanish.
    pub fn on_z(&self) -> bool {
        self.rank() <= 7
    }

    /// Determinant of the 8×8 minor that drops the row of the `j`-th point
    /// (1..=3) of the `i`-th batch (2..=4).
    pub fn minor(&self, i: usize, j: usize) -> Result<Fe> {
        if !(2..=4).contains(&i) || !(1..=3).contains(&j) {
            return Err(Error::IndexOutOfRange(3 * i + j));
        }
        let drop = 3 * (i - 2) + (j - 1);
        let keep: Vec<usize> = (0..9).filter(|&r| r != drop).collect();
        self.matrix.select_rows(&keep).determinant()
    }
}

/// Membership of `[y_21 : … : y_43]` (with fixed base values) in the
/// variety of vanishing maximal minors.
pub fn on_z(field: &PrimeField, xs: &[Fe], ys: &[Fe]) -> Result<bool> {
    Ok(build_minor_system(field, xs, ys)?.on_z())
}

#[derive(Clone, Debug, Serialize)]
pub struct LowWeightWord {
    /// Coefficients of `g` in the order `1, x, y, xy, y², xy², y³, xy³`,
    /// scaled so the first nonzero one is 1.
    pub g: Vec<Fe>,
    /// `(x - x_zf) · g` in the code's basis.
    pub poly: PolyVec,
    pub codeword: Codeword,
}

fn plane_44(code: &Code) -> Result<&PlanePoints> {
    match &code.spec().kind {
        CodeKind::Plane { r: 4, z: 0, points } if points.b() == 4 => Ok(points),
        _ => Err(Error::Unsupported("needs a plane code with b = 4, r = 4, z = 0".into())),
    }
}

/// Interpolates `(x - x_zf) · g` vanishing on the zero fiber `zero_fiber`
/// (one-based) and on nine one-based positions, three in each other batch.
pub fn interpolate_low_weight(code: &Code, zero_fiber: usize, positions: &[usize]) -> Result<LowWeightWord> {
    let points = plane_44(code)?;
    if !(1..=4).contains(&zero_fiber) {
        return Err(Error::IndexOutOfRange(zero_fiber));
    }
    let mut pos = positions.to_vec();
    pos.sort_unstable();
    pos.dedup();
    if pos.len() != 9 || pos.iter().any(|&p| p == 0 || p > code.n()) {
        return Err(Error::InvalidParams("need nine distinct positions".into()));
    }
    let batches: Vec<usize> = (1..=4).filter(|&i| i != zero_fiber).collect();
    for (chunk, &bi) in pos.chunks(3).zip(&batches) {
        if chunk.iter().any(|&p| code.batch_of(p - 1) + 1 != bi) {
            return Err(Error::InvalidParams(format!("need three positions in each batch other than {zero_fiber}")));
        }
    }
    let field = code.field();
    let all = code.points();
    let xs: Vec<Fe> = batches.iter().map(|&i| points.batches[i - 1].x).collect();
    let ys: Vec<Fe> = pos
        .iter()
        .map(|&p| match &all[p - 1] {
            crate::polyspace::Point::Plane { y, .. } => *y,
            crate::polyspace::Point::Bundle { .. } => unreachable!("plane code"),
        })
        .collect();
    let system = build_minor_system(&field, &xs, &ys)?;
    let kernel = system.matrix.kernel();
    let g = kernel.into_iter().next().ok_or(Error::NoKernel)?;
    let lead = *g.iter().find(|v| !v.is_zero()).expect("kernel vectors are nonzero");
    let inv = field.inv(lead)?;
    let g: Vec<Fe> = g.iter().map(|&v| field.mul(v, inv)).collect();
    let g_poly = PlanePoly::from_basis(&PlaneBasis::new(3, 4, 0)?, &g)?;
    let f = g_poly.mul(&PlanePoly::x_minus(&field, points.batches[zero_fiber - 1].x), &field);
    let poly = f.to_polyvec(&PlaneBasis::new(4, 4, 0)?)?;
    let codeword = code.evaluate(&poly)?;
    Ok(LowWeightWord { g, poly, codeword })
}

#[derive(Clone, Debug, Serialize)]
pub struct NonOptimalFound {
    /// Zero-based index of the candidate point set that succeeded.
    pub candidate: usize,
    pub points: PlanePoints,
    pub zero_fiber: usize,
    pub positions: Vec<usize>,
    pub word: LowWeightWord,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub field: PrimeField,
    /// Base values of the four batches; they do not affect optimality.
    pub xs: [Fe; 4],
    pub seed: u64,
    /// Total number of point sets examined, prepended ones included.
    pub trial_budget: usize,
    /// Point sets to try before sampling.
    pub prepend: Vec<PlanePoints>,
}

/// Tries every zero fiber and every choice of three points in each other
/// batch, in lexicographic order. Returns the first interpolant found.
pub fn low_weight_in(code: &Code) -> Result<Option<(usize, Vec<usize>, LowWeightWord)>> {
    plane_44(code)?;
    for zf in 1..=4 {
        let triples: Vec<Vec<Vec<usize>>> = (1..=4)
            .filter(|&i| i != zf)
            .map(|i| code.batch_range(i - 1).map(|p| p + 1).combinations(3).collect())
            .collect();
        for choice in triples.iter().multi_cartesian_product() {
            let pos: Vec<usize> = choice.into_iter().flatten().copied().collect();
            match interpolate_low_weight(code, zf, &pos) {
                Ok(word) => return Ok(Some((zf, pos, word))),
                Err(Error::NoKernel) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}

/// Samples fiber values for four batches over fixed base values until some
/// point set carries a word of weight at most 6.
pub fn search_nonoptimal(config: &SearchConfig) -> Result<NonOptimalFound> {
    let field = config.field;
    let q = field.order();
    if q < 21 {
        return Err(Error::CapacityExceeded(format!("20 distinct fiber values do not fit in F_{q}")));
    }
    let mut rng = rng_from_seed(config.seed);
    for candidate in 0..config.trial_budget {
        let points = match config.prepend.get(candidate) {
            Some(p) => p.clone(),
            None => {
                let ys = distinct_below(&mut rng, q, 20);
                let batches = config
                    .xs
                    .iter()
                    .zip(ys.chunks(5))
                    .map(|(&x, c)| PlaneBatch { x, ys: c.iter().map(|&y| Fe(y)).collect() })
                    .collect();
                PlanePoints::new(batches)
            }
        };
        let code = Code::build(CodeSpec::plane(field, 4, 0, points.clone()))?;
        if let Some((zero_fiber, positions, word)) = low_weight_in(&code)? {
            return Ok(NonOptimalFound { candidate, points, zero_fiber, positions, word });
        }
    }
    Err(Error::Exhausted(config.trial_budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::nonoptimal;

    fn fes(v: &[u64]) -> Vec<Fe> {
        v.iter().map(|&x| Fe(x)).collect()
    }

    #[test]
    fn known_point_has_vanishing_minors() {
        let f = PrimeField::new(37).unwrap();
        let sys = build_minor_system(&f, &fes(&nonoptimal::Z_XS), &fes(&nonoptimal::Z_POINT)).unwrap();
        assert_eq!(sys.rank(), 7);
        for i in 2..=4 {
            for j in 1..=3 {
                assert_eq!(sys.minor(i, j).unwrap(), Fe::ZERO);
            }
        }
        assert!(sys.minor(1, 1).is_err());
    }

    #[test]
    fn generic_point_is_off_z() {
        let f = PrimeField::new(37).unwrap();
        let ys = fes(&[1, 2, 3, 4, 5, 6, 7, 8, 10]);
        assert!(!on_z(&f, &fes(&[9, 16, 25]), &ys).unwrap());
        assert!(build_minor_system(&f, &fes(&[9, 9, 25]), &ys).is_err());
        assert!(build_minor_system(&f, &fes(&[9, 16]), &ys).is_err());
    }

    #[test]
    fn interpolant_vanishes_where_asked() {
        let f = PrimeField::new(37).unwrap();
        let code = Code::build(CodeSpec::plane(f, 4, 0, nonoptimal::points())).unwrap();
        let low = interpolate_low_weight(&code, nonoptimal::ZERO_FIBER, &nonoptimal::POSITIONS).unwrap();
        for p in 1..=5 {
            assert_eq!(low.codeword.0[p - 1], Fe::ZERO);
        }
        for &p in &nonoptimal::POSITIONS {
            assert_eq!(low.codeword.0[p - 1], Fe::ZERO);
        }
        assert!(interpolate_low_weight(&code, 1, &[6, 7, 8, 9, 11, 12, 16, 17, 18]).is_err());
    }

    #[test]
    fn search_finds_known_set_first() {
        let f = PrimeField::new(37).unwrap();
        let config = SearchConfig {
            field: f,
            xs: [Fe(4), Fe(9), Fe(16), Fe(25)],
            seed: 0,
            trial_budget: 1,
            prepend: vec![nonoptimal::points()],
        };
        let found = search_nonoptimal(&config).unwrap();
        assert_eq!(found.candidate, 0);
        assert!(found.word.codeword.weight() <= 6);
        let small = SearchConfig { field: PrimeField::new(19).unwrap(), prepend: vec![], ..config };
        assert!(matches!(search_nonoptimal(&small), Err(Error::CapacityExceeded(_))));
    }
}
