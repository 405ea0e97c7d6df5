//! Minimum distance, optimality and explicit low-weight words.
//!
//! Three independent engines compute the exact minimum distance:
//! [`exhaustive`] walks every codeword, [`infoset`] enumerates low-weight
//! messages over several information sets, and [`structured`] searches
//! zero sets fiber by fiber. Every report carries a codeword of weight `d`.

pub mod exhaustive;
pub mod infoset;
pub mod structured;

use serde::{Deserialize, Serialize};

use crate::code::{singleton_bound, Code, CodeKind, Codeword};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::polyspace::{PlaneBasis, PlanePoly};

pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Infoset,
    Structured,
}

/// Which engine to run. `Auto` is exhaustive when affordable, otherwise infoset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Auto,
    Exhaustive,
    Infoset,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of projective messages the exhaustive engine may visit.
    pub exhaustive_budget: u128,
    /// Node budget of the structured search.
    pub node_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self { exhaustive_budget: DEFAULT_EXHAUSTIVE_BUDGET, node_budget: structured::DEFAULT_NODE_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub d: usize,
    /// A codeword of weight `d`, scaled so its first nonzero symbol is 1.
    pub witness: Codeword,
    pub method: Method,
    pub optimal: bool,
    pub singleton_bound: usize,
}

fn report(code: &Code, d: usize, word: Vec<Fe>, method: Method) -> DistanceReport {
    let bound = singleton_bound(code.n(), code.k(), code.r());
    let witness = Codeword(word).normalized(&code.field());
    debug_assert_eq!(witness.weight(), d);
    DistanceReport { d, witness, method, optimal: d == bound, singleton_bound: bound }
}

pub fn min_distance_exhaustive(code: &Code, budget: u128) -> Result<DistanceReport> {
    let (d, word) = exhaustive::min_weight(code.generator(), budget)?;
    Ok(report(code, d, word, Method::Exhaustive))
}

pub fn min_distance_infoset(code: &Code) -> Result<DistanceReport> {
    let (d, word) = infoset::min_weight(code.generator())?;
    Ok(report(code, d, word, Method::Infoset))
}

pub fn min_distance_structured(code: &Code, node_budget: u64) -> Result<DistanceReport> {
    let (zeros, word) = structured::max_zeros(code, node_budget)?;
    Ok(report(code, code.n() - zeros, word, Method::Structured))
}

pub fn min_distance(code: &Code, engine: Engine, limits: &Limits) -> Result<DistanceReport> {
    match engine {
        Engine::Exhaustive => min_distance_exhaustive(code, limits.exhaustive_budget),
        Engine::Infoset => min_distance_infoset(code),
        Engine::Structured => min_distance_structured(code, limits.node_budget),
        Engine::Auto => {
            let needed = exhaustive::projective_count(code.field().order(), code.k());
            if needed <= limits.exhaustive_budget {
                min_distance_exhaustive(code, limits.exhaustive_budget)
            } else {
                min_distance_infoset(code)
            }
        }
    }
}

/// Same as [`min_distance`]; the report's `optimal` flag is the verdict.
pub fn optimality(code: &Code, engine: Engine, limits: &Limits) -> Result<DistanceReport> {
    min_distance(code, engine, limits)
}

/// A nonzero codeword of weight at most `max_weight`, found by the structured search.
pub fn find_weight_at_most(code: &Code, max_weight: usize, node_budget: u64) -> Result<Option<Codeword>> {
    Ok(structured::find_weight_at_most(code, max_weight, node_budget)?
        .map(|w| Codeword(w).normalized(&code.field())))
}

/// Evaluation of `∏_{i∈Z} (x - x_i) · ∏_{c∈roots} (y - c)` where `Z` holds
/// `b - 2` one-based batch indices and the `r - 1` roots are distinct
/// fiber values of the two remaining batches. Such a word has weight `r + 3`.
pub fn weight_witness_with(code: &Code, zero_batches: &[usize], y_roots: &[Fe]) -> Result<Codeword> {
    let CodeKind::Plane { r, z, points } = &code.spec().kind else {
        return Err(Error::Unsupported("weight r+3 witnesses exist for plane codes only".into()));
    };
    let b = points.b();
    if *z != 0 || b < 3 {
        return Err(Error::Unsupported(format!("weight r+3 witness needs z = 0 and b >= 3 (z = {z}, b = {b})")));
    }
    let mut zset = zero_batches.to_vec();
    zset.sort_unstable();
    zset.dedup();
    if zset.len() != b - 2 || zset.iter().any(|&i| i == 0 || i > b) {
        return Err(Error::InvalidParams(format!("need {} distinct zero batches in 1..={b}", b - 2)));
    }
    let mut roots = y_roots.to_vec();
    roots.sort_unstable();
    roots.dedup();
    let others: Vec<Fe> = (1..=b)
        .filter(|i| !zset.contains(i))
        .flat_map(|i| points.batches[i - 1].ys.iter().copied())
        .collect();
    if roots.len() != r - 1 || roots.iter().any(|c| !others.contains(c)) {
        return Err(Error::InvalidParams(format!(
            "need {} distinct roots among the fiber values of the non-zero batches",
            r - 1
        )));
    }
    let field = code.field();
    let xs: Vec<Fe> = zset.iter().map(|&i| points.batches[i - 1].x).collect();
    let poly = PlanePoly::from_roots(&field, &xs, y_roots).to_polyvec(&PlaneBasis::new(b, *r, 0)?)?;
    code.evaluate(&poly)
}

/// The weight `r + 3` word vanishing on batches `1..=b-2` and on the first
/// `r - 1` points of batch `b - 1`.
pub fn weight_witness_r_plus_3(code: &Code) -> Result<Codeword> {
    let CodeKind::Plane { r, points, .. } = &code.spec().kind else {
        return Err(Error::Unsupported("weight r+3 witnesses exist for plane codes only".into()));
    };
    let b = points.b();
    if b < 3 {
        return Err(Error::Unsupported(format!("weight r+3 witness needs b >= 3, got {b}")));
    }
    let zero: Vec<usize> = (1..=b - 2).collect();
    let roots: Vec<Fe> = points.batches[b - 2].ys[..r - 1].to_vec();
    weight_witness_with(code, &zero, &roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::CodeSpec;
    use crate::field::PrimeField;
    use crate::fixtures::example1;
    use crate::points::sample_plane;

    #[test]
    fn example_distance_all_engines() {
        let code = Code::build(example1::spec().unwrap()).unwrap();
        let limits = Limits::default();
        for engine in [Engine::Auto, Engine::Infoset, Engine::Structured] {
            let rep = min_distance(&code, engine, &limits).unwrap();
            assert_eq!((rep.d, rep.optimal, rep.singleton_bound), (6, true, 6), "{engine:?}");
            assert_eq!(rep.witness.weight(), 6);
        }
        assert!(matches!(min_distance_exhaustive(&code, 1 << 20), Err(Error::BudgetExceeded { .. })));
        assert_eq!(min_distance(&code, Engine::Auto, &limits).unwrap().method, Method::Infoset);
        let f = PrimeField::new(7).unwrap();
        let small = Code::build(CodeSpec::plane(f, 1, 0, sample_plane(&f, 3, 1, 2).unwrap())).unwrap();
        let rep = min_distance(&small, Engine::Auto, &limits).unwrap();
        assert_eq!((rep.method, rep.d), (Method::Exhaustive, 4));
    }

    #[test]
    fn witness_is_weight_r_plus_3() {
        let f = PrimeField::new(31).unwrap();
        for (b, r) in [(3, 1), (4, 2), (5, 3)] {
            let code = Code::build(CodeSpec::plane(f, r, 0, sample_plane(&f, b, r, 9).unwrap())).unwrap();
            assert_eq!(weight_witness_r_plus_3(&code).unwrap().weight(), r + 3);
        }
        let code = Code::build(example1::spec().unwrap()).unwrap();
        let w = weight_witness_with(&code, &example1::ZERO_FIBERS, &[Fe(4), Fe(10)]).unwrap();
        assert_eq!(w.values(), example1::CODEWORD.to_vec());
        assert!(weight_witness_with(&code, &[2], &[Fe(4), Fe(10)]).is_err());
        assert!(weight_witness_with(&code, &[2, 4], &[Fe(4), Fe(30)]).is_err());
    }

    #[test]
    fn weight_search_threshold() {
        let code = Code::build(example1::spec().unwrap()).unwrap();
        assert_eq!(find_weight_at_most(&code, 5, 1_000_000).unwrap(), None);
        assert!(find_weight_at_most(&code, 6, 1_000_000).unwrap().unwrap().weight() <= 6);
    }
}
