//! Zero-set search organized by zero fibers.
//!
//! A codeword of minimum weight has a zero set whose columns span a
//! hyperplane of the message space. Split that zero set into the batches
//! where the word vanishes entirely (`S`) and the rest. Inside a batch that
//! is not a zero fiber, a word has fewer zeros than the local rank, because
//! any local-rank many columns of a batch are independent. So the search
//! runs over `S`, largest first, and within the subcode vanishing on `S`
//! picks `dim - 1` independent columns with at most `local rank - 1` per
//! remaining batch. Each such choice pins down one word. The count
//! `|S| · batch + (b - |S|) · (local rank - 1)` bounds the zeros any word
//! with exactly those zero fibers can have, which prunes whole strata.
//!
//! The subcode vanishing on `S` is read off the parity-check matrix: a
//! vector supported off `S` is a codeword iff the parity columns off `S`
//! annihilate it.

use itertools::Itertools;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::linalg::Matrix;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::SearchExploded(self.limit))
        } else {
            Ok(())
        }
    }
}

struct Layout {
    field: PrimeField,
    n: usize,
    b: usize,
    batch_len: usize,
    /// Most zeros a word can have on a batch where it does not vanish.
    cap: Vec<usize>,
    parity: Matrix,
}

impl Layout {
    fn new(code: &Code) -> Self {
        let g = code.generator();
        let field = code.field();
        let (b, batch_len) = (code.b(), code.batch_len());
        let cap = (0..b)
            .map(|i| {
                let cols: Vec<usize> = code.batch_range(i).collect();
                let local = g.select_columns(&cols);
                let rho = local.rank();
                let mds = cols.iter().copied().combinations(rho).all(|c| g.select_columns(&c).rank() == rho);
                if mds {
                    rho.saturating_sub(1)
                } else {
                    batch_len - 1
                }
            })
            .collect();
        let kernel = g.kernel();
        let parity = if kernel.is_empty() {
            Matrix::zeros(field, 0, g.cols())
        } else {
            Matrix::from_rows(field, &kernel).expect("kernel vectors share a length")
        };
        Self { field, n: g.cols(), b, batch_len, cap, parity }
    }

    fn stratum_bound(&self, s: usize) -> usize {
        let max_cap = self.cap.iter().copied().max().unwrap_or(0);
        s * self.batch_len + (self.b - s) * max_cap
    }

    /// Columns outside the batches of `zero`, and a basis (as columns) of
    /// the codewords vanishing on those batches, restricted to them.
    fn subcode(&self, zero: &[usize]) -> Subcode {
        let mut in_zero = vec![false; self.b];
        zero.iter().for_each(|&i| in_zero[i] = true);
        let rest: Vec<usize> = (0..self.n).filter(|&c| !in_zero[c / self.batch_len]).collect();
        let basis = if self.parity.rows() == 0 {
            Matrix::identity(self.field, rest.len()).to_rows()
        } else {
            self.parity.select_columns(&rest).kernel()
        };
        let dim = basis.len();
        let columns: Vec<Vec<Fe>> = (0..rest.len()).map(|j| basis.iter().map(|v| v[j]).collect()).collect();
        let fiber = rest.iter().map(|&c| c / self.batch_len).collect();
        Subcode { rest, fiber, dim, basis, columns }
    }

    fn full_word(&self, sub: &Subcode, w: &[Fe]) -> (usize, Vec<Fe>) {
        let f = self.field;
        let mut word = vec![Fe::ZERO; self.n];
        for (j, &c) in sub.rest.iter().enumerate() {
            word[c] = sub.columns[j].iter().zip(w).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
        }
        let zeros = word.iter().filter(|v| v.is_zero()).count();
        (zeros, word)
    }
}

struct Subcode {
    rest: Vec<usize>,
    fiber: Vec<usize>,
    dim: usize,
    basis: Vec<Vec<Fe>>,
    columns: Vec<Vec<Fe>>,
}

/// Restricts the annihilator basis `ann` to vectors orthogonal to `col`.
/// Returns `None` when `col` is already annihilated by all of it.
fn cut(field: &PrimeField, ann: &[Vec<Fe>], col: &[Fe]) -> Option<Vec<Vec<Fe>>> {
    let dots: Vec<Fe> = ann
        .iter()
        .map(|v| v.iter().zip(col).fold(Fe::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b))))
        .collect();
    let pivot = dots.iter().position(|d| !d.is_zero())?;
    let inv = field.inv(dots[pivot]).expect("pivot is nonzero");
    let mut out = Vec::with_capacity(ann.len() - 1);
    for (i, v) in ann.iter().enumerate() {
        if i == pivot {
            continue;
        }
        let factor = field.mul(dots[i], inv);
        if factor.is_zero() {
            out.push(v.clone());
        } else {
            out.push(v.iter().zip(&ann[pivot]).map(|(&a, &p)| field.sub(a, field.mul(factor, p))).collect());
        }
    }
    Some(out)
}

fn identity_rows(dim: usize) -> Vec<Vec<Fe>> {
    (0..dim).map(|i| (0..dim).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }).collect()).collect()
}

struct SpanSearch<'a> {
    layout: &'a Layout,
    sub: &'a Subcode,
    counts: Vec<usize>,
    budget: &'a mut Budget,
    best: &'a mut Option<(usize, Vec<Fe>)>,
    target: usize,
}

impl SpanSearch<'_> {
    fn run(&mut self, start: usize, ann: Vec<Vec<Fe>>) -> Result<bool> {
        if ann.len() == 1 {
            let (zeros, word) = self.layout.full_word(self.sub, &ann[0]);
            if self.best.as_ref().is_none_or(|(z, _)| zeros > *z) {
                *self.best = Some((zeros, word));
            }
            return Ok(zeros >= self.target);
        }
        let m = self.sub.rest.len();
        for j in start..m {
            if m - j < ann.len() - 1 {
                break;
            }
            let f = self.sub.fiber[j];
            if self.counts[f] >= self.layout.cap[f] {
                continue;
            }
            self.budget.tick()?;
            let Some(next) = cut(&self.layout.field, &ann, &self.sub.columns[j]) else { continue };
            self.counts[f] += 1;
            let done = self.run(j + 1, next)?;
            self.counts[f] -= 1;
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Largest number of zeros of a nonzero codeword, with a codeword attaining it.
pub fn max_zeros(code: &Code, node_budget: u64) -> Result<(usize, Vec<Fe>)> {
    let layout = Layout::new(code);
    let mut budget = Budget { used: 0, limit: node_budget };
    let mut best: Option<(usize, Vec<Fe>)> = None;
    'strata: for s in (0..layout.b).rev() {
        let bound = layout.stratum_bound(s);
        if best.as_ref().is_some_and(|(z, _)| *z >= bound) {
            break;
        }
        for zero in (0..layout.b).combinations(s) {
            budget.tick()?;
            let sub = layout.subcode(&zero);
            if sub.dim == 0 {
                continue;
            }
            let room: usize = (0..layout.b).filter(|i| !zero.contains(i)).map(|i| layout.cap[i]).sum();
            if sub.dim - 1 > room {
                continue;
            }
            let mut search = SpanSearch {
                layout: &layout,
                sub: &sub,
                counts: vec![0; layout.b],
                budget: &mut budget,
                best: &mut best,
                target: bound,
            };
            if search.run(0, identity_rows(sub.dim))? {
                break 'strata;
            }
        }
    }
    best.ok_or_else(|| Error::InvalidParams("the code has dimension zero".into()))
}

struct LevelSearch<'a> {
    layout: &'a Layout,
    sub: &'a Subcode,
    counts: Vec<usize>,
    budget: &'a mut Budget,
    need: usize,
}

impl LevelSearch<'_> {
    fn run(&mut self, depth: usize, start: usize, ann: &[Vec<Fe>]) -> Result<Option<Vec<Fe>>> {
        if depth == self.need {
            return Ok(Some(ann[0].clone()));
        }
        let m = self.sub.rest.len();
        for j in start..m {
            if m - j < self.need - depth {
                break;
            }
            let f = self.sub.fiber[j];
            if self.counts[f] >= self.layout.cap[f] {
                continue;
            }
            self.budget.tick()?;
            let next = match cut(&self.layout.field, ann, &self.sub.columns[j]) {
                Some(next) if next.is_empty() => continue,
                Some(next) => next,
                None => ann.to_vec(),
            };
            self.counts[f] += 1;
            let found = self.run(depth + 1, j + 1, &next)?;
            self.counts[f] -= 1;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// A nonzero codeword of weight at most `max_weight`, if one exists.
///
/// Complete: for a word with zero fibers `S` and at least `n - max_weight`
/// zeros, some choice of that many zeros off `S` respects the per-batch
/// caps, and the search tries every such choice.
pub fn find_weight_at_most(code: &Code, max_weight: usize, node_budget: u64) -> Result<Option<Vec<Fe>>> {
    let layout = Layout::new(code);
    let mut budget = Budget { used: 0, limit: node_budget };
    let Some(target) = layout.n.checked_sub(max_weight) else {
        return Ok(None);
    };
    for s in (0..layout.b).rev() {
        if layout.stratum_bound(s) < target {
            break;
        }
        for zero in (0..layout.b).combinations(s) {
            budget.tick()?;
            let sub = layout.subcode(&zero);
            if sub.dim == 0 {
                continue;
            }
            let need = target.saturating_sub(s * layout.batch_len);
            let mut search =
                LevelSearch { layout: &layout, sub: &sub, counts: vec![0; layout.b], budget: &mut budget, need };
            if let Some(w) = search.run(0, 0, &identity_rows(sub.dim))? {
                let (_, word) = layout.full_word(&sub, &w);
                return Ok(Some(word));
            }
        }
    }
    Ok(None)
}

/// Dimension of the subcode vanishing on the given zero-based batches.
pub fn vanishing_dimension(code: &Code, batches: &[usize]) -> usize {
    let layout = Layout::new(code);
    let sub = layout.subcode(batches);
    debug_assert_eq!(sub.basis.len(), sub.dim);
    sub.dim
}
