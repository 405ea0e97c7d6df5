//! Minimum weight by enumeration over several information sets.
//!
//! Columns are split greedily into disjoint independent sets, lowest
//! column index first. A set of size `k - e` is completed to an
//! information set with `e` columns taken from earlier sets. After every
//! message of weight at most `w` has been encoded in systematic form for
//! that set, any codeword not yet seen has more than `w` nonzeros on the
//! information set, hence at least `w + 1 - e` on the set's own columns.
//! Since the own columns are disjoint these contributions add up to a lower
//! bound, and the search stops once it meets the best weight found.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
struct InfoSet {
    /// Information set in pivot order: own columns, then borrowed ones.
    cols: Vec<usize>,
    borrowed: usize,
    /// Systematic generator for this information set.
    gamma: Matrix,
    /// Redundant part of each systematic row as raw residues.
    red: Vec<Vec<u64>>,
    /// `-1/red[i][t]`, or 0 where `red[i][t]` is zero.
    neg_inv: Vec<Vec<u64>>,
}

impl InfoSet {
    fn contribution(&self, w: usize) -> usize {
        (w + 1).saturating_sub(self.borrowed)
    }
}

fn greedy_pivots(g: &Matrix, cols: &[usize]) -> Vec<usize> {
    let (_, pivots) = g.select_columns(cols).rref();
    pivots.into_iter().map(|i| cols[i]).collect()
}

fn information_sets(g: &Matrix) -> Result<Vec<InfoSet>> {
    let field = g.field();
    let (k, n) = (g.rows(), g.cols());
    let mut available: Vec<usize> = (0..n).collect();
    let mut used: Vec<usize> = Vec::new();
    let mut sets = Vec::new();
    while !available.is_empty() {
        let own = greedy_pivots(g, &available);
        if own.is_empty() {
            break;
        }
        let mut cols = own.clone();
        if own.len() < k {
            let mut candidates = own.clone();
            candidates.extend(used.iter().copied());
            cols = greedy_pivots(g, &candidates);
        }
        if cols.len() < k {
            return Err(Error::InjectivityFailure { rank: cols.len(), k });
        }
        let gamma = g.select_columns(&cols).inverse()?.mul(g)?;
        let mut in_set = vec![false; n];
        cols.iter().for_each(|&c| in_set[c] = true);
        let red_cols: Vec<usize> = (0..n).filter(|&c| !in_set[c]).collect();
        let red: Vec<Vec<u64>> =
            (0..k).map(|i| red_cols.iter().map(|&c| gamma.get(i, c).0).collect()).collect();
        let neg_inv = red
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| if v == 0 { 0 } else { field.neg(field.inv(Fe(v)).expect("nonzero")).0 })
                    .collect()
            })
            .collect();
        sets.push(InfoSet { cols, borrowed: k - own.len(), gamma, red, neg_inv });
        used.extend(own.iter().copied());
        used.sort_unstable();
        available.retain(|c| !own.contains(c));
    }
    Ok(sets)
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= 1 << 32 {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

/// Best message found by one enumeration task.
#[derive(Clone, Debug)]
struct Found {
    weight: usize,
    support: Vec<usize>,
    coeffs: Vec<u64>,
}

const HISTOGRAM_LIMIT: u64 = 1 << 20;

struct Walker<'a> {
    set: &'a InfoSet,
    p: u64,
    w: usize,
    len: usize,
    accs: Vec<Vec<u64>>,
    support: Vec<usize>,
    coeffs: Vec<u64>,
    hist: Vec<u32>,
    touched: Vec<u64>,
    best: Option<Found>,
}

impl<'a> Walker<'a> {
    fn new(set: &'a InfoSet, p: u64, w: usize) -> Self {
        let len = set.red.first().map_or(0, Vec::len);
        let hist = if p <= HISTOGRAM_LIMIT { vec![0; p as usize] } else { Vec::new() };
        Self {
            set,
            p,
            w,
            len,
            accs: vec![vec![0; len]; w],
            support: vec![0; w],
            coeffs: vec![0; w],
            hist,
            touched: Vec::with_capacity(len),
            best: None,
        }
    }

    fn record(&mut self, weight: usize, last_coeff: u64) {
        if self.best.as_ref().is_none_or(|b| weight < b.weight) {
            let mut coeffs = self.coeffs.clone();
            coeffs[self.w - 1] = last_coeff;
            self.best = Some(Found { weight, support: self.support.clone(), coeffs });
        }
    }

    /// Enumerates messages whose first support position is `first`.
    fn run(&mut self, first: usize) {
        self.support[0] = first;
        self.coeffs[0] = 1;
        if self.w == 1 {
            let nz = self.set.red[first].iter().filter(|&&v| v != 0).count();
            self.record(1 + nz, 1);
            return;
        }
        self.accs[0].copy_from_slice(&self.set.red[first]);
        self.descend(1, first + 1);
    }

    fn descend(&mut self, depth: usize, start: usize) {
        let k = self.set.red.len();
        let remaining = self.w - depth;
        if remaining == 1 {
            for pos in start..k {
                self.support[depth] = pos;
                self.leaf(pos);
            }
            return;
        }
        let set = self.set;
        let p = self.p;
        for pos in start..=k - remaining {
            self.support[depth] = pos;
            let (lo, hi) = self.accs.split_at_mut(depth);
            hi[0].copy_from_slice(&lo[depth - 1]);
            for v in 1..p {
                for (a, &r) in self.accs[depth].iter_mut().zip(&set.red[pos]) {
                    *a = add_mod(*a, r, p);
                }
                self.coeffs[depth] = v;
                // Deeper levels never touch `accs[depth]`.
                self.descend(depth + 1, pos + 1);
            }
        }
    }

    /// Best multiple of row `pos` to add to the accumulated prefix.
    fn leaf(&mut self, pos: usize) {
        let p = self.p;
        let acc = &self.accs[self.w - 2];
        let red = &self.set.red[pos];
        let neg_inv = &self.set.neg_inv[pos];
        let mut zero_always = 0usize;
        self.touched.clear();
        for t in 0..self.len {
            if red[t] == 0 {
                zero_always += (acc[t] == 0) as usize;
            } else if acc[t] != 0 {
                self.touched.push(mul_mod(acc[t], neg_inv[t], p));
            }
        }
        let (best_v, best_count) = if self.hist.is_empty() {
            mode_by_sort(&mut self.touched)
        } else {
            let mut best = (1u64, 0u32);
            for &v in &self.touched {
                self.hist[v as usize] += 1;
            }
            for &v in &self.touched {
                let c = self.hist[v as usize];
                if c > best.1 || (c == best.1 && v < best.0) {
                    best = (v, c);
                }
            }
            for &v in &self.touched {
                self.hist[v as usize] = 0;
            }
            best
        };
        let weight = self.w + self.len - zero_always - best_count as usize;
        self.record(weight, best_v);
    }
}

fn mode_by_sort(values: &mut [u64]) -> (u64, u32) {
    values.sort_unstable();
    let mut best = (1u64, 0u32);
    let mut i = 0;
    while i < values.len() {
        let mut j = i;
        while j < values.len() && values[j] == values[i] {
            j += 1;
        }
        if (j - i) as u32 > best.1 {
            best = (values[i], (j - i) as u32);
        }
        i = j;
    }
    best
}

fn enumerate_level(set: &InfoSet, p: u64, w: usize) -> Option<Found> {
    let k = set.red.len();
    if w == 0 || w > k {
        return None;
    }
    let results: Vec<Option<Found>> = (0..=k - w)
        .into_par_iter()
        .map(|first| {
            let mut walker = Walker::new(set, p, w);
            walker.run(first);
            walker.best
        })
        .collect();
    results.into_iter().flatten().fold(None, |acc: Option<Found>, f| match acc {
        Some(a) if a.weight <= f.weight => Some(a),
        _ => Some(f),
    })
}

/// Minimum weight of the row space of `g` (full row rank) and a codeword attaining it.
pub fn min_weight(g: &Matrix) -> Result<(usize, Vec<Fe>)> {
    let field: PrimeField = g.field();
    let p = field.order();
    let k = g.rows();
    if k == 0 {
        return Err(Error::InvalidParams("the code has dimension zero".into()));
    }
    let sets = information_sets(g)?;
    let mut done = vec![0usize; sets.len()];
    let lower = |done: &[usize]| sets.iter().zip(done).map(|(s, &w)| s.contribution(w)).sum::<usize>();
    let mut best: Option<(usize, usize, Found)> = None;
    'levels: for w in 1..=k {
        for (j, set) in sets.iter().enumerate() {
            if set.contribution(w) == 0 {
                continue;
            }
            if let Some(found) = enumerate_level(set, p, w) {
                if best.as_ref().is_none_or(|(bw, _, _)| found.weight < *bw) {
                    best = Some((found.weight, j, found));
                }
            }
            done[j] = w;
            if let Some((bw, _, _)) = &best {
                if lower(&done) >= *bw {
                    break 'levels;
                }
            }
        }
    }
    let (weight, j, found) = best.expect("level one always yields a codeword");
    let mut msg = vec![Fe::ZERO; k];
    for (&pos, &c) in found.support.iter().zip(&found.coeffs) {
        msg[pos] = Fe(c);
    }
    let word = sets[j].gamma.left_apply(&msg)?;
    debug_assert_eq!(word.iter().filter(|v| !v.is_zero()).count(), weight);
    debug_assert!(sets[j].cols.len() == k);
    Ok((weight, word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::exhaustive;

    #[test]
    fn agrees_with_exhaustive_on_random_matrices() {
        use crate::points::{rng_from_seed, uniform_below};
        for (q, k, n, seed) in [(7u64, 3usize, 8usize, 1u64), (5, 4, 9, 2), (11, 2, 7, 3), (3, 5, 12, 4), (13, 3, 5, 5)] {
            let f = PrimeField::new(q).unwrap();
            let mut rng = rng_from_seed(seed);
            let mut g;
            loop {
                let rows: Vec<Vec<u64>> = (0..k).map(|_| (0..n).map(|_| uniform_below(&mut rng, q)).collect()).collect();
                g = Matrix::from_u64_rows(f, &rows).unwrap();
                if g.rank() == k {
                    break;
                }
            }
            let (d1, _) = exhaustive::min_weight(&g, 1 << 20).unwrap();
            let (d2, word) = min_weight(&g).unwrap();
            assert_eq!(d1, d2, "q={q} k={k} n={n}");
            assert_eq!(word.iter().filter(|v| !v.is_zero()).count(), d2);
        }
    }
}
