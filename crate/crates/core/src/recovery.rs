//! Local erasure recovery.
//!
//! Restricted to one batch, a codeword is the evaluation of a fiber
//! polynomial in `r` unknown coefficients (`y^0..y^{r-1}` for plane codes,
//! the degree-`β` monomials for bundle codes). Any `r` intact batch
//! positions with an invertible evaluation matrix pin those coefficients
//! down, and with them every other symbol of the batch.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::code::{Code, Codeword};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::Matrix;

/// Erased positions, one-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErasurePattern {
    pub erased: BTreeSet<usize>,
}

impl ErasurePattern {
    pub fn new(n: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let erased: BTreeSet<usize> = positions.into_iter().collect();
        if let Some(&bad) = erased.iter().find(|&&p| p == 0 || p > n) {
            return Err(Error::IndexOutOfRange(bad));
        }
        Ok(Self { erased })
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.erased.contains(&pos)
    }
}

/// `r` one-based positions of one batch that determine another position of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoverySet {
    pub positions: Vec<usize>,
}

/// The `t` disjoint recovery sets of one-based position `i`: the other
/// positions of its batch in increasing order, cut into consecutive runs of `r`.
pub fn recovery_sets(code: &Code, i: usize) -> Result<Vec<RecoverySet>> {
    if i == 0 || i > code.n() {
        return Err(Error::IndexOutOfRange(i));
    }
    let pos = i - 1;
    let others: Vec<usize> = code.batch_range(code.batch_of(pos)).filter(|&p| p != pos).map(|p| p + 1).collect();
    let r = code.r();
    Ok(others.chunks(r).take(code.t()).map(|c| RecoverySet { positions: c.to_vec() }).collect())
}

/// Value at one-based position `i` computed from recovery set `which_set` (one-based).
pub fn recover_symbol(code: &Code, word: &[Fe], erased: &ErasurePattern, i: usize, which_set: usize) -> Result<Fe> {
    if word.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), found: word.len() });
    }
    let sets = recovery_sets(code, i)?;
    let set = sets.get(which_set.wrapping_sub(1)).ok_or(Error::IndexOutOfRange(which_set))?;
    if set.positions.iter().any(|&p| erased.contains(p)) {
        return Err(Error::SetUnavailable { position: i, set: which_set });
    }
    interpolate(code, word, &set.positions, i)
}

fn interpolate(code: &Code, word: &[Fe], from: &[usize], target: usize) -> Result<Fe> {
    let field = code.field();
    let basis = code.basis();
    let points = code.points();
    let rows: Vec<Vec<Fe>> =
        from.iter().map(|&p| basis.fiber_row(&field, &points[p - 1])).collect::<Result<_>>()?;
    let values: Vec<Fe> = from.iter().map(|&p| word[p - 1]).collect();
    let coeffs = Matrix::from_rows(field, &rows)?.solve(&values)?.x;
    let target_row = basis.fiber_row(&field, &points[target - 1])?;
    Ok(target_row.iter().zip(&coeffs).fold(Fe::ZERO, |acc, (&a, &c)| field.add(acc, field.mul(a, c))))
}

/// Fills erasures by local recovery until nothing changes.
///
/// Each pass visits erased positions in increasing order and uses the
/// first recovery set that is fully intact at that moment.
pub fn repair(code: &Code, word: &[Fe], erased: &ErasurePattern) -> Result<Codeword> {
    if word.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), found: word.len() });
    }
    let mut out = word.to_vec();
    let mut missing = erased.clone();
    loop {
        let mut progress = false;
        for i in missing.erased.clone() {
            for (s, set) in recovery_sets(code, i)?.iter().enumerate() {
                if set.positions.iter().all(|&p| !missing.contains(p)) {
                    out[i - 1] = recover_symbol(code, &out, &missing, i, s + 1)?;
                    missing.erased.remove(&i);
                    progress = true;
                    break;
                }
            }
        }
        if missing.erased.is_empty() {
            return Ok(Codeword(out));
        }
        if !progress {
            return Err(Error::Unrecoverable(missing.erased.into_iter().collect()));
        }
    }
}
