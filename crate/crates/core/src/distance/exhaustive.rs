//! Enumeration of every codeword up to scalars.

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::Matrix;

/// `(q^k - 1)/(q - 1)`, saturating at `u128::MAX`.
pub fn projective_count(q: u64, k: usize) -> u128 {
    let q = q as u128;
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..k {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(q);
    }
    total
}

/// Calls `visit` with one representative of every nonzero codeword up to
/// scalars: the messages whose first nonzero coordinate is 1, in
/// lexicographic order of `(lead position, remaining digits)`.
///
/// Fails with [`Error::BudgetExceeded`] before doing any work if there are
/// more than `budget` of them.
pub fn for_each_codeword(g: &Matrix, budget: u128, mut visit: impl FnMut(&[Fe], &[Fe])) -> Result<()> {
    let field = g.field();
    let q = field.order();
    let (k, n) = (g.rows(), g.cols());
    let needed = projective_count(q, k);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let rows = g.to_rows();
    let mut msg = vec![Fe::ZERO; k];
    for lead in 0..k {
        msg.iter_mut().for_each(|v| *v = Fe::ZERO);
        msg[lead] = Fe::ONE;
        let mut word = rows[lead].clone();
        debug_assert_eq!(word.len(), n);
        loop {
            visit(&msg, &word);
            // Odometer over positions lead+1..k. Each digit that moves goes
            // up by one modulo q, which adds its row once.
            let mut j = k;
            loop {
                if j == lead + 1 {
                    break;
                }
                j -= 1;
                let next = msg[j].0 + 1;
                for (w, &a) in word.iter_mut().zip(&rows[j]) {
                    *w = field.add(*w, a);
                }
                if next == q {
                    msg[j] = Fe::ZERO;
                } else {
                    msg[j] = Fe(next);
                    j = usize::MAX;
                    break;
                }
            }
            if j != usize::MAX {
                break;
            }
        }
    }
    Ok(())
}

/// Minimum weight and the first codeword (in enumeration order) attaining it.
pub fn min_weight(g: &Matrix, budget: u128) -> Result<(usize, Vec<Fe>)> {
    let mut best: Option<(usize, Vec<Fe>)> = None;
    for_each_codeword(g, budget, |_, word| {
        let w = word.iter().filter(|v| !v.is_zero()).count();
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            best = Some((w, word.to_vec()));
        }
    })?;
    best.ok_or_else(|| Error::InvalidParams("the code has dimension zero".into()))
}
