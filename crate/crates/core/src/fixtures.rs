//! Reference data: point sets, codewords and parameter tables.

use crate::code::CodeSpec;
use crate::error::Result;
use crate::field::{Fe, PrimeField};
use crate::points::{PlaneBatch, PlanePoints};

fn batches(list: &[(u64, &[u64])]) -> PlanePoints {
    PlanePoints::new(
        list.iter().map(|(x, ys)| PlaneBatch { x: Fe(*x), ys: ys.iter().map(|&y| Fe(y)).collect() }).collect(),
    )
}

fn run(x: u64, from: u64, len: u64) -> (u64, Vec<u64>) {
    (x, (from..from + len).collect())
}

fn from_runs(runs: &[(u64, Vec<u64>)]) -> PlanePoints {
    let list: Vec<(u64, &[u64])> = runs.iter().map(|(x, ys)| (*x, ys.as_slice())).collect();
    batches(&list)
}

/// `[16, 9]` code over `F_31` with `b = 4`, `r = 3`.
pub mod example1 {
    use super::*;

    pub const Q: u64 = 31;
    pub const R: usize = 3;
    /// The low-weight polynomial is `(x-6)(x-23)(y-4)(y-10)`: it vanishes
    /// on batches 2 and 4 and has these fiber roots.
    pub const Y_ROOTS: [u64; 2] = [4, 10];
    /// Coefficients of that polynomial in basis order.
    pub const POLY: [u64; 9] = [2, 18, 9, 21, 3, 17, 14, 2, 1];
    pub const CODEWORD: [u64; 16] = [25, 24, 26, 0, 0, 0, 0, 0, 20, 0, 3, 29, 0, 0, 0, 0];
    pub const ZERO_FIBERS: [usize; 2] = [2, 4];
    pub const D: usize = 6;
    /// Base points used for the base-change comparison.
    pub const OTHER_XS: [u64; 4] = [2, 5, 11, 19];

    pub fn points() -> PlanePoints {
        from_runs(&[run(1, 1, 4), run(6, 5, 4), run(17, 9, 4), run(23, 20, 4)])
    }

    pub fn spec() -> Result<CodeSpec> {
        Ok(CodeSpec::plane(PrimeField::new(Q)?, R, 0, points()))
    }
}

/// Rows `(z, n, k, d, d_opt)`.
pub type TableRow = (usize, usize, usize, usize, usize);

/// Degree-drop table over `F_31` with `b = 6`, `r = 3`.
pub mod table_a {
    use super::*;

    pub const Q: u64 = 31;
    pub const R: usize = 3;
    pub const ROWS: [TableRow; 4] = [(0, 24, 15, 6, 6), (1, 24, 12, 9, 10), (2, 24, 9, 12, 14), (3, 24, 6, 16, 18)];

    pub fn points() -> PlanePoints {
        from_runs(&[run(1, 1, 4), run(2, 6, 4), run(3, 11, 4), run(4, 16, 4), run(5, 21, 4), run(6, 25, 4)])
    }
}

/// Degree-drop table over `F_37` with `b = 10`, `r = 2`.
pub mod table_b {
    use super::*;

    pub const Q: u64 = 37;
    pub const R: usize = 2;
    pub const ROWS: [TableRow; 8] = [
        (0, 30, 18, 5, 5),
        (1, 30, 16, 8, 8),
        (2, 30, 14, 10, 11),
        (3, 30, 12, 12, 14),
        (4, 30, 10, 14, 17),
        (5, 30, 8, 17, 20),
        (6, 30, 6, 20, 23),
        (7, 30, 4, 23, 26),
    ];

    /// The last batch lists `y = 37`, which is `0` in `F_37`.
    pub fn points() -> PlanePoints {
        let mut p = from_runs(&[
            run(1, 1, 3),
            run(2, 4, 3),
            run(3, 7, 3),
            run(4, 10, 3),
            run(5, 13, 3),
            run(6, 16, 3),
            run(7, 20, 3),
            run(8, 26, 3),
            run(9, 32, 3),
            run(10, 35, 3),
        ]);
        for y in p.batches.iter_mut().flat_map(|b| b.ys.iter_mut()) {
            *y = Fe(y.0 % Q);
        }
        p
    }
}

/// Non-optimal `[20, 12]` code over `F_37` with `b = r = 4`.
pub mod nonoptimal {
    use super::*;

    pub const Q: u64 = 37;
    pub const XS: [u64; 4] = [4, 9, 16, 25];
    pub const YS: [[u64; 5]; 4] =
        [[3, 7, 28, 12, 21], [17, 34, 14, 13, 22], [11, 8, 2, 16, 23], [36, 19, 1, 15, 26]];
    pub const ZERO_FIBER: usize = 1;
    /// One-based positions of the nine interpolation points.
    pub const POSITIONS: [usize; 9] = [6, 7, 8, 11, 12, 13, 16, 17, 18];
    /// The point of the minor variety, with base values `(9, 16, 25)`.
    pub const Z_POINT: [u64; 9] = [17, 34, 14, 11, 8, 2, 36, 19, 1];
    pub const Z_XS: [u64; 3] = [9, 16, 25];
    /// `g` in the order `1, x, y, xy, y², xy², y³, xy³`.
    pub const G: [u64; 8] = [1, 26, 19, 33, 25, 7, 8, 34];
    pub const CODEWORD: [u64; 20] = [0, 0, 0, 0, 0, 0, 0, 0, 25, 16, 0, 0, 0, 5, 6, 0, 0, 0, 8, 11];
    pub const WEIGHT: usize = 6;
    pub const SINGLETON: usize = 7;

    pub fn points() -> PlanePoints {
        let list: Vec<(u64, &[u64])> = XS.iter().zip(YS.iter()).map(|(&x, ys)| (x, ys.as_slice())).collect();
        batches(&list)
    }
}
