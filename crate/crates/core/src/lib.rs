//! Locally recoverable evaluation codes over fibered point sets.
//!
//! Plane codes evaluate polynomials `Σ a_ℓ(x) y^ℓ` on `b` batches of `r + 1`
//! points sharing an `x` coordinate. Bundle codes evaluate bihomogeneous
//! forms on `A¹ × P^m` with `tr + 1` points per batch, giving locality `r`
//! and availability `t`.

pub mod code;
pub mod counterexample;
pub mod distance;
pub mod error;
pub mod experiments;
pub mod field;
pub mod fixtures;
pub mod linalg;
pub mod matroid;
pub mod points;
pub mod polyspace;
pub mod recovery;
pub mod reproduce;
pub mod specfile;

pub use code::{Code, CodeKind, CodeParams, CodeSpec, Codeword};
pub use error::{Error, Result};
pub use field::{Fe, PrimeField};
pub use linalg::Matrix;
