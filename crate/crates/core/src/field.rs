//! Prime-field arithmetic.
//!
//! Elements are plain residues in `[0, p)`. The modulus lives in a small
//! `Copy` handle, [`PrimeField`], which performs every operation. Products
//! are taken in `u128` so any modulus that fits a machine word works.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A residue modulo the characteristic of some [`PrimeField`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field `F_p` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Fails with [`Error::NotPrime`] unless `p` is prime.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.p
    }

    /// Reduces an unsigned integer into the field.
    #[inline]
    pub fn elem(&self, v: u64) -> Fe {
        Fe(v % self.p)
    }

    /// Reduces a signed integer into the field.
    #[inline]
    pub fn from_i64(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u64)
    }

    /// Checks that `v` is already a canonical residue.
    pub fn checked(&self, v: u64) -> Result<Fe> {
        if v < self.p {
            Ok(Fe(v))
        } else {
            Err(Error::OutOfField { value: v, p: self.p })
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let s = a.0 as u128 + b.0 as u128;
        Fe((s % self.p as u128) as u64)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        if a.0 >= b.0 {
            Fe(a.0 - b.0)
        } else {
            Fe(self.p - (b.0 - a.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            a
        } else {
            Fe(self.p - a.0)
        }
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(((a.0 as u128 * b.0 as u128) % self.p as u128) as u64)
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat. Zero has none.
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Every element in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.p).map(Fe)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic() {
        let f = PrimeField::new(31).unwrap();
        assert_eq!(f.mul(Fe(6), Fe(23)), Fe(14));
        assert_eq!(f.inv(Fe(3)).unwrap(), Fe(21));
        assert_eq!(f.sub(Fe(2), Fe(5)), Fe(28));
        assert_eq!(f.from_i64(-1), Fe(30));
    }

    #[test]
    fn rejects_composites_and_zero_inverse() {
        assert!(matches!(PrimeField::new(32), Err(Error::NotPrime(32))));
        assert!(matches!(PrimeField::new(1), Err(Error::NotPrime(1))));
        let f = PrimeField::new(37).unwrap();
        assert!(matches!(f.inv(Fe(0)), Err(Error::ZeroInverse)));
    }

    #[test]
    fn primality_matches_trial_division() {
        let naive = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), naive(n), "{n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn word_sized_modulus() {
        let p = 18446744073709551557;
        let f = PrimeField::new(p).unwrap();
        let a = Fe(p - 2);
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(a, inv), Fe::ONE);
        assert_eq!(f.add(Fe(p - 1), Fe(p - 1)), Fe(p - 2));
    }
}
