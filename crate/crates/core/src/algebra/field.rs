//! Prime fields `F_p` with word-sized moduli and their roots of unity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Moduli are kept below 2^32 so that factoring `p - 1` by trial division
/// stays instantaneous.
pub const MAX_MODULUS: u64 = 1 << 32;

/// The prime field `F_p`. Elements are plain `u64` residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `0..p`.
    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no multiplicative order");
        let mut ord = self.p - 1;
        for q in prime_factors(self.p - 1) {
            while ord.is_multiple_of(q) && self.pow(a, ord / q) == 1 {
                ord /= q;
            }
        }
        ord
    }

    /// Smallest generator of `F_p^*`.
    pub fn generator(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let factors = prime_factors(self.p - 1);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (self.p - 1) / q) != 1))
            .expect("F_p^* is cyclic")
    }

    /// The smallest residue of exact multiplicative order `r`.
    ///
    /// Wildness (`p | r`) is reported before existence, so `F_2` with
    /// `r = 2` is a `TameViolation` rather than a missing root.
    pub fn primitive_root_of_unity(&self, r: u64) -> Result<u64> {
        if r == 0 {
            return Err(Error::InvalidInput("group order must be positive".into()));
        }
        if r.is_multiple_of(self.p) {
            return Err(Error::TameViolation { p: self.p, r });
        }
        if !(self.p - 1).is_multiple_of(r) {
            return Err(Error::NoSuchRoot { p: self.p, r });
        }
        if r == 1 {
            return Ok(1);
        }
        // Elements of order r are g^(k (p-1)/r) with gcd(k, r) = 1.
        let g = self.generator();
        let base = self.pow(g, (self.p - 1) / r);
        let mut best = u64::MAX;
        let mut cur = 1;
        for k in 1..r {
            cur = self.mul(cur, base);
            if gcd(k, r) == 1 {
                best = best.min(cur);
            }
        }
        Ok(best)
    }
}

/// Convenience wrapper over [`PrimeField::primitive_root_of_unity`].
pub fn primitive_root_of_unity(p: u64, r: u64) -> Result<u64> {
    PrimeField::new(p)?.primitive_root_of_unity(r)
}
