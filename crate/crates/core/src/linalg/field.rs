//! Exact scalar arithmetic over the prime field GF(p).
//!
//! All scalars live in the canonical range `0..p-1`. Products of two
//! reduced scalars fit in a `u64` for every admissible prime
//! (`p <= 2^31 - 1`), so no arbitrary-precision arithmetic is needed.

use crate::error::{Error, Result};

/// A prime field GF(p) with p >= 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
}

impl FieldSpec {
    /// Validates primality by trial division and the `p >= 5` bound.
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 {
            return Err(Error::PrimeTooSmall(p));
        }
        if p > (1 << 31) - 1 {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Canonical representative of a signed integer.
    #[inline]
    pub fn reduce_signed(&self, a: i64) -> u64 {
        let p = self.p as i64;
        (a.rem_euclid(p)) as u64
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
        (a * b) % self.p
    }

    /// a + b*c, reduced.
    #[inline]
    pub fn mul_add(&self, a: u64, b: u64, c: u64) -> u64 {
        (a + b * c) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::NonInvertible);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// How many products of reduced scalars can be summed in a raw `u64`
    /// accumulator before a reduction is required.
    #[inline]
    pub fn accum_chunk(&self) -> usize {
        let sq = (self.p - 1) * (self.p - 1);
        (u64::MAX / sq).max(1) as usize
    }

    /// Exact dot product of two dense reduced vectors.
    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        debug_assert_eq!(a.len(), b.len());
        let chunk = self.accum_chunk();
        let mut total = 0u64;
        for (ca, cb) in a.chunks(chunk).zip(b.chunks(chunk)) {
            let mut acc = 0u64;
            for (&x, &y) in ca.iter().zip(cb.iter()) {
                acc += x * y;
            }
            total = self.add(total, acc % self.p);
        }
        total
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}
