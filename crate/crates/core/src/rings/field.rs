//! Prime fields `F_p` with canonical representatives `0..p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of a prime field, stored as its canonical representative.
pub type Fp = u64;

/// The prime field `F_p`. Elements are plain `u64` values in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
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
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    /// Moduli are limited to 32 bits so products fit comfortably in `u64`.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidInput(format!("prime {p} exceeds 32 bits")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: Fp, mut exp: u64) -> Fp {
        let mut acc = 1 % self.p;
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
    pub fn inv(&self, a: Fp) -> Option<Fp> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_i64(&self, v: i64) -> Fp {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> Fp {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u64().expect("reduced value fits in u64")
    }

    /// All elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Fp> {
        0..self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn reduces_negative_integers() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.from_i64(-3), 2);
        assert_eq!(f.from_bigint(&BigInt::from(-12)), 3);
        assert_eq!(f.pow(2, 4), 1);
    }
}
