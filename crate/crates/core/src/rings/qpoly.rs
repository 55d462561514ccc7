//! Dense univariate polynomials over `Q`, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// `a + b s`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, s: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * s + c)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -1 } else { 1 };
        ints.iter().map(|c| c / &g * sign).collect()
    }

    /// Rational roots with multiplicities, sorted ascending, plus the
    /// cofactor without rational roots.
    pub fn rational_roots(&self) -> (Vec<(BigRational, usize)>, QPoly) {
        let mut rest = self.clone();
        let mut roots: Vec<(BigRational, usize)> = Vec::new();
        while let Some(r) = rest.find_rational_root() {
            let factor = QPoly::linear(-r.clone(), BigRational::one());
            let mut k = 0;
            loop {
                let (q, rem) = rest.div_rem(&factor).expect("nonzero");
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                k += 1;
            }
            roots.push((r, k));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, rest)
    }

    fn find_rational_root(&self) -> Option<BigRational> {
        if self.degree().unwrap_or(0) == 0 {
            return None;
        }
        if self.coeffs[0].is_zero() {
            return Some(BigRational::zero());
        }
        let ints = self.primitive_integer();
        let lead = ints.last().unwrap().abs();
        let constant = ints[0].abs();
        let nums = divisors(&constant);
        let dens = divisors(&lead);
        for d in &dens {
            for n in &nums {
                for sign in [1, -1] {
                    let cand = BigRational::new(n * sign, d.clone());
                    if self.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        // (s+2)^2 and (s+2)(s+4)
        let a = QPoly::from_i64s(&[4, 4, 1]);
        let b = QPoly::from_i64s(&[8, 6, 1]);
        assert_eq!(a.gcd(&b), QPoly::from_i64s(&[2, 1]));
        let (q, r) = b.div_rem(&QPoly::from_i64s(&[2, 1])).unwrap();
        assert_eq!(q, QPoly::from_i64s(&[4, 1]));
        assert!(r.is_zero());
        assert_eq!(a.div_rem(&QPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn finds_rational_roots() {
        // (2s+5)(s+2)^2 = 2s^3 + 13s^2 + 28s + 20
        let p = QPoly::from_i64s(&[20, 28, 13, 2]);
        let (roots, rest) = p.rational_roots();
        assert_eq!(roots, vec![(rat(-5, 2), 1), (rat(-2, 1), 2)]);
        assert_eq!(rest.degree(), Some(0));
        let (none, rest) = QPoly::from_i64s(&[1, 0, 1]).rational_roots();
        assert!(none.is_empty());
        assert_eq!(rest.degree(), Some(2));
    }
}
