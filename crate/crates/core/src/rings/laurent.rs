//! Laurent polynomials in the class `L` of the affine line.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomialL {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomialL {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The class `L` itself.
    pub fn l() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        Self::from_pairs([(exp, coeff.into())])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in pairs {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomialL {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Counting specialization `L -> q`.
    pub fn eval(&self, q: &BigInt) -> BigRational {
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            let base = BigRational::from_integer(q.clone());
            let pw = if e >= 0 {
                num_traits::pow(base, e as usize)
            } else {
                num_traits::pow(base.recip(), (-e) as usize)
            };
            acc += pw * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Euler-characteristic specialization `L -> 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for LaurentPolynomialL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let var = match e {
                0 => String::new(),
                1 => "L".to_string(),
                _ => format!("L^{e}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specializations() {
        // L^3 - 2L + 1
        let c = LaurentPolynomialL::from_pairs([(3, 1.into()), (1, (-2).into()), (0, 1.into())]);
        assert_eq!(c.eval_at_one(), BigInt::zero());
        assert_eq!(c.eval(&BigInt::from(5)), BigRational::from_integer(116.into()));
        assert_eq!(c.to_string(), "L^3 - 2*L + 1");
        let inv = LaurentPolynomialL::monomial(-1, 1);
        assert_eq!(
            inv.eval(&BigInt::from(4)),
            BigRational::new(1.into(), 4.into())
        );
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = LaurentPolynomialL::l().sub(&LaurentPolynomialL::one());
        let b = a.mul(&LaurentPolynomialL::l().add(&LaurentPolynomialL::one()));
        assert_eq!(b, LaurentPolynomialL::from_pairs([(2, 1.into()), (0, (-1).into())]));
        assert!(a.sub(&a).is_zero());
    }
}
