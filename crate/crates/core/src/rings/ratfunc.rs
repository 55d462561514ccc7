//! Univariate rational functions in `s` over `Q`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// A fraction kept in lowest terms with a monic denominator, so that
/// structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunctionS {
    num: QPoly,
    den: QPoly,
}

impl RationalFunctionS {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g)?;
        let (d, _) = den.div_rem(&g)?;
        let lead = d.leading().recip();
        Ok(RationalFunctionS {
            num: n.scale(&lead),
            den: d.scale(&lead),
        })
    }

    pub fn zero() -> Self {
        RationalFunctionS {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunctionS {
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    /// `1 / (nu + n s)`.
    pub fn reciprocal_linear(nu: i64, n: i64) -> Result<Self> {
        Self::new(
            QPoly::one(),
            QPoly::linear(BigRational::from_integer(nu.into()), BigRational::from_integer(n.into())),
        )
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RationalFunctionS {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Value at `s`, or `None` at a pole.
    pub fn eval(&self, s: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(s);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(s) / d)
        }
    }

    /// Poles with multiplicities in ascending order.
    pub fn poles(&self) -> Result<Vec<(BigRational, usize)>> {
        let (roots, rest) = self.den.rational_roots();
        if rest.degree() != Some(0) {
            return Err(Error::NonLinearDenominator);
        }
        Ok(roots)
    }
}

/// Renders `c0 + c1 s + ...` compactly as in `4+s` or `10+3s`.
fn write_poly(f: &mut fmt::Formatter<'_>, p: &QPoly) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if neg {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        first = false;
        let var = match k {
            0 => String::new(),
            1 => "s".to_string(),
            _ => format!("s^{k}"),
        };
        if var.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{var}")?;
        } else if abs.is_integer() {
            write!(f, "{abs}{var}")?;
        } else {
            write!(f, "({abs}){var}")?;
        }
    }
    Ok(())
}

fn term_count(p: &QPoly) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

impl fmt::Display for RationalFunctionS {
    /// Splits the denominator into primitive integer linear factors
    /// `(a+bs)` ordered by ascending pole, moving the leftover scalar into
    /// the numerator. Denominators without rational splitting print as is.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            return write_poly(f, &self.num);
        }
        let (roots, rest) = self.den.rational_roots();
        if rest.degree() != Some(0) {
            let paren = |p: &QPoly| term_count(p) > 1;
            let (pn, pd) = (paren(&self.num), paren(&self.den));
            if pn {
                write!(f, "(")?;
            }
            write_poly(f, &self.num)?;
            write!(f, "{}/", if pn { ")" } else { "" })?;
            if pd {
                write!(f, "(")?;
            }
            write_poly(f, &self.den)?;
            return if pd { write!(f, ")") } else { Ok(()) };
        }
        // (s - r) = (a + b s) / b with r = -a/b, b > 0.
        let mut scale = BigRational::one();
        let mut factors = Vec::new();
        for (r, k) in &roots {
            let b: BigInt = r.denom().clone();
            let a: BigInt = -r.numer().clone();
            scale *= num_traits::pow(BigRational::from_integer(b.clone()), *k);
            factors.push((
                QPoly::linear(BigRational::from_integer(a), BigRational::from_integer(b)),
                *k,
            ));
        }
        let num = self.num.scale(&scale);
        if term_count(&num) > 1 {
            write!(f, "(")?;
            write_poly(f, &num)?;
            write!(f, ")")?;
        } else {
            write_poly(f, &num)?;
        }
        write!(f, "/")?;
        let wrap = factors.len() > 1;
        if wrap {
            write!(f, "(")?;
        }
        for (p, k) in &factors {
            write!(f, "(")?;
            write_poly(f, p)?;
            write!(f, ")")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::qpoly::rat;

    fn inv_lin(nu: i64, n: i64) -> RationalFunctionS {
        RationalFunctionS::reciprocal_linear(nu, n).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = inv_lin(1, 1);
        assert_eq!(a.add(&RationalFunctionS::zero()), a);
        assert_eq!(a.to_string(), "1/(1+s)");
        let b = inv_lin(2, 1);
        assert_eq!(b.mul(&b).to_string(), "1/(2+s)^2");
        assert_eq!(a.add(&a).to_string(), "2/(1+s)");
    }

    #[test]
    fn canonical_equality() {
        // (8+2s)/((4+2s)(2+s)) and (4+s)/(2+s)^2
        let lhs = RationalFunctionS::new(
            QPoly::from_i64s(&[8, 2]),
            QPoly::from_i64s(&[4, 2]).mul(&QPoly::from_i64s(&[2, 1])),
        )
        .unwrap();
        let rhs = RationalFunctionS::new(QPoly::from_i64s(&[4, 1]), QPoly::from_i64s(&[4, 4, 1])).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "(4+s)/(2+s)^2");
        assert_eq!(lhs.poles().unwrap(), vec![(rat(-2, 1), 2)]);
        assert_eq!(lhs.eval(&rat(0, 1)), Some(rat(1, 1)));
        assert_eq!(lhs.eval(&rat(-2, 1)), None);
    }

    #[test]
    fn mixed_linear_factors_display() {
        // (10+3s)/((5+2s)(2+s))
        let z = RationalFunctionS::new(
            QPoly::from_i64s(&[10, 3]),
            QPoly::from_i64s(&[5, 2]).mul(&QPoly::from_i64s(&[2, 1])),
        )
        .unwrap();
        assert_eq!(z.to_string(), "(10+3s)/((5+2s)(2+s))");
        assert_eq!(z.poles().unwrap(), vec![(rat(-5, 2), 1), (rat(-2, 1), 1)]);
    }

    #[test]
    fn zero_denominator_and_constants() {
        assert_eq!(
            RationalFunctionS::new(QPoly::one(), QPoly::zero()),
            Err(Error::DivisionByZero)
        );
        let c = RationalFunctionS::constant(rat(3, 2));
        assert!(c.poles().unwrap().is_empty());
        assert_eq!(c.to_string(), "3/2");
        let irreducible = RationalFunctionS::new(QPoly::one(), QPoly::from_i64s(&[1, 0, 1])).unwrap();
        assert_eq!(irreducible.poles(), Err(Error::NonLinearDenominator));
        assert_eq!(irreducible.to_string(), "1/(1+s^2)");
    }
}
