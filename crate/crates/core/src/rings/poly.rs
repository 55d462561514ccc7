//! Multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients stay in `Z`; reduction mod `p` happens only when a polynomial
//! is evaluated or compiled for a particular prime, so one presentation
//! serves every characteristic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::{Fp, PrimeField};
use super::series::TruncatedSeries;
use crate::error::{Error, Result};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPolynomial {
    pub fn zero(nvars: usize) -> Self {
        MultiPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c.into());
        p
    }

    /// The coordinate function `x_j` (0-based).
    pub fn variable(nvars: usize, j: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[j] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(exps, BigInt::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, i64)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = Monomial(exps);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, 1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `x_j` (0-based).
    pub fn partial(&self, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = m.0[j];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[j] -= 1;
            out.add_term(e, c * BigInt::from(k));
        }
        out
    }

    /// Reduces coefficients mod `p` into a form suited to repeated evaluation.
    pub fn reduce(&self, field: PrimeField) -> ReducedPolynomial {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let r = field.from_bigint(c);
                (r != 0).then(|| (m.0.clone(), r))
            })
            .collect();
        ReducedPolynomial {
            field,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn eval_point(&self, field: PrimeField, point: &[Fp]) -> Result<Fp> {
        self.reduce(field).eval_point(point)
    }

    /// Substitutes truncated series for the variables.
    pub fn eval_series(&self, point: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        let field = point
            .first()
            .map(TruncatedSeries::field)
            .ok_or(Error::ArityMismatch {
                expected: self.nvars,
                actual: 0,
            })?;
        self.reduce(field).eval_series(point)
    }

    /// Renders the polynomial with the given variable names, leading term first.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPolynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (j, &k) in m.0.iter().enumerate() {
                let name = self
                    .names
                    .get(j)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", j + 1));
                match k {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A polynomial with coefficients already reduced into `F_p`.
#[derive(Clone, Debug)]
pub struct ReducedPolynomial {
    field: PrimeField,
    nvars: usize,
    terms: Vec<(Vec<u32>, Fp)>,
}

impl ReducedPolynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_arity(&self, actual: usize) -> Result<()> {
        if actual != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                actual,
            });
        }
        Ok(())
    }

    pub fn eval_point(&self, point: &[Fp]) -> Result<Fp> {
        self.check_arity(point.len())?;
        let f = self.field;
        let mut acc = 0;
        for (e, c) in &self.terms {
            let mut v = *c;
            for (&x, &k) in point.iter().zip(e) {
                if k > 0 {
                    v = f.mul(v, f.pow(x, k as u64));
                }
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    pub fn eval_series(&self, point: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        self.check_arity(point.len())?;
        let m = point.first().map(TruncatedSeries::modulus).unwrap_or(1);
        for s in point {
            if s.field() != self.field {
                return Err(Error::FieldMismatch {
                    left: self.field.modulus(),
                    right: s.field().modulus(),
                });
            }
            if s.modulus() != m {
                return Err(Error::ModulusMismatch {
                    left: m,
                    right: s.modulus(),
                });
            }
        }
        Ok(self.eval_series_unchecked(point, m))
    }

    pub(crate) fn eval_series_unchecked(
        &self,
        point: &[TruncatedSeries],
        modulus: usize,
    ) -> TruncatedSeries {
        let f = self.field;
        let max_deg: Vec<u32> = (0..self.nvars)
            .map(|j| self.terms.iter().map(|(e, _)| e[j]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<TruncatedSeries>> = point
            .iter()
            .zip(&max_deg)
            .map(|(s, &d)| {
                let mut pw = vec![TruncatedSeries::one(f, modulus)];
                for k in 1..=d as usize {
                    let next = pw[k - 1].mul_unchecked(s);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = TruncatedSeries::zero(f, modulus);
        for (e, c) in &self.terms {
            let mut term = TruncatedSeries::constant(f, modulus, *c);
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul_unchecked(&powers[j][k as usize]);
                }
            }
            acc.add_assign_unchecked(&term);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cusp() -> MultiPolynomial {
        // y^2 - x^3
        MultiPolynomial::from_terms(2, [(vec![0, 2], 1), (vec![3, 0], -1)])
    }

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn cusp_vanishes_on_its_parametrization() {
        let k = PrimeField::new(5).unwrap();
        let x = TruncatedSeries::monomial(k, 7, 1, 2);
        let y = TruncatedSeries::monomial(k, 7, 1, 3);
        assert!(cusp().eval_series(&[x, y]).unwrap().is_zero());
    }

    #[test]
    fn evaluates_simple_polynomials() {
        let k = PrimeField::new(7).unwrap();
        let x = MultiPolynomial::variable(1, 0);
        let c = TruncatedSeries::from_i64s(k, 4, &[3, 1, 4]);
        assert_eq!(x.eval_series(std::slice::from_ref(&c)).unwrap(), c);
        let xy = MultiPolynomial::from_terms(2, [(vec![1, 1], 1)]);
        let a = TruncatedSeries::from_i64s(k, 3, &[1, 1]);
        let b = TruncatedSeries::from_i64s(k, 3, &[1, -1]);
        assert_eq!(
            xy.eval_series(&[a.clone(), b]).unwrap(),
            TruncatedSeries::from_i64s(k, 3, &[1, 0, -1])
        );
        assert!(matches!(
            xy.eval_series(&[a]),
            Err(Error::ArityMismatch { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn partial_derivatives() {
        let d = cusp().partial(0);
        assert_eq!(d, MultiPolynomial::from_terms(2, [(vec![2, 0], -3)]));
        assert_eq!(d.display_with(&names()).to_string(), "-3*x^2");
        assert!(MultiPolynomial::constant(2, 5).partial(0).is_zero());
        let xy = MultiPolynomial::from_terms(2, [(vec![1, 1], 1)]);
        assert_eq!(xy.partial(1), MultiPolynomial::variable(2, 0));
    }

    #[test]
    fn displays_in_graded_order() {
        assert_eq!(cusp().display_with(&names()).to_string(), "-x^3 + y^2");
        let p = MultiPolynomial::from_terms(2, [(vec![0, 0], -4), (vec![1, 0], 2), (vec![1, 1], 1)]);
        assert_eq!(p.display_with(&names()).to_string(), "x*y + 2*x - 4");
    }

    fn poly_strategy() -> impl Strategy<Value = MultiPolynomial> {
        proptest::collection::vec((0u32..3, 0u32..3, -4i64..5), 0..5)
            .prop_map(|ts| MultiPolynomial::from_terms(2, ts.into_iter().map(|(a, b, c)| (vec![a, b], c))))
    }

    fn point_strategy() -> impl Strategy<Value = Vec<TruncatedSeries>> {
        proptest::collection::vec(proptest::collection::vec(0u64..5, 4), 2).prop_map(|cs| {
            let k = PrimeField::new(5).unwrap();
            cs.iter().map(|c| TruncatedSeries::from_coeffs(k, 4, c)).collect()
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_homomorphism(f in poly_strategy(), g in poly_strategy(), pt in point_strategy()) {
            let ef = f.eval_series(&pt).unwrap();
            let eg = g.eval_series(&pt).unwrap();
            prop_assert_eq!(f.add(&g).eval_series(&pt).unwrap(), ef.add(&eg).unwrap());
            prop_assert_eq!(f.mul(&g).eval_series(&pt).unwrap(), ef.mul(&eg).unwrap());
        }

        #[test]
        fn leibniz_rule(f in poly_strategy(), g in poly_strategy(), j in 0usize..2) {
            let lhs = f.mul(&g).partial(j);
            let rhs = f.partial(j).mul(&g).add(&f.mul(&g.partial(j)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
