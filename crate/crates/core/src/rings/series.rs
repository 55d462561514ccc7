//! Truncated power series: elements of `F_p[t]/(t^M)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Fp, PrimeField};
use crate::error::{Error, Result};

/// The `t`-adic order of a truncated series. The zero class is reported as
/// `AtLeast(M)`, never as the number `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(usize),
    AtLeast(usize),
}

impl Valuation {
    /// Numeric value with the zero class mapped to the modulus.
    pub fn capped(self) -> usize {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(m) => write!(f, ">={m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncatedSeries {
    field: PrimeField,
    coeffs: Vec<Fp>,
}

impl TruncatedSeries {
    pub fn zero(field: PrimeField, modulus: usize) -> Self {
        TruncatedSeries {
            field,
            coeffs: vec![0; modulus],
        }
    }

    pub fn constant(field: PrimeField, modulus: usize, c: Fp) -> Self {
        Self::monomial(field, modulus, c, 0)
    }

    pub fn one(field: PrimeField, modulus: usize) -> Self {
        Self::constant(field, modulus, 1)
    }

    /// `c * t^k`, which is zero when `k >= modulus`.
    pub fn monomial(field: PrimeField, modulus: usize, c: Fp, k: usize) -> Self {
        let mut s = Self::zero(field, modulus);
        if k < modulus {
            s.coeffs[k] = c % field.modulus();
        }
        s
    }

    /// Builds a series from coefficients, reducing them mod `p`; entries past
    /// the modulus are dropped and missing ones are zero.
    pub fn from_coeffs(field: PrimeField, modulus: usize, coeffs: &[Fp]) -> Self {
        let mut s = Self::zero(field, modulus);
        for (dst, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *dst = c % field.modulus();
        }
        s
    }

    pub fn from_i64s(field: PrimeField, modulus: usize, coeffs: &[i64]) -> Self {
        let reduced: Vec<Fp> = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Self::from_coeffs(field, modulus, &reduced)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> Fp {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn set_coeff(&mut self, i: usize, c: Fp) {
        if i < self.coeffs.len() {
            self.coeffs[i] = c % self.field.modulus();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.modulus() != other.modulus() {
            return Err(Error::ModulusMismatch {
                left: self.modulus(),
                right: other.modulus(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let f = self.field;
        TruncatedSeries {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        let f = self.field;
        TruncatedSeries {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        let f = self.field;
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = f.add(*a, b);
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let m = self.modulus();
        let p = self.field.modulus();
        let mut out = vec![0u64; m];
        let lead_a = self.coeffs.iter().position(|&c| c != 0);
        let lead_b = other.coeffs.iter().position(|&c| c != 0);
        if let (Some(va), Some(vb)) = (lead_a, lead_b) {
            for i in va..m {
                let a = self.coeffs[i];
                if a == 0 {
                    continue;
                }
                for j in vb..(m - i) {
                    let b = other.coeffs[j];
                    if b != 0 {
                        out[i + j] = (out[i + j] + a * b) % p;
                    }
                }
            }
        }
        TruncatedSeries {
            field: self.field,
            coeffs: out,
        }
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        TruncatedSeries {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: Fp) -> Self {
        let f = self.field;
        TruncatedSeries {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|&c| c != 0) {
            Some(v) => Valuation::Finite(v),
            None => Valuation::AtLeast(self.modulus()),
        }
    }

    /// Inverse of a series with nonzero constant term.
    pub fn unit_inverse(&self) -> Result<Self> {
        let f = self.field;
        let m = self.modulus();
        let c0_inv = f.inv(self.coeff(0)).ok_or(Error::NotAUnit)?;
        let mut inv = vec![0u64; m];
        if m == 0 {
            return Ok(self.clone());
        }
        inv[0] = c0_inv;
        for k in 1..m {
            let mut acc = 0u64;
            for j in 1..=k {
                acc = f.add(acc, f.mul(self.coeffs[j], inv[k - j]));
            }
            inv[k] = f.neg(f.mul(acc, c0_inv));
        }
        Ok(TruncatedSeries {
            field: f,
            coeffs: inv,
        })
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let m = self.modulus();
        let mut out = vec![0u64; m];
        if k < m {
            out[k..].copy_from_slice(&self.coeffs[..m - k]);
        }
        TruncatedSeries {
            field: self.field,
            coeffs: out,
        }
    }

    /// Exact quotient by `t^k` for a series of valuation at least `k`. The
    /// quotient is only determined modulo `t^(M-k)`; its top `k`
    /// coefficients are set to zero.
    pub fn shift_down(&self, k: usize) -> Self {
        let m = self.modulus();
        let mut out = vec![0u64; m];
        if k < m {
            out[..m - k].copy_from_slice(&self.coeffs[k..]);
        }
        TruncatedSeries {
            field: self.field,
            coeffs: out,
        }
    }

    /// Reinterprets the series with another modulus: truncates when shrinking,
    /// pads with zero coefficients when growing.
    pub fn with_modulus(&self, modulus: usize) -> Self {
        Self::from_coeffs(self.field, modulus, &self.coeffs)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "t")?,
                1 => write!(f, "{c}t")?,
                _ if c == 1 => write!(f, "t^{i}")?,
                _ => write!(f, "{c}t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " mod t^{}", self.modulus())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn product_of_conjugates() {
        let k = f(7);
        let a = TruncatedSeries::from_i64s(k, 3, &[1, 1]);
        let b = TruncatedSeries::from_i64s(k, 3, &[1, -1]);
        assert_eq!(a.mul(&b).unwrap(), TruncatedSeries::from_i64s(k, 3, &[1, 0, -1]));
        let z = TruncatedSeries::zero(k, 3);
        assert_eq!(a.add(&z).unwrap(), a);
        let t2 = TruncatedSeries::monomial(k, 3, 1, 2);
        assert!(t2.mul(&t2).unwrap().is_zero());
    }

    #[test]
    fn rejects_mixed_moduli_and_fields() {
        let a = TruncatedSeries::one(f(5), 3);
        let b = TruncatedSeries::one(f(5), 4);
        let c = TruncatedSeries::one(f(7), 3);
        assert_eq!(a.add(&b), Err(Error::ModulusMismatch { left: 3, right: 4 }));
        assert_eq!(a.mul(&c), Err(Error::FieldMismatch { left: 5, right: 7 }));
    }

    #[test]
    fn valuations() {
        let k = f(5);
        assert_eq!(TruncatedSeries::zero(k, 4).valuation(), Valuation::AtLeast(4));
        assert_eq!(
            TruncatedSeries::from_i64s(k, 5, &[0, 0, 1, 1]).valuation(),
            Valuation::Finite(2)
        );
        assert_eq!(TruncatedSeries::from_i64s(k, 5, &[3, 1]).valuation(), Valuation::Finite(0));
        assert_eq!(Valuation::AtLeast(4).to_string(), ">=4");
    }

    #[test]
    fn unit_inverses() {
        let k = f(5);
        let one = TruncatedSeries::one(k, 3);
        assert_eq!(one.unit_inverse().unwrap(), one);
        let a = TruncatedSeries::from_i64s(k, 3, &[1, -1]);
        assert_eq!(a.unit_inverse().unwrap(), TruncatedSeries::from_i64s(k, 3, &[1, 1, 1]));
        let two = TruncatedSeries::constant(k, 2, 2);
        assert_eq!(two.unit_inverse().unwrap(), TruncatedSeries::constant(k, 2, 3));
        let t = TruncatedSeries::monomial(k, 3, 1, 1);
        assert_eq!(t.unit_inverse(), Err(Error::NotAUnit));
    }

    fn series_strategy(p: u64, m: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(0..p, m)
            .prop_map(move |c| TruncatedSeries::from_coeffs(PrimeField::new(p).unwrap(), m, &c))
    }

    proptest! {
        #[test]
        fn inverse_cancels(a in series_strategy(7, 6), b in series_strategy(7, 6)) {
            prop_assume!(b.coeff(0) != 0);
            let inv = b.unit_inverse().unwrap();
            prop_assert_eq!(inv.mul(&b).unwrap(), TruncatedSeries::one(b.field(), 6));
            prop_assert_eq!(a.mul(&b).unwrap().mul(&inv).unwrap(), a);
        }

        #[test]
        fn valuation_is_additive(a in series_strategy(5, 7), b in series_strategy(5, 7)) {
            let prod = a.mul(&b).unwrap();
            let expected = (a.valuation().capped() + b.valuation().capped()).min(7);
            prop_assert_eq!(prod.valuation().capped(), expected);
        }
    }
}
