//! The motivic zeta function from resolution data, its counting
//! specialization, reconstruction from point counts, and the limit
//! `L -> 1` that recovers the topological zeta function.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::resolution::ResolutionData;
use crate::error::{Error, Result};
use crate::rings::{LaurentPolynomialL, QPoly, RationalFunctionS};

/// `class * prod (L - 1) L^a t^N / (1 - L^a t^N)` over `factors = [(N, a)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicTerm {
    pub class: LaurentPolynomialL,
    pub factors: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MotivicZetaExpr {
    pub terms: Vec<MotivicTerm>,
}

impl MotivicZetaExpr {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for MotivicZetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, term) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", term.class)?;
            for &(n, a) in &term.factors {
                let la = power("L", a);
                let tn = power("t", n);
                let mono = if la.is_empty() { tn.clone() } else { format!("{la}{tn}") };
                write!(f, "*(L-1){mono}/(1-{mono})")?;
            }
        }
        Ok(())
    }
}

impl Serialize for MotivicZetaExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            class: String,
            factors: Vec<(u64, u64)>,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term {
                class: t.class.to_string(),
                factors: t.factors.clone(),
            })
            .collect();
        let mut st = s.serialize_struct("MotivicZetaExpr", 2)?;
        st.serialize_field("formula", &self.to_string())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

fn power(var: &str, e: u64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// One term per stratum with a nonzero class; a stratum indexed by `J`
/// contributes the factors `(N_j, delta N_j - nu_j)` for `j` in `J`.
pub fn motivic_zeta(res: &ResolutionData) -> Result<MotivicZetaExpr> {
    if !res.has_classes() {
        return Err(Error::MissingClasses);
    }
    let report = res.validate();
    if !report.passed() {
        let msgs: Vec<&str> = report.issues.iter().map(|i| i.message.as_str()).collect();
        return Err(Error::HypothesisViolated(msgs.join("; ")));
    }
    let terms = res
        .strata
        .iter()
        .filter_map(|s| {
            let class = s.class.clone().expect("checked above");
            (!class.is_zero()).then(|| MotivicTerm {
                class,
                factors: res
                    .factors(&s.j)
                    .into_iter()
                    .map(|(n, a)| (n as u64, a as u64))
                    .collect(),
            })
        })
        .collect();
    Ok(MotivicZetaExpr { terms })
}

fn truncated_mul(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(len.saturating_sub(i)) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients `c_0..=c_order` of the expansion with `L = q`.
pub fn motivic_series(expr: &MotivicZetaExpr, q: u64, order: usize) -> Result<Vec<BigInt>> {
    let len = order + 1;
    let qi = BigInt::from(q);
    let qr = BigRational::from_integer(qi.clone());
    let mut total = vec![BigRational::zero(); len];
    for term in &expr.terms {
        let mut series = vec![BigRational::zero(); len];
        series[0] = term.class.eval(&qi);
        for &(n, a) in &term.factors {
            if n == 0 {
                return Err(Error::InvalidInput("a factor with N = 0 has no expansion".into()));
            }
            let step = num_traits::pow(qr.clone(), a as usize);
            let mut geo = vec![BigRational::zero(); len];
            let mut coeff = &qr - BigRational::one();
            let mut k = 1usize;
            while k * (n as usize) < len {
                coeff *= &step;
                geo[k * n as usize] = coeff.clone();
                k += 1;
            }
            series = truncated_mul(&series, &geo, len);
        }
        for (t, s) in total.iter_mut().zip(series) {
            *t += s;
        }
    }
    total
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegral(format!("coefficient of t^{n} is {c}")))
            }
        })
        .collect()
}

/// A polynomial in `(q, t)`: `coeffs[i][j]` multiplies `q^j t^i`.
type Bivariate = Vec<Vec<BigInt>>;

fn trim(mut p: Bivariate) -> Bivariate {
    for row in &mut p {
        while row.last().is_some_and(Zero::is_zero) {
            row.pop();
        }
    }
    while p.last().is_some_and(Vec::is_empty) {
        p.pop();
    }
    p
}

fn bi_add(a: &Bivariate, b: &Bivariate) -> Bivariate {
    let mut out = a.clone();
    out.resize(a.len().max(b.len()), Vec::new());
    for (i, row) in b.iter().enumerate() {
        if out[i].len() < row.len() {
            out[i].resize(row.len(), BigInt::zero());
        }
        for (j, c) in row.iter().enumerate() {
            out[i][j] += c;
        }
    }
    trim(out)
}

fn bi_mul(a: &Bivariate, b: &Bivariate) -> Bivariate {
    let mut out: Bivariate = Vec::new();
    for (i1, r1) in a.iter().enumerate() {
        for (j1, c1) in r1.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (i2, r2) in b.iter().enumerate() {
                for (j2, c2) in r2.iter().enumerate() {
                    let (i, j) = (i1 + i2, j1 + j2);
                    if out.len() <= i {
                        out.resize(i + 1, Vec::new());
                    }
                    if out[i].len() <= j {
                        out[i].resize(j + 1, BigInt::zero());
                    }
                    out[i][j] += c1 * c2;
                }
            }
        }
    }
    trim(out)
}

fn bi_monomial(c: BigInt, q_exp: usize, t_exp: usize) -> Bivariate {
    let mut out = vec![Vec::new(); t_exp + 1];
    out[t_exp] = vec![BigInt::zero(); q_exp + 1];
    out[t_exp][q_exp] = c;
    trim(out)
}

/// `1 - q^a t^N`.
fn bi_factor(a: u64, n: u64) -> Bivariate {
    bi_add(
        &bi_monomial(BigInt::one(), 0, 0),
        &bi_monomial(-BigInt::one(), a as usize, n as usize),
    )
}

/// `numerator(q, t) / prod (1 - q^a t^N)` with an integer numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateRational {
    numerator: Bivariate,
    /// Factors `(a, N)` of the denominator.
    denominator: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum TopValue {
    #[serde(serialize_with = "crate::report::rational_str")]
    Value(BigRational),
    Pole,
}

impl TopValue {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            TopValue::Value(v) => Some(v),
            TopValue::Pole => None,
        }
    }
}

impl BivariateRational {
    /// `numerator[i][j]` is the coefficient of `q^j t^i`.
    pub fn new(numerator: Vec<Vec<BigInt>>, denominator: Vec<(u64, u64)>) -> Result<Self> {
        if denominator.iter().any(|&(_, n)| n == 0) {
            return Err(Error::InvalidInput("denominator factors need N >= 1".into()));
        }
        Ok(BivariateRational {
            numerator: trim(numerator),
            denominator,
        })
    }

    pub fn numerator(&self) -> &[Vec<BigInt>] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[(u64, u64)] {
        &self.denominator
    }

    /// The exact rational form of a motivic expression, over the
    /// denominator made of its distinct factors at their largest
    /// multiplicity within a term.
    pub fn from_expr(expr: &MotivicZetaExpr) -> Result<Self> {
        let mut template: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for term in &expr.terms {
            let mut local: BTreeMap<(u64, u64), usize> = BTreeMap::new();
            for &(n, a) in &term.factors {
                *local.entry((a, n)).or_default() += 1;
            }
            for (k, c) in local {
                let e = template.entry(k).or_default();
                *e = (*e).max(c);
            }
        }
        let mut numerator: Bivariate = Vec::new();
        for term in &expr.terms {
            if term.class.min_exponent().is_some_and(|e| e < 0) {
                return Err(Error::InvalidInput(format!("class {} has a negative power of L", term.class)));
            }
            let mut prod: Bivariate = Vec::new();
            for (e, c) in term.class.terms() {
                prod = bi_add(&prod, &bi_monomial(c.clone(), e as usize, 0));
            }
            let mut remaining = template.clone();
            for &(n, a) in &term.factors {
                *remaining.get_mut(&(a, n)).expect("in template") -= 1;
                let top = bi_monomial(BigInt::one(), a as usize + 1, n as usize);
                let low = bi_monomial(-BigInt::one(), a as usize, n as usize);
                prod = bi_mul(&prod, &bi_add(&top, &low));
            }
            for (&(a, n), &count) in &remaining {
                for _ in 0..count {
                    prod = bi_mul(&prod, &bi_factor(a, n));
                }
            }
            numerator = bi_add(&numerator, &prod);
        }
        let denominator = template
            .into_iter()
            .rev()
            .flat_map(|(k, c)| std::iter::repeat_n(k, c))
            .collect();
        Self::new(numerator, denominator)
    }

    /// Numerator coefficients in `t` at `q`.
    pub fn numerator_at(&self, q: &BigInt) -> Vec<BigInt> {
        self.numerator
            .iter()
            .map(|row| {
                row.iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, c| acc * q + c)
            })
            .collect()
    }

    /// Expansion `c_0..=c_order` at `q`.
    pub fn series(&self, q: u64, order: usize) -> Vec<BigInt> {
        let q = BigInt::from(q);
        let len = order + 1;
        let mut out: Vec<BigInt> = self.numerator_at(&q);
        out.resize(len.max(out.len()), BigInt::zero());
        out.truncate(len);
        for &(a, n) in &self.denominator {
            // Divide by 1 - q^a t^N: c_k += q^a c_{k-N}.
            let qa = num_traits::pow(q.clone(), a as usize);
            for k in (n as usize)..len {
                let prev = out[k - n as usize].clone();
                out[k] += &qa * prev;
            }
        }
        out
    }

    /// `Z_top(s)` as a rational function: substitute `q = e^x`,
    /// `t = e^{-(s + delta) x}` and take the leading term at `x = 0`.
    pub fn top_function(&self, delta: i64) -> Result<RationalFunctionS> {
        let k = self.denominator.len();
        let mut den = QPoly::one();
        for &(a, n) in &self.denominator {
            den = den.mul(&QPoly::from_i64s(&[delta * n as i64 - a as i64, n as i64]));
        }
        let mut factorial = BigRational::one();
        for r in 0..=k {
            if r > 0 {
                factorial *= BigRational::from_integer(BigInt::from(r));
            }
            let mut c = QPoly::zero();
            for (i, row) in self.numerator.iter().enumerate() {
                for (j, coeff) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let lin = QPoly::from_i64s(&[j as i64 - delta * i as i64, -(i as i64)]);
                    let mut p = QPoly::one();
                    for _ in 0..r {
                        p = p.mul(&lin);
                    }
                    c = c.add(&p.scale(&BigRational::from_integer(coeff.clone())));
                }
            }
            let c = c.scale(&factorial.recip());
            if r < k && !c.is_zero() {
                return Err(Error::IndeterminateForm(format!(
                    "the numerator vanishes to order {r} < {k} at L = 1"
                )));
            }
            if r == k {
                return RationalFunctionS::new(c, den);
            }
        }
        unreachable!("loop returns at r = k")
    }
}

impl fmt::Display for BivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, row) in self.numerator.iter().enumerate() {
            let mut qs = Vec::new();
            for (j, c) in row.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
                let mono = power("q", j as u64);
                let body = match (c.abs().is_one(), mono.is_empty()) {
                    (true, false) => mono,
                    (_, true) => c.abs().to_string(),
                    (false, false) => format!("{}{mono}", c.abs()),
                };
                let sign = if c.is_negative() { "-" } else { "+" };
                qs.push(format!("{sign}{body}"));
            }
            if qs.is_empty() {
                continue;
            }
            let mut poly = qs.join("");
            if poly.starts_with('+') {
                poly.remove(0);
            }
            let t = power("t", i as u64);
            parts.push(match (t.is_empty(), qs.len()) {
                (true, _) => poly,
                (false, 1) if poly == "1" => t,
                (false, _) => format!("({poly}){t}"),
            });
        }
        let num = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        write!(f, "({num})")?;
        let factors: Vec<String> = self
            .denominator
            .iter()
            .map(|&(a, n)| format!("(1-{}{})", power("q", a), power("t", n)))
            .collect();
        match factors.len() {
            0 => {}
            1 => write!(f, "/{}", factors[0])?,
            _ => write!(f, "/({})", factors.concat())?,
        }
        Ok(())
    }
}

impl Serialize for BivariateRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<Vec<String>> = self
            .numerator
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        let mut st = s.serialize_struct("BivariateRational", 3)?;
        st.serialize_field("formula", &self.to_string())?;
        st.serialize_field("numerator", &coeffs)?;
        st.serialize_field("denominator", &self.denominator)?;
        st.end()
    }
}

/// `sum_k c_k binom(e, r)` style Taylor coefficient of `(1 + eps)^e`.
fn binom(e: &BigInt, r: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..r {
        num *= e - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `Z_top(s)` from the motivic form: with `s = a/b`, substitute `q = u^b`,
/// `t = u^{-a - b delta}` and take the limit `u -> 1`. When a denominator
/// factor becomes identically zero the rational function in `s` from
/// [`BivariateRational::top_function`] is evaluated instead.
pub fn top_from_motivic(z: &BivariateRational, delta: i64, s: &BigRational) -> Result<TopValue> {
    let (a, b) = (s.numer().clone(), s.denom().clone());
    let c = &a + &b * BigInt::from(delta);
    let weights: Vec<BigInt> = z
        .denominator
        .iter()
        .map(|&(ak, nk)| &b * BigInt::from(ak) - &c * BigInt::from(nk))
        .collect();
    if weights.iter().any(Zero::is_zero) {
        return Ok(match z.top_function(delta)?.eval(s) {
            Some(v) => TopValue::Value(v),
            None => TopValue::Pole,
        });
    }
    let k = weights.len();
    let mut coeffs = vec![BigInt::zero(); k + 1];
    for (i, row) in z.numerator.iter().enumerate() {
        for (j, n) in row.iter().enumerate().filter(|(_, n)| !n.is_zero()) {
            let e = &b * BigInt::from(j) - &c * BigInt::from(i);
            for (r, slot) in coeffs.iter_mut().enumerate() {
                *slot += n * binom(&e, r);
            }
        }
    }
    if let Some(r0) = coeffs.iter().position(|x| !x.is_zero()) {
        if r0 < k {
            return Ok(TopValue::Pole);
        }
    }
    let den: BigInt = weights.iter().map(|w| -w).product();
    Ok(TopValue::Value(BigRational::new(coeffs[k].clone(), den)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFit {
    pub prime: u64,
    pub degree: usize,
    #[serde(serialize_with = "bigints")]
    pub numerator: Vec<BigInt>,
    /// Coefficients beyond the numerator confirmed to vanish.
    pub surplus: usize,
}

fn bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconstruction {
    pub zeta: BivariateRational,
    pub fits: Vec<PrimeFit>,
    pub q_degree_bound: usize,
}

/// Recovers `Z = B(q, t) / prod (1 - q^a t^N)` from contact counts.
///
/// `counts[(q, n)]` must cover `n = 0..=n_max` for every prime, with
/// `n_max >= numerator_degree_bound + 2`. For each prime the numerator is
/// `C(t) D(t) mod t^{n_max+1}` cut at the smallest degree whose remaining
/// coefficients (at least two) all vanish. Each numerator coefficient is
/// then interpolated across the primes and must be an integer polynomial
/// of degree at most `q_degree_bound` (default: one less than the number
/// of primes).
pub fn reconstruct_motivic(
    counts: &BTreeMap<(u64, usize), BigInt>,
    template: &[(u64, u64)],
    numerator_degree_bound: usize,
    q_degree_bound: Option<usize>,
) -> Result<Reconstruction> {
    let mut by_prime: BTreeMap<u64, BTreeMap<usize, &BigInt>> = BTreeMap::new();
    for (&(q, n), c) in counts {
        by_prime.entry(q).or_default().insert(n, c);
    }
    let primes: Vec<u64> = by_prime.keys().copied().collect();
    let qbound = q_degree_bound.unwrap_or(primes.len().saturating_sub(1));
    if primes.len() < qbound + 1 || primes.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{} primes cannot determine polynomials of degree {qbound}",
            primes.len()
        )));
    }
    let shape = BivariateRational::new(Vec::new(), template.to_vec())?;
    let mut fits = Vec::new();
    for (&q, series) in &by_prime {
        let n_max = *series.keys().last().expect("nonempty");
        if series.len() != n_max + 1 {
            return Err(Error::InvalidInput(format!("counts for q = {q} are not contiguous from n = 0")));
        }
        if n_max < numerator_degree_bound + 2 {
            return Err(Error::InvalidInput(format!(
                "q = {q}: counts up to n = {n_max} leave fewer than two surplus coefficients"
            )));
        }
        let c: Vec<BigInt> = series.values().map(|&v| v.clone()).collect();
        let b = times_denominator(&shape, q, &c);
        // n_max >= bound + 2, so any degree within the bound leaves the
        // required surplus.
        if let Some(bad) = (numerator_degree_bound + 1..=n_max).find(|&i| !b[i].is_zero()) {
            return Err(Error::InconsistentFit {
                prime: q,
                degree: bad,
                value: b[bad].to_string(),
            });
        }
        let degree = b.iter().rposition(|x| !x.is_zero()).unwrap_or(0);
        fits.push(PrimeFit {
            prime: q,
            degree,
            numerator: b[..=degree].to_vec(),
            surplus: n_max - degree,
        });
    }
    let tdeg = fits.iter().map(|f| f.degree).max().unwrap_or(0);
    let mut numerator: Bivariate = Vec::with_capacity(tdeg + 1);
    for i in 0..=tdeg {
        let points: Vec<(BigRational, BigRational)> = fits
            .iter()
            .map(|f| {
                let y = f.numerator.get(i).cloned().unwrap_or_default();
                (BigRational::from_integer(f.prime.into()), BigRational::from_integer(y))
            })
            .collect();
        let poly = lagrange(&points);
        if poly.degree().unwrap_or(0) > qbound {
            return Err(Error::InterpolationFailure(format!(
                "coefficient of t^{i} needs q-degree {}, above the bound {qbound}",
                poly.degree().unwrap_or(0)
            )));
        }
        let mut row = Vec::new();
        for (j, c) in poly.coeffs().iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::InterpolationFailure(format!(
                    "coefficient of q^{j} t^{i} interpolates to {c}, not an integer"
                )));
            }
            row.push(c.to_integer());
        }
        numerator.push(row);
    }
    Ok(Reconstruction {
        zeta: BivariateRational::new(numerator, template.to_vec())?,
        fits,
        q_degree_bound: qbound,
    })
}

/// `C(t) * prod (1 - q^a t^N)` truncated to the length of `c`.
fn times_denominator(shape: &BivariateRational, q: u64, c: &[BigInt]) -> Vec<BigInt> {
    let q = BigInt::from(q);
    let mut out = c.to_vec();
    for &(a, n) in shape.denominator() {
        let qa = num_traits::pow(q.clone(), a as usize);
        for k in (n as usize..out.len()).rev() {
            let prev = out[k - n as usize].clone();
            out[k] -= &qa * prev;
        }
    }
    out
}

fn lagrange(points: &[(BigRational, BigRational)]) -> QPoly {
    let mut total = QPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = QPoly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let lin = QPoly::linear(-xj.clone(), BigRational::one());
                basis = basis.mul(&lin).scale(&(xi - xj).recip());
            }
        }
        total = total.add(&basis);
    }
    total
}

/// Small helper for callers holding counts as a per-prime list.
pub fn counts_table(per_prime: &BTreeMap<u64, Vec<BigInt>>) -> BTreeMap<(u64, usize), BigInt> {
    per_prime
        .iter()
        .flat_map(|(&q, v)| v.iter().enumerate().map(move |(n, c)| ((q, n), c.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::qpoly::rat;

    fn line_expr() -> MotivicZetaExpr {
        MotivicZetaExpr {
            terms: vec![
                MotivicTerm {
                    class: LaurentPolynomialL::l().sub(&LaurentPolynomialL::one()),
                    factors: vec![],
                },
                MotivicTerm {
                    class: LaurentPolynomialL::one(),
                    factors: vec![(1, 0)],
                },
            ],
        }
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn series_examples() {
        assert_eq!(motivic_series(&line_expr(), 3, 3).unwrap(), ints(&[2, 2, 2, 2]));
        assert_eq!(motivic_series(&MotivicZetaExpr::default(), 3, 2).unwrap(), ints(&[0, 0, 0]));
        let single = MotivicZetaExpr {
            terms: vec![MotivicTerm {
                class: LaurentPolynomialL::one(),
                factors: vec![(2, 1)],
            }],
        };
        assert_eq!(motivic_series(&single, 2, 5).unwrap(), ints(&[0, 0, 2, 0, 4, 0]));
        let frac = MotivicZetaExpr {
            terms: vec![MotivicTerm {
                class: LaurentPolynomialL::monomial(-1, 1),
                factors: vec![],
            }],
        };
        assert!(matches!(motivic_series(&frac, 3, 1), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn bivariate_form() {
        let z = BivariateRational::from_expr(&line_expr()).unwrap();
        assert_eq!(z.denominator(), &[(0, 1)]);
        assert_eq!(z.to_string(), "(q-1)/(1-t)");
        for q in [2, 3, 5] {
            assert_eq!(z.series(q, 6), motivic_series(&line_expr(), q, 6).unwrap());
        }
    }

    #[test]
    fn top_examples() {
        let z = BivariateRational::from_expr(&line_expr()).unwrap();
        assert_eq!(top_from_motivic(&z, 1, &rat(1, 1)).unwrap(), TopValue::Value(rat(1, 2)));
        assert_eq!(top_from_motivic(&z, 1, &rat(-1, 1)).unwrap(), TopValue::Pole);
        assert_eq!(z.top_function(1).unwrap().to_string(), "1/(1+s)");
        for s in [rat(0, 1), rat(1, 2), rat(-1, 2), rat(7, 3)] {
            let sym = z.top_function(1).unwrap().eval(&s).unwrap();
            assert_eq!(top_from_motivic(&z, 1, &s).unwrap(), TopValue::Value(sym));
        }
        let bad = BivariateRational::new(vec![vec![BigInt::one()]], vec![(0, 1)]).unwrap();
        assert!(matches!(bad.top_function(1), Err(Error::IndeterminateForm(_))));
    }

    #[test]
    fn reconstruction_examples() {
        let mut per_prime = BTreeMap::new();
        for q in [2u64, 3, 5] {
            per_prime.insert(q, vec![BigInt::from(q - 1); 5]);
        }
        let counts = counts_table(&per_prime);
        let r = reconstruct_motivic(&counts, &[(0, 1)], 1, None).unwrap();
        assert_eq!(r.zeta.to_string(), "(q-1)/(1-t)");
        assert_eq!(r.zeta, BivariateRational::from_expr(&line_expr()).unwrap());
        assert!(matches!(
            reconstruct_motivic(&counts, &[(3, 1)], 1, None),
            Err(Error::InconsistentFit { .. })
        ));
        assert!(reconstruct_motivic(&counts, &[(0, 1)], 3, None).is_err());
    }

    #[test]
    fn interpolation_rejects_mixed_data() {
        let mut per_prime = BTreeMap::new();
        per_prime.insert(2u64, vec![BigInt::from(1); 5]);
        per_prime.insert(3u64, vec![BigInt::from(2); 5]);
        per_prime.insert(5u64, vec![BigInt::from(5); 5]);
        let counts = counts_table(&per_prime);
        assert!(matches!(
            reconstruct_motivic(&counts, &[(0, 1)], 1, None),
            Err(Error::InterpolationFailure(_))
        ));
        assert!(matches!(
            reconstruct_motivic(&counts, &[(0, 1)], 1, Some(1)),
            Err(Error::InterpolationFailure(_))
        ));
    }
}
