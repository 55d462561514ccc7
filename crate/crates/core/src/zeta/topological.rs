//! The topological zeta function and checks of its poles against the
//! lower bounds.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::resolution::ResolutionData;
use crate::error::{Error, Result};
use crate::rings::{QPoly, RationalFunctionS};

/// `sum_J chi(E_J) prod_{j in J} 1 / (nu_j + s N_j)`, in lowest terms.
pub fn topological_zeta(res: &ResolutionData) -> Result<RationalFunctionS> {
    let report = res.validate();
    let problems: Vec<&str> = report.topological_issues().map(|i| i.message.as_str()).collect();
    if !problems.is_empty() {
        return Err(Error::HypothesisViolated(problems.join("; ")));
    }
    let mut total = RationalFunctionS::zero();
    for s in &res.strata {
        if s.euler == 0 {
            continue;
        }
        let mut den = QPoly::one();
        for &j in &s.j {
            let d = res.divisors[j - 1];
            den = den.mul(&QPoly::from_i64s(&[d.nu, d.n]));
        }
        let term = RationalFunctionS::new(QPoly::from_i64s(&[s.euler]), den)?;
        total = total.add(&term);
    }
    Ok(total)
}

/// Poles with multiplicities, in ascending order.
pub fn poles(z: &RationalFunctionS) -> Result<Vec<(BigRational, usize)>> {
    z.poles()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", content = "value", rename_all = "kebab-case")]
pub enum PoleBoundMode {
    /// The ideal has `m` generators locally; needs `m < delta`.
    Equations(usize),
    /// Reduced of pure dimension `d`; needs `d >= 1`.
    Dimension(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// The hypotheses of the bound do not hold.
    #[serde(rename = "N/A")]
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleBoundReport {
    pub delta: usize,
    pub mode: PoleBoundMode,
    #[serde(serialize_with = "crate::report::rational_str")]
    pub bound: BigRational,
    #[serde(serialize_with = "opt_rational")]
    pub min_pole: Option<BigRational>,
    /// `min_pole - bound`.
    #[serde(serialize_with = "opt_rational")]
    pub slack: Option<BigRational>,
    pub attained: bool,
    pub hypothesis: Option<String>,
    pub status: CheckStatus,
}

fn opt_rational<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&crate::report::rational_string(r)),
        None => s.serialize_none(),
    }
}

pub fn pole_bound(delta: usize, mode: PoleBoundMode) -> BigRational {
    let delta = delta as i64;
    let numerator = match mode {
        PoleBoundMode::Equations(m) => delta - m as i64 + 1,
        PoleBoundMode::Dimension(d) => d as i64 + 1,
    };
    BigRational::new(numerator.into(), 2.into()) - BigRational::from_integer(delta.into())
}

pub fn pole_bound_check(z: &RationalFunctionS, delta: usize, mode: PoleBoundMode) -> Result<PoleBoundReport> {
    let bound = pole_bound(delta, mode);
    let hypothesis = match mode {
        PoleBoundMode::Equations(m) if m >= delta => Some(format!("needs m < delta, got m = {m}, delta = {delta}")),
        PoleBoundMode::Dimension(0) => Some("needs d >= 1".to_string()),
        _ => None,
    };
    let ps = poles(z)?;
    let min_pole = ps.first().map(|(p, _)| p.clone());
    let slack = min_pole.as_ref().map(|p| p - &bound);
    let attained = slack.as_ref().is_some_and(Zero::is_zero);
    let status = match (&hypothesis, &slack) {
        (Some(_), _) => CheckStatus::Inapplicable,
        (None, Some(s)) if *s < BigRational::zero() => CheckStatus::Fail,
        _ => CheckStatus::Pass,
    };
    Ok(PoleBoundReport {
        delta,
        mode,
        bound,
        min_pole,
        slack,
        attained,
        hypothesis,
        status,
    })
}

/// Evaluates at `s`, `None` at a pole.
pub fn evaluate(z: &RationalFunctionS, s: &BigRational) -> Option<BigRational> {
    z.eval(s)
}
