//! Invariant factors of jets and arcs, the stratification they induce, and
//! counting checks of the fiber dimensions and divisibility statements.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::dvr::{cokernel_exponents, SeriesMatrix};
use crate::error::{Error, Result};
use crate::jets::count::count_jets_fp;
use crate::jets::enumerate::enumerate_jets_fp;
use crate::jets::{AffineScheme, Budget, FpScheme, Jet};
use crate::rings::{TruncatedSeries, Valuation};

/// `ceil(n / 2)`.
pub fn threshold(n: usize) -> usize {
    n.div_ceil(2)
}

/// The `m x N` Jacobian at a jet, modulo `t^{n+1}`.
pub fn jacobian_matrix(x: &AffineScheme, theta: &Jet) -> Result<SeriesMatrix> {
    let xp = x.over(theta.field().modulus())?;
    check_arity(&xp, theta)?;
    let m = theta.level() + 1;
    Ok(xp.jacobian(&theta.series(m), m))
}

fn check_arity(x: &FpScheme, theta: &Jet) -> Result<()> {
    if theta.nvars() != x.nvars() {
        return Err(Error::ArityMismatch {
            expected: x.nvars(),
            actual: theta.nvars(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetInvariants {
    pub level: usize,
    /// `e_1 <= ... <= e_N`, each in `[0, n+1]`.
    pub exponents: Vec<usize>,
    pub g: usize,
    /// Number of exponents below `g`.
    pub b: usize,
    /// `e_1 + ... + e_r`, absent when one of these summands sits at the cap
    /// `n + 1` and the true arc value could be larger.
    pub e: Option<usize>,
}

impl JetInvariants {
    pub fn from_exponents(level: usize, exponents: Vec<usize>, r: usize) -> Self {
        let g = threshold(level);
        let b = exponents.iter().take_while(|&&e| e < g).count();
        let head = &exponents[..r.min(exponents.len())];
        let e = if head.iter().any(|&v| v > level) {
            None
        } else {
            Some(head.iter().sum())
        };
        JetInvariants {
            level,
            exponents,
            g,
            b,
            e,
        }
    }

    pub fn key(&self) -> StratumKey {
        StratumKey {
            level: self.level,
            exponents: self.exponents[..self.b].to_vec(),
        }
    }

    pub fn is_unstable(&self) -> bool {
        self.e.is_none()
    }
}

pub fn jet_invariants(x: &AffineScheme, theta: &Jet) -> Result<JetInvariants> {
    let xp = x.over(theta.field().modulus())?;
    check_arity(&xp, theta)?;
    Ok(jet_invariants_fp(&xp, x.codim(), theta))
}

pub fn jet_invariants_fp(x: &FpScheme, r: usize, theta: &Jet) -> JetInvariants {
    let m = theta.level() + 1;
    let j = x.jacobian(&theta.series(m), m);
    JetInvariants::from_exponents(theta.level(), cokernel_exponents(&j), r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcInvariants {
    pub modulus: usize,
    /// Exact values below the modulus, `AtLeast(M)` otherwise.
    pub exponents: Vec<Valuation>,
    /// Number of exact exponents.
    pub p_count: usize,
}

/// Invariant factors of the Jacobian along an arc prefix known modulo
/// `t^M`. Exponents below `M` are exact values for every arc with this
/// prefix.
pub fn arc_invariants(x: &AffineScheme, gamma: &[TruncatedSeries]) -> Result<ArcInvariants> {
    let first = gamma.first().ok_or(Error::ArityMismatch {
        expected: x.nvars(),
        actual: 0,
    })?;
    let (p, modulus) = (first.field().modulus(), first.modulus());
    if gamma.len() != x.nvars() {
        return Err(Error::ArityMismatch {
            expected: x.nvars(),
            actual: gamma.len(),
        });
    }
    if gamma.iter().any(|s| s.modulus() != modulus || s.field() != first.field()) {
        return Err(Error::InvalidInput("arc coordinates must share field and modulus".into()));
    }
    let xp = x.over(p)?;
    if xp.eval(gamma, modulus).iter().any(|v| !v.is_zero()) {
        return Err(Error::HypothesisViolated(format!(
            "the generators do not vanish on the arc modulo t^{modulus}"
        )));
    }
    let e = cokernel_exponents(&xp.jacobian(gamma, modulus));
    let exponents: Vec<Valuation> = e
        .iter()
        .map(|&v| {
            if v < modulus {
                Valuation::Finite(v)
            } else {
                Valuation::AtLeast(modulus)
            }
        })
        .collect();
    let p_count = exponents.iter().filter(|v| v.is_finite()).count();
    Ok(ArcInvariants {
        modulus,
        exponents,
        p_count,
    })
}

/// Stratum label: the level and the exponents below the threshold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StratumKey {
    pub level: usize,
    pub exponents: Vec<usize>,
}

impl StratumKey {
    pub fn new(level: usize, exponents: Vec<usize>) -> Self {
        StratumKey { level, exponents }
    }

    pub fn b(&self) -> usize {
        self.exponents.len()
    }

    pub fn last(&self) -> usize {
        self.exponents.last().copied().unwrap_or(0)
    }

    pub fn sum(&self) -> usize {
        self.exponents.iter().sum()
    }
}

/// Partitions level-`n` jets by stratum key, preserving input order within
/// each class.
pub fn stratify(x: &AffineScheme, jets: &[Jet], n: usize) -> Result<BTreeMap<StratumKey, Vec<Jet>>> {
    let mut out: BTreeMap<StratumKey, Vec<Jet>> = BTreeMap::new();
    let Some(first) = jets.first() else {
        return Ok(out);
    };
    let xp = x.over(first.field().modulus())?;
    for j in jets {
        if j.level() != n {
            return Err(Error::InvalidInput(format!(
                "jet of level {} in a level-{n} stratification",
                j.level()
            )));
        }
        check_arity(&xp, j)?;
        let inv = jet_invariants_fp(&xp, x.codim(), j);
        out.entry(inv.key()).or_default().push(j.clone());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum FiberMode {
    /// Fibers of dimension `(N - m)(n - l) + e` for strata with `m` pivots.
    CompleteIntersection,
    /// Fibers of dimension `(n - l) d + e` for strata with `r` pivots.
    Reduced,
    /// Stepwise fibers `A^{N - a(l')}` for `n > l >= n - g`.
    BStratum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub key: StratumKey,
    pub source_level: usize,
    pub target_level: usize,
    pub mode: FiberMode,
    pub expected_dimension: usize,
    #[serde(serialize_with = "crate::report::biguint_str")]
    pub expected_size: BigUint,
    /// Fiber size to the number of image points with that fiber size.
    pub fiber_histogram: BTreeMap<u64, u64>,
    pub image_points: u64,
    pub verdict: Verdict,
    pub note: &'static str,
}

const CARDINALITY_NOTE: &str = "cardinality check over F_p (empirical specialization)";

/// Expected fiber dimension for a stratum, or the violated hypothesis.
pub fn expected_fiber_dimension(
    x: &AffineScheme,
    key: &StratumKey,
    l: usize,
    mode: FiberMode,
) -> std::result::Result<usize, String> {
    let n = key.level;
    let nn = x.nvars();
    if l >= n {
        return Err(format!("need n > l, got n = {n}, l = {l}"));
    }
    let em = key.last();
    match mode {
        FiberMode::CompleteIntersection => {
            let m = x.ngens();
            if m > nn {
                return Err(format!("need m <= N, got m = {m}, N = {nn}"));
            }
            if key.b() != m {
                return Err(format!("need b = m = {m}, got b = {}", key.b()));
            }
            if l < em || l > n - em {
                return Err(format!("need e_m <= l <= n - e_m, got e_m = {em}, l = {l}, n = {n}"));
            }
            Ok((nn - m) * (n - l) + key.sum())
        }
        FiberMode::Reduced => {
            let r = x.codim();
            if key.b() != r {
                return Err(format!("need b = r = {r}, got b = {}", key.b()));
            }
            let e = key.sum();
            if n < (2 * em).max(e) {
                return Err(format!("need n >= max(2 e_r, e) = {}, got n = {n}", (2 * em).max(e)));
            }
            if l < em || l > n - em {
                return Err(format!("need e_r <= l <= n - e_r, got e_r = {em}, l = {l}, n = {n}"));
            }
            Ok((n - l) * x.dim() + e)
        }
        FiberMode::BStratum => {
            let g = threshold(n);
            if key.b() > x.ngens() || key.b() > nn {
                return Err(format!("need b <= m and b <= N, got b = {}", key.b()));
            }
            if l < n - g {
                return Err(format!("need l >= n - g = {}, got l = {l}", n - g));
            }
            Ok((l..n).map(|lp| nn - steps_a(&key.exponents, n - lp)).sum())
        }
    }
}

/// Largest `a` in `{0..b}` with `e_a < bound`, where `e_0 = 0`.
fn steps_a(exponents: &[usize], bound: usize) -> usize {
    exponents.iter().take_while(|&&e| e < bound).count()
}

/// Groups each stratum's `n`-jets by their `l`-truncation and compares
/// every fiber with `p^D`. Without a stratum filter, strata outside the
/// mode's hypotheses are skipped; with one, a violated hypothesis is an
/// error.
pub fn fiber_report(
    x: &AffineScheme,
    n: usize,
    l: usize,
    p: u64,
    mode: FiberMode,
    only: Option<&StratumKey>,
    budget: &mut Budget,
) -> Result<Vec<FiberReport>> {
    if l >= n {
        return Err(Error::HypothesisViolated(format!("need n > l, got n = {n}, l = {l}")));
    }
    if let Some(k) = only {
        if k.level != n {
            return Err(Error::InvalidInput(format!("stratum key has level {}, expected {n}", k.level)));
        }
        expected_fiber_dimension(x, k, l, mode).map_err(Error::HypothesisViolated)?;
    }
    let xp = x.over(p)?;
    let jets = enumerate_jets_fp(&xp, n, budget)?;
    let strata = stratify(x, &jets, n)?;
    let mut out = Vec::new();
    for (key, members) in strata {
        if only.is_some_and(|k| *k != key) {
            continue;
        }
        let Ok(dim) = expected_fiber_dimension(x, &key, l, mode) else {
            continue;
        };
        let mut fibers: BTreeMap<Jet, u64> = BTreeMap::new();
        for j in &members {
            *fibers.entry(j.truncate(l)).or_default() += 1;
        }
        let expected = num_traits::pow(BigUint::from(p), dim);
        let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
        for &size in fibers.values() {
            *histogram.entry(size).or_default() += 1;
        }
        let ok = histogram.keys().all(|&s| BigUint::from(s) == expected);
        out.push(FiberReport {
            key,
            source_level: n,
            target_level: l,
            mode,
            expected_dimension: dim,
            expected_size: expected,
            image_points: fibers.len() as u64,
            fiber_histogram: histogram,
            verdict: Verdict::from_bool(ok),
            note: CARDINALITY_NOTE,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisibilityMode {
    /// `p^{ceil((N - m + 1) n / 2)}` divides `#L_n(X)`; needs `m < N`.
    Equations,
    /// `p^{ceil((d + 1) n / 2)}` divides `#L_n(X)`; needs `X` reduced of
    /// pure dimension `d >= 1`, which the caller asserts.
    Dimension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityRow {
    pub n: usize,
    #[serde(serialize_with = "crate::report::biguint_str")]
    pub count: BigUint,
    pub required_power: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityTable {
    pub prime: u64,
    pub mode: DivisibilityMode,
    pub rows: Vec<DivisibilityRow>,
    pub note: &'static str,
}

impl DivisibilityTable {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.verdict.passed())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("prime,n,count,required_power,verdict\n");
        for r in &self.rows {
            let v = if r.verdict.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{},{},{},{},{}", self.prime, r.n, r.count, r.required_power, v);
        }
        s
    }
}

pub fn divisibility_report(
    x: &AffineScheme,
    p: u64,
    levels: std::ops::RangeInclusive<usize>,
    mode: DivisibilityMode,
    budget: &mut Budget,
) -> Result<DivisibilityTable> {
    let (nn, m, d) = (x.nvars(), x.ngens(), x.dim());
    let factor = match mode {
        DivisibilityMode::Equations => {
            if m >= nn {
                return Err(Error::HypothesisViolated(format!("need m < N, got m = {m}, N = {nn}")));
            }
            nn - m + 1
        }
        DivisibilityMode::Dimension => {
            if d < 1 {
                return Err(Error::HypothesisViolated("need d >= 1".into()));
            }
            d + 1
        }
    };
    let xp = x.over(p)?;
    let mut rows = Vec::new();
    for n in levels {
        let count = count_jets_fp(&xp, n, budget)?;
        let required_power = (factor * n).div_ceil(2);
        let modulus = num_traits::pow(BigUint::from(p), required_power);
        let ok = (&count % &modulus).is_zero();
        rows.push(DivisibilityRow {
            n,
            count,
            required_power,
            verdict: Verdict::from_bool(ok),
        });
    }
    Ok(DivisibilityTable {
        prime: p,
        mode,
        rows,
        note: CARDINALITY_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::PrimeField;

    fn cusp() -> AffineScheme {
        AffineScheme::parse(&["x", "y"], &["y^2 - x^3"], 1).unwrap()
    }

    fn node() -> AffineScheme {
        AffineScheme::parse(&["x", "y"], &["x*y"], 1).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        let f = PrimeField::new(5).unwrap();
        let theta = Jet::from_i64(f, 6, &[vec![0, 0, 1], vec![0, 0, 0, 1]]).unwrap();
        let j = jacobian_matrix(&cusp(), &theta).unwrap();
        assert_eq!(j.get(0, 0), &TruncatedSeries::from_i64s(f, 7, &[0, 0, 0, 0, -3]));
        assert_eq!(j.get(0, 1), &TruncatedSeries::from_i64s(f, 7, &[0, 0, 0, 2]));
        let theta = Jet::from_i64(f, 3, &[vec![0, 1], vec![0]]).unwrap();
        let j = jacobian_matrix(&node(), &theta).unwrap();
        assert!(j.get(0, 0).is_zero());
        assert_eq!(j.get(0, 1), &TruncatedSeries::from_i64s(f, 4, &[0, 1]));
    }

    #[test]
    fn invariant_examples() {
        let f = PrimeField::new(5).unwrap();
        let theta = Jet::from_i64(f, 7, &[vec![0, 0, 1], vec![0, 0, 0, 1]]).unwrap();
        let inv = jet_invariants(&cusp(), &theta).unwrap();
        assert_eq!((inv.exponents.clone(), inv.g, inv.b, inv.e), (vec![3, 8], 4, 1, Some(3)));

        let line = AffineScheme::parse(&["x", "y"], &["x"], 1).unwrap();
        let inv = jet_invariants(&line, &Jet::constant(f, 3, &[0, 2])).unwrap();
        assert_eq!((inv.exponents, inv.b), (vec![0, 4], 1));

        let theta = Jet::from_i64(f, 4, &[vec![0, 1], vec![0]]).unwrap();
        let inv = jet_invariants(&node(), &theta).unwrap();
        assert_eq!((inv.exponents, inv.g, inv.b, inv.e), (vec![1, 5], 2, 1, Some(1)));

        let inv = jet_invariants(&cusp(), &Jet::constant(f, 3, &[0, 0])).unwrap();
        assert!(inv.is_unstable());
    }

    #[test]
    fn arc_examples() {
        let f = PrimeField::new(5).unwrap();
        let arc = vec![
            TruncatedSeries::from_i64s(f, 9, &[0, 0, 1]),
            TruncatedSeries::from_i64s(f, 9, &[0, 0, 0, 1]),
        ];
        let a = arc_invariants(&cusp(), &arc).unwrap();
        assert_eq!(a.exponents, vec![Valuation::Finite(3), Valuation::AtLeast(9)]);
        assert_eq!(a.p_count, 1);

        let line = AffineScheme::parse(&["x", "y"], &["x"], 1).unwrap();
        let c = vec![TruncatedSeries::zero(f, 5), TruncatedSeries::constant(f, 5, 3)];
        assert_eq!(arc_invariants(&line, &c).unwrap().exponents[0], Valuation::Finite(0));

        let origin = vec![TruncatedSeries::zero(f, 5), TruncatedSeries::zero(f, 5)];
        let a = arc_invariants(&cusp(), &origin).unwrap();
        assert_eq!(a.p_count, 0);

        let off = vec![TruncatedSeries::one(f, 5), TruncatedSeries::zero(f, 5)];
        assert!(matches!(arc_invariants(&cusp(), &off), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn stratify_examples() {
        let mut budget = Budget::default();
        let jets = crate::jets::enumerate_jets(&node(), 4, 3, &mut budget).unwrap();
        let strata = stratify(&node(), &jets, 4).unwrap();
        let keys: Vec<Vec<usize>> = strata.keys().map(|k| k.exponents.clone()).collect();
        assert!(keys.contains(&vec![]));
        assert!(keys.contains(&vec![0]));
        assert!(keys.contains(&vec![1]));
        assert_eq!(strata.values().map(Vec::len).sum::<usize>(), jets.len());

        let line = AffineScheme::parse(&["x", "y"], &["x"], 1).unwrap();
        let jets = crate::jets::enumerate_jets(&line, 3, 3, &mut budget).unwrap();
        let strata = stratify(&line, &jets, 3).unwrap();
        assert_eq!(strata.keys().cloned().collect::<Vec<_>>(), vec![StratumKey::new(3, vec![0])]);

        assert!(stratify(&line, &[], 3).unwrap().is_empty());
    }

    #[test]
    fn fiber_examples() {
        let key = StratumKey::new(4, vec![1]);
        let reps = fiber_report(&node(), 4, 2, 3, FiberMode::CompleteIntersection, Some(&key), &mut Budget::default()).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].expected_size, BigUint::from(27u32));
        assert!(reps[0].verdict.passed());

        let line = AffineScheme::parse(&["x", "y"], &["x"], 1).unwrap();
        for l in 0..3 {
            let reps = fiber_report(&line, 3, l, 3, FiberMode::CompleteIntersection, None, &mut Budget::default()).unwrap();
            assert_eq!(reps.len(), 1);
            assert_eq!(reps[0].expected_dimension, 3 - l);
            assert!(reps[0].verdict.passed());
        }

        let axes = AffineScheme::parse(&["x1", "x2", "x3"], &["x1*x2", "x1*x3", "x2*x3"], 1).unwrap();
        let reps = fiber_report(&axes, 4, 2, 2, FiberMode::BStratum, None, &mut Budget::default()).unwrap();
        assert!(!reps.is_empty());
        for r in &reps {
            assert!(r.verdict.passed(), "{r:?}");
        }

        let bad = StratumKey::new(4, vec![0, 1]);
        assert!(matches!(
            fiber_report(&node(), 4, 2, 3, FiberMode::CompleteIntersection, Some(&bad), &mut Budget::default()),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn divisibility_examples() {
        let mut budget = Budget::default();
        let t = divisibility_report(&cusp(), 3, 1..=2, DivisibilityMode::Dimension, &mut budget).unwrap();
        assert_eq!(t.rows[0].count, BigUint::from(15u32));
        assert_eq!(t.rows[0].required_power, 1);
        assert!(t.passed());
        let line = AffineScheme::parse(&["x", "y"], &["x"], 1).unwrap();
        let t = divisibility_report(&line, 5, 0..=4, DivisibilityMode::Equations, &mut budget).unwrap();
        assert!(t.passed());
        assert!(t.to_csv().starts_with("prime,n,count"));
        let axes = AffineScheme::parse(&["x1", "x2", "x3"], &["x1*x2", "x1*x3", "x2*x3"], 1).unwrap();
        assert!(matches!(
            divisibility_report(&axes, 2, 0..=1, DivisibilityMode::Equations, &mut budget),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
