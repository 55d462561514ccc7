//! Named verification suites.
//!
//! Each suite runs a fixed set of checks on the built-in corpus and reports
//! one PASS/FAIL line per check. The `acceptance` suite runs all of them.
//! Every expected value is pinned here rather than recomputed by the code
//! under test.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus;
use crate::dvr::oracle::{determinantal_check, exhaustive_solve_check, random_matrix, stacking_check};
use crate::dvr::smith;
use crate::error::{Error, Result};
use crate::jets::count::count_jets_plain;
use crate::jets::{contact_count, contact_count_brute, count_jets, enumerate_jets, Budget, Jet};
use crate::lifting::{liftability_frontier, membership_transfer_check, FrontierReport};
use crate::rings::{PrimeField, QPoly, RationalFunctionS, TruncatedSeries, Valuation};
use crate::strata::{
    arc_invariants, divisibility_report, fiber_report, jet_invariants, DivisibilityMode, FiberMode, StratumKey,
    Verdict,
};
use crate::zeta::{
    motivic_series, motivic_zeta, pole_bound_check, poles, reconstruct_motivic, top_from_motivic, topological_zeta,
    CheckStatus, PoleBoundMode, Reconstruction, TopValue,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub title: String,
    pub verdict: Verdict,
    pub details: Vec<String>,
    /// Wall-clock measurements, kept out of serialized reports so that
    /// they stay byte-identical between runs.
    #[serde(skip)]
    pub timings: Vec<String>,
}

impl Check {
    fn new(id: &str, title: &str, ok: bool, details: Vec<String>) -> Self {
        Check {
            id: id.to_string(),
            title: title.to_string(),
            verdict: Verdict::from_bool(ok),
            details,
            timings: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    fn timed(mut self, label: &str, start: Instant) -> Self {
        self.timings.push(elapsed(label, start));
        self
    }

    /// `PASS 3: fiber cardinalities`.
    pub fn line(&self) -> String {
        let v = if self.passed() { "PASS" } else { "FAIL" };
        format!("{v} {}: {}", self.id, self.title)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

pub const SUITES: &[&str] = &[
    "theorem8-cusp",
    "theorem8-node",
    "theorem4",
    "fibers",
    "liftability",
    "prop6a",
    "transfer",
    "zeta-example",
    "reconstruction",
    "reconstruction-split",
    "contact-identity",
    "oracles",
    "acceptance",
];

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    let checks = match name {
        "theorem8-cusp" => vec![theorem8_cusp()?],
        "theorem8-node" => vec![theorem8_node()?],
        "theorem4" => vec![theorem4()?],
        "fibers" => vec![fibers()?],
        "liftability" => vec![liftability()?],
        "prop6a" => vec![prop6a()?],
        "transfer" => vec![transfer()?],
        "zeta-example" => vec![zeta_example()?],
        "reconstruction" => vec![reconstruction(LITERAL_PRIMES)?],
        "reconstruction-split" => vec![reconstruction(SPLIT_PRIMES)?],
        "contact-identity" => vec![contact_identity()?],
        "oracles" => vec![oracles(ORACLE_SEED)?],
        "acceptance" => acceptance()?,
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown suite {name:?}; known suites: {}",
                SUITES.join(", ")
            )))
        }
    };
    let verdict = Verdict::from_bool(checks.iter().all(Check::passed));
    Ok(SuiteReport {
        suite: name.to_string(),
        checks,
        verdict,
    })
}

/// Criteria 1 to 10 in order. Criterion 8 runs on the literal prime set.
pub fn acceptance() -> Result<Vec<Check>> {
    let c1 = {
        let (a, b) = (theorem8_cusp()?, theorem8_node()?);
        let mut details = a.details;
        details.extend(b.details);
        let mut c = Check::new("1", "dimension divisibility on the cusp and V(xy)", a.verdict.passed() && b.verdict.passed(), details);
        c.timings = a.timings.into_iter().chain(b.timings).collect();
        c
    };
    Ok(vec![
        c1,
        renumber(theorem4()?, "2"),
        renumber(fibers()?, "3"),
        renumber(liftability()?, "4"),
        renumber(prop6a()?, "5"),
        renumber(transfer()?, "6"),
        renumber(zeta_example()?, "7"),
        renumber(reconstruction(LITERAL_PRIMES)?, "8"),
        renumber(contact_identity()?, "9"),
        renumber(oracles(ORACLE_SEED)?, "10"),
    ])
}

fn renumber(mut c: Check, id: &str) -> Check {
    c.id = id.to_string();
    c
}

fn budget() -> Budget {
    Budget::default()
}

fn elapsed(label: &str, start: Instant) -> String {
    format!("{label} took {} ms", start.elapsed().as_millis())
}

fn divisibility(name: &str, primes: &[u64], max_n: usize, mode: DivisibilityMode) -> Result<(bool, Vec<String>)> {
    let x = corpus::scheme(name)?;
    let mut ok = true;
    let mut details = Vec::new();
    for &p in primes {
        let table = divisibility_report(&x, p, 0..=max_n, mode, &mut budget())?;
        // Required power pinned independently: both criteria ask for p^n.
        for row in &table.rows {
            let pinned = row.n;
            let divides = (&row.count % num_traits::pow(BigUint::from(p), pinned)).is_zero();
            ok &= divides && row.required_power == pinned && row.verdict.passed();
            details.push(format!(
                "{name} p={p} n={} count={} p^{pinned} divides: {divides}",
                row.n, row.count
            ));
        }
    }
    Ok((ok, details))
}

pub fn theorem8_cusp() -> Result<Check> {
    let start = Instant::now();
    let (ok, details) = divisibility("cusp", &[3, 5], 6, DivisibilityMode::Dimension)?;
    Ok(Check::new("theorem8-cusp", "p^n divides #L_n(cusp), p in {3,5}, n <= 6", ok, details).timed("cusp table", start))
}

pub fn theorem8_node() -> Result<Check> {
    let start = Instant::now();
    let (ok, details) = divisibility("node", &[2, 3], 6, DivisibilityMode::Dimension)?;
    Ok(Check::new("theorem8-node", "p^n divides #L_n(V(xy)), p in {2,3}, n <= 6", ok, details).timed("node table", start))
}

pub fn theorem4() -> Result<Check> {
    let (ok, details) = divisibility("plane-line", &[2, 3], 5, DivisibilityMode::Equations)?;
    Ok(Check::new(
        "theorem4",
        "p^n divides #L_n(V(x1x2, x1x3)), p in {2,3}, n <= 5",
        ok,
        details,
    ))
}

/// Every fiber of `pi^n_l` inside the stratum must have exactly `size`
/// elements, and the stratum must be nonempty.
fn fiber_case(name: &str, key: StratumKey, l: usize, p: u64, size: BigUint) -> Result<(bool, String)> {
    let x = corpus::scheme(name)?;
    let n = key.level;
    let reports = fiber_report(&x, n, l, p, FiberMode::CompleteIntersection, Some(&key), &mut budget())?;
    let ok = reports.len() == 1
        && reports[0].image_points > 0
        && reports[0]
            .fiber_histogram
            .keys()
            .all(|&s| BigUint::from(s) == size);
    let histogram = reports
        .first()
        .map(|r| format!("{:?}", r.fiber_histogram))
        .unwrap_or_else(|| "empty stratum".into());
    Ok((ok, format!("{name} stratum {:?} n={n} l={l} p={p}: expected {size}, fiber sizes {histogram}", key.exponents)))
}

pub fn fibers() -> Result<Check> {
    let mut ok = true;
    let mut details = Vec::new();
    for l in [2, 3] {
        let (o, d) = fiber_case("node", StratumKey::new(4, vec![1]), l, 3, BigUint::from(3u32).pow((4 - l + 1) as u32))?;
        ok &= o;
        details.push(d);
    }
    let (o, d) = fiber_case("cusp", StratumKey::new(7, vec![3]), 4, 3, BigUint::from(729u32))?;
    ok &= o;
    details.push(d);
    Ok(Check::new("fibers", "fiber cardinalities on the node and cusp strata", ok, details))
}

fn frontier_ok(r: &FrontierReport) -> bool {
    r.jets > 0 && r.triangular_lifted == r.jets && r.backtracking_lifted == r.jets && r.counterexamples.is_empty()
}

fn frontier_line(name: &str, r: &FrontierReport) -> String {
    format!(
        "{name} e={:?} l={} p={} levels {}->{}: {} jets, triangular {} lifted, backtracking {} lifted",
        r.exponents, r.agree, r.prime, r.source_level, r.target_level, r.jets, r.triangular_lifted, r.backtracking_lifted
    )
}

pub fn liftability() -> Result<Check> {
    let node = liftability_frontier(&corpus::scheme("node")?, &[1], 1, 3, 4, &mut budget())?;
    let cusp = liftability_frontier(&corpus::scheme("cusp")?, &[3], 3, 5, 3, &mut budget())?;
    Ok(Check::new(
        "liftability",
        "every stratum jet lifts and both engines agree",
        frontier_ok(&node) && frontier_ok(&cusp),
        vec![frontier_line("node", &node), frontier_line("cusp", &cusp)],
    ))
}

pub fn prop6a() -> Result<Check> {
    let x = corpus::scheme("axes")?;
    let r = 2;
    let mut ok = true;
    let mut details = Vec::new();
    for p in [2, 3] {
        for n in 0..=4 {
            let jets = enumerate_jets(&x, n, p, &mut budget())?;
            let mut worst = 0;
            for j in &jets {
                worst = worst.max(jet_invariants(&x, j)?.b);
            }
            ok &= worst <= r && !jets.is_empty();
            details.push(format!("axes p={p} n={n}: {} jets, largest b = {worst}", jets.len()));
        }
    }
    Ok(Check::new("prop6a", "b <= r = 2 for every jet of the axes union", ok, details))
}

pub fn transfer() -> Result<Check> {
    let x = corpus::scheme("axes")?;
    let gens = x.generators();
    let mut ok = true;
    let mut pairs = 0;
    let mut details = Vec::new();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let sub = x.with_generators(vec![gens[a].clone(), gens[b].clone()])?;
        let report = membership_transfer_check(&x, &sub, 4, 2, &mut budget())?;
        ok &= report.violations.is_empty();
        pairs += report.pairs;
        details.push(format!(
            "M = ({}) n=4 p=2: {} pairs, {} violations",
            report.sub_generators.join(", "),
            report.pairs,
            report.violations.len()
        ));
    }
    // A check that examined nothing would pass vacuously.
    ok &= pairs > 0;
    Ok(Check::new("transfer", "membership transfer on the axes union", ok, details))
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `(4+s)/(2+s)^2`.
pub fn quadric3_top() -> RationalFunctionS {
    RationalFunctionS::new(QPoly::from_i64s(&[4, 1]), QPoly::from_i64s(&[4, 4, 1])).expect("nonzero denominator")
}

/// `(10+3s)/((5+2s)(2+s))`.
pub fn quadric4_top() -> RationalFunctionS {
    RationalFunctionS::new(QPoly::from_i64s(&[10, 3]), QPoly::from_i64s(&[10, 9, 2])).expect("nonzero denominator")
}

pub fn zeta_example() -> Result<Check> {
    let mut ok = true;
    let mut details = Vec::new();

    let z3 = topological_zeta(&corpus::resolution("quadric3")?)?;
    // (8+2s)/((4+2s)(2+s)) is the unreduced form of the same function.
    let unreduced = RationalFunctionS::new(QPoly::from_i64s(&[8, 2]), QPoly::from_i64s(&[8, 8, 2]))?;
    let p3 = poles(&z3)?;
    let b3 = pole_bound_check(&z3, 3, PoleBoundMode::Dimension(1))?;
    ok &= z3 == quadric3_top() && z3 == unreduced;
    ok &= p3 == vec![(rat(-2, 1), 2)];
    ok &= b3.status == CheckStatus::Pass && b3.attained && b3.bound == rat(-2, 1);
    details.push(format!("delta=3: Z_top = {z3}, poles {:?}, bound {} attained {}", pole_list(&p3), b3.bound, b3.attained));

    let alt = topological_zeta(&corpus::resolution("quadric3-alt")?)?;
    ok &= alt == z3;
    details.push(format!("delta=3 second resolution: Z_top = {alt}"));

    let z4 = topological_zeta(&corpus::resolution("quadric4")?)?;
    let p4 = poles(&z4)?;
    let b4 = pole_bound_check(&z4, 4, PoleBoundMode::Dimension(2))?;
    ok &= z4 == quadric4_top();
    ok &= p4.first().map(|p| &p.0) == Some(&rat(-5, 2));
    ok &= b4.status == CheckStatus::Pass && b4.bound == rat(-5, 2);
    details.push(format!("delta=4: Z_top = {z4}, poles {:?}, bound {} attained {}", pole_list(&p4), b4.bound, b4.attained));
    Ok(Check::new("zeta-example", "topological zeta of the quadric examples", ok, details))
}

fn pole_list(p: &[(BigRational, usize)]) -> Vec<String> {
    p.iter().map(|(r, k)| format!("{r} (x{k})")).collect()
}

/// The primes named for the end-to-end reconstruction.
pub const LITERAL_PRIMES: &[u64] = &[3, 5, 7, 11, 13];
/// Primes `q = 1 mod 4`, where `x2^2 + x3^2` splits into two lines.
pub const SPLIT_PRIMES: &[u64] = &[5, 13, 17, 29, 37, 41];
pub const RECONSTRUCTION_LEVELS: usize = 10;
/// `(a, N)` pairs of the denominator `(1 - q^2 t^2)(1 - q t)`.
pub const QUADRIC_TEMPLATE: &[(u64, u64)] = &[(2, 2), (1, 1)];
pub const SPECIALIZATION_POINTS: &[(i64, i64)] = &[(0, 1), (1, 1), (-1, 2), (1, 2)];

/// Contact counts `#X_n(F_q)` of a corpus scheme for `n = 0..=max_n`.
pub fn contact_table(name: &str, primes: &[u64], max_n: usize) -> Result<BTreeMap<(u64, usize), BigInt>> {
    let x = corpus::scheme(name)?;
    let mut out = BTreeMap::new();
    for &q in primes {
        for n in 0..=max_n {
            out.insert((q, n), BigInt::from(contact_count(&x, n, q, &mut budget())?));
        }
    }
    Ok(out)
}

/// Counts, reconstruction and specialization for the quadric example.
pub struct QuadricPipeline {
    pub reconstruction: Reconstruction,
    pub values: Vec<(BigRational, TopValue)>,
}

pub fn quadric_pipeline(primes: &[u64]) -> Result<QuadricPipeline> {
    let counts = contact_table("quadric3", primes, RECONSTRUCTION_LEVELS)?;
    // The per-prime fit already cuts at the smallest consistent degree, so
    // the largest bound that keeps two surplus coefficients suffices.
    let rec = reconstruct_motivic(&counts, QUADRIC_TEMPLATE, RECONSTRUCTION_LEVELS - 2, None)?;
    let values = SPECIALIZATION_POINTS
        .iter()
        .map(|&(a, b)| {
            let s = rat(a, b);
            top_from_motivic(&rec.zeta, 3, &s).map(|v| (s, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadricPipeline {
        reconstruction: rec,
        values,
    })
}

pub fn reconstruction(primes: &[u64]) -> Result<Check> {
    let start = Instant::now();
    let title = format!("reconstruction from counts at q in {primes:?}, n <= {RECONSTRUCTION_LEVELS}");
    let pipeline = match quadric_pipeline(primes) {
        Ok(p) => p,
        Err(e @ Error::BudgetExceeded { .. }) => return Err(e),
        Err(e) => {
            return Ok(Check::new(
                "reconstruction",
                &title,
                false,
                vec![format!("pipeline stopped: {e}")],
            )
            .timed("pipeline", start))
        }
    };
    let expected = quadric3_top();
    let mut ok = true;
    let mut details = vec![format!("Z = {}", pipeline.reconstruction.zeta)];
    for (s, v) in &pipeline.values {
        let want = expected.eval(s).expect("sample points avoid the pole");
        let got = v.value().cloned();
        ok &= got.as_ref() == Some(&want);
        details.push(format!("s={s}: got {got:?}, want {want}"));
    }
    let at_pole = top_from_motivic(&pipeline.reconstruction.zeta, 3, &rat(-2, 1))?;
    ok &= at_pole == TopValue::Pole;
    details.push(format!("s=-2: {at_pole:?}"));
    Ok(Check::new("reconstruction", &title, ok, details).timed("pipeline", start))
}

/// Schemes, primes and the largest level for the counting identities.
const IDENTITY_CASES: &[(&str, &[u64], usize)] = &[
    ("cusp", &[2, 3, 5], 6),
    ("node", &[2, 3], 6),
    ("axes", &[2, 3], 4),
    ("plane-line", &[2, 3], 4),
    ("line", &[2, 3, 5], 5),
    ("point", &[2, 3, 5], 6),
    ("double-point", &[2, 3, 5], 6),
    ("quadric3", &[3, 5], 6),
    ("quadric4", &[3, 5], 4),
];

/// Largest number of ambient jets enumerated by the brute-force contact count.
const BRUTE_CONTACT_CAP: u128 = 200_000;
/// Largest level at which the closed-form jet count is compared with plain
/// enumeration.
const PLAIN_COUNT_LEVEL: usize = 4;

/// Resolutions whose motivic series are compared with contact counts.
const SERIES_CASES: &[(&str, &[u64], usize)] = &[
    ("line-point", &[2, 3, 5], 6),
    ("quadric3", &[5, 13], 6),
    ("quadric3-alt", &[5, 13], 6),
    ("quadric4", &[3, 5], 5),
];

pub fn contact_identity() -> Result<Check> {
    let mut ok = true;
    let mut details = Vec::new();
    for &(name, primes, max_n) in IDENTITY_CASES {
        let x = corpus::scheme(name)?;
        for &p in primes {
            let ambient = BigUint::from(p).pow(x.nvars() as u32);
            let counts: Vec<BigUint> = (0..=max_n)
                .map(|n| count_jets(&x, n, p, &mut budget()))
                .collect::<Result<_>>()?;
            let mut brute_checked = 0;
            for n in 1..=max_n {
                let identity = BigInt::from(&ambient * &counts[n - 1]) - BigInt::from(counts[n].clone());
                let reported = BigInt::from(contact_count(&x, n, p, &mut budget())?);
                ok &= identity == reported;
                let slots = (x.nvars() * (n + 1)) as u32;
                if (p as u128).checked_pow(slots).is_some_and(|t| t <= BRUTE_CONTACT_CAP) {
                    let brute = BigInt::from(contact_count_brute(&x, n, p, &mut budget())?);
                    ok &= brute == identity;
                    brute_checked += 1;
                }
            }
            let mut plain_checked = 0;
            for (n, c) in counts.iter().enumerate().take(PLAIN_COUNT_LEVEL + 1) {
                ok &= count_jets_plain(&x, n, p, &mut budget())? == *c;
                plain_checked += 1;
            }
            details.push(format!(
                "{name} p={p} n<={max_n}: identity holds; {brute_checked} levels against ambient enumeration, {plain_checked} jet counts against plain enumeration"
            ));
        }
    }
    for &(res_name, primes, max_n) in SERIES_CASES {
        let res = corpus::resolution(res_name)?;
        let scheme = corpus::resolution_scheme(res_name).expect("corpus resolution has a scheme");
        let expr = motivic_zeta(&res)?;
        let table = contact_table(scheme, primes, max_n)?;
        for &q in primes {
            let series = motivic_series(&expr, q, max_n)?;
            let counts: Vec<BigInt> = (0..=max_n).map(|n| table[&(q, n)].clone()).collect();
            let same = series == counts;
            ok &= same;
            details.push(format!("{res_name} q={q}: motivic series matches contact counts: {same}"));
        }
    }
    Ok(Check::new("contact-identity", "contact counts against jet counts and motivic series", ok, details))
}

pub const ORACLE_SEED: u64 = 20_240_601;
/// Random matrices drawn per shape, modulus and prime.
const ORACLE_SAMPLES: usize = 2;
const ARC_MODULUS: usize = 20;
const ARC_LEVELS: usize = 8;

pub fn oracles(seed: u64) -> Result<Check> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut cases = 0;
    let mut details = Vec::new();
    for p in [2, 3] {
        let f = PrimeField::new(p)?;
        for rows in 1..=3 {
            for cols in 1..=4 {
                for modulus in 1..=4 {
                    for sample in 0..ORACLE_SAMPLES {
                        let m = random_matrix(&mut rng, f, modulus, rows, cols);
                        // Half of the right-hand sides are images, so that
                        // feasible systems are well represented.
                        let c = if sample % 2 == 0 {
                            let z: Vec<TruncatedSeries> =
                                (0..cols).map(|_| random_series(&mut rng, f, modulus)).collect();
                            m.mul_vec(&z)?
                        } else {
                            (0..rows).map(|_| random_series(&mut rng, f, modulus)).collect()
                        };
                        let solve = exhaustive_solve_check(&m, &c, modulus);
                        let good = smith(&m).certifies(&m) && determinantal_check(&m) && stacking_check(&m) && solve.passed();
                        if !good {
                            details.push(format!("p={p} {rows}x{cols} M={modulus}: mismatch {solve:?}\n{m}"));
                        }
                        ok &= good;
                        cases += 1;
                    }
                }
            }
        }
    }
    details.push(format!("{cases} random systems up to 3x4, M <= 4, p in {{2,3}}"));
    let matrices_time = elapsed("matrices", start);
    let (arcs_ok, arc_details) = truncation_stability()?;
    ok &= arcs_ok;
    details.extend(arc_details);
    let mut check = Check::new("oracles", "normal forms, solver and truncation stability", ok, details);
    check.timings.push(matrices_time);
    Ok(check)
}

fn random_series(rng: &mut ChaCha8Rng, f: PrimeField, modulus: usize) -> TruncatedSeries {
    let coeffs: Vec<u64> = (0..modulus).map(|_| rng.gen_range(0..f.modulus())).collect();
    TruncatedSeries::from_coeffs(f, modulus, &coeffs)
}

/// Polynomial arcs on corpus schemes: scheme, prime and a builder taking
/// the parameter `t` as a series.
type ArcBuilder = fn(&TruncatedSeries) -> Vec<TruncatedSeries>;

fn arc_cases() -> Vec<(&'static str, u64, ArcBuilder)> {
    fn pow(t: &TruncatedSeries, k: usize) -> TruncatedSeries {
        (0..k).fold(TruncatedSeries::one(t.field(), t.modulus()), |acc, _| acc.mul(t).expect("same ring"))
    }
    fn zero(t: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::zero(t.field(), t.modulus())
    }
    fn scaled(t: &TruncatedSeries, c: u64, k: usize) -> TruncatedSeries {
        pow(t, k).scale(c % t.field().modulus())
    }
    vec![
        ("cusp", 3, |t| vec![pow(t, 2), pow(t, 3)]),
        ("cusp", 5, |t| {
            let u = t.add(&pow(t, 2)).expect("same ring");
            vec![pow(&u, 2), pow(&u, 3)]
        }),
        ("cusp", 5, |t| vec![pow(t, 4), pow(t, 6)]),
        ("node", 3, |t| vec![pow(t, 1), zero(t)]),
        ("node", 2, |t| vec![zero(t), pow(t, 3).add(&pow(t, 4)).expect("same ring")]),
        ("axes", 3, |t| vec![zero(t), pow(t, 2), zero(t)]),
        ("plane-line", 3, |t| vec![zero(t), pow(t, 1), pow(t, 2)]),
        ("plane-line", 2, |t| vec![pow(t, 2), zero(t), zero(t)]),
        ("line", 5, |t| vec![zero(t), pow(t, 1)]),
        ("double-point", 3, |t| vec![zero(t)]),
        ("quadric3", 5, |t| vec![zero(t), pow(t, 1), scaled(t, 2, 1)]),
        ("quadric3", 5, |t| vec![zero(t), pow(t, 3), scaled(t, 3, 3)]),
        ("quadric4", 3, |t| vec![zero(t), pow(t, 1), pow(t, 1), pow(t, 1)]),
        ("quadric4", 5, |t| vec![zero(t), pow(t, 2), scaled(t, 2, 2), zero(t)]),
    ]
}

/// `e_i(pi_n(gamma)) = min(e_i(gamma), n + 1)` for `n <= 8`.
fn truncation_stability() -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    for (name, p, build) in arc_cases() {
        let x = corpus::scheme(name)?;
        let f = PrimeField::new(p)?;
        let t = TruncatedSeries::monomial(f, ARC_MODULUS, 1, 1);
        let gamma = build(&t);
        let arc = arc_invariants(&x, &gamma)?;
        let mut mismatches = 0;
        for n in 0..=ARC_LEVELS {
            let coords = gamma.iter().map(|s| (0..=n).map(|k| s.coeff(k)).collect()).collect();
            let jet = Jet::new(f, n, coords)?;
            let got = jet_invariants(&x, &jet)?.exponents;
            let want: Vec<usize> = arc
                .exponents
                .iter()
                .map(|v| match v {
                    Valuation::Finite(e) => (*e).min(n + 1),
                    Valuation::AtLeast(_) => n + 1,
                })
                .collect();
            if got != want {
                mismatches += 1;
            }
        }
        ok &= mismatches == 0;
        details.push(format!(
            "{name} p={p} arc exponents {:?}: {mismatches} mismatches for n <= {ARC_LEVELS}",
            arc.exponents
        ));
    }
    Ok((ok, details))
}

/// Wall-clock limits named by the acceptance criteria.
pub const DIVISIBILITY_TIME_LIMIT: Duration = Duration::from_secs(60);
pub const RECONSTRUCTION_TIME_LIMIT: Duration = Duration::from_secs(600);

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn unknown_suite_is_an_input_error() {
        assert!(matches!(run_suite("nope"), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn expected_functions_are_the_stated_ones() {
        assert_eq!(quadric3_top().to_string(), "(4+s)/(2+s)^2");
        assert_eq!(quadric4_top().eval(&BigRational::zero()), Some(BigRational::one()));
    }
}
