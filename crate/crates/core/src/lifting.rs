//! Lifting jets to higher levels: a constructive solver built on the
//! triangular form of the Jacobian, and an exhaustive backtracking oracle.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dvr::{cokernel_exponents, rank_mod_p, triangularize, Infeasibility};
use crate::error::{Error, Result};
use crate::jets::enumerate::enumerate_jets_fp;
use crate::jets::extend::{extend_jet_fp, verify_jet_fp};
use crate::jets::{AffineScheme, Budget, FpScheme, Jet};
use crate::rings::{Fp, MultiPolynomial, TruncatedSeries, Valuation};
use crate::strata::{jet_invariants_fp, StratumKey, Verdict};

#[derive(Clone, Debug)]
pub struct LiftRequest {
    pub scheme: AffineScheme,
    /// The jet to lift, of level `n_0`.
    pub source: Jet,
    /// The output agrees with the source through this level.
    pub agree: usize,
    pub target: usize,
}

impl LiftRequest {
    pub fn new(scheme: AffineScheme, source: Jet, agree: usize, target: usize) -> Result<Self> {
        if agree > source.level() || source.level() >= target {
            return Err(Error::InvalidInput(format!(
                "need l <= n_0 < target, got l = {agree}, n_0 = {}, target = {target}",
                source.level()
            )));
        }
        if source.nvars() != scheme.nvars() {
            return Err(Error::ArityMismatch {
                expected: scheme.nvars(),
                actual: source.nvars(),
            });
        }
        Ok(LiftRequest {
            scheme,
            source,
            agree,
            target,
        })
    }
}

/// How coefficients not fixed by the equations are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(tag = "policy", content = "seed", rename_all = "kebab-case")]
pub enum FreePolicy {
    #[default]
    Zero,
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Triangular,
    Backtracking,
}

/// The coefficients of `t^level` in the lift. `free[j]` marks coordinates
/// chosen by the policy rather than solved for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelChoice {
    pub level: usize,
    pub coefficients: Vec<Fp>,
    pub free: Vec<bool>,
}

/// Order condition on row `row` (1-based) of the triangularized system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub row: usize,
    pub required: usize,
    pub actual: Valuation,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftResult {
    pub engine: Engine,
    pub jet: Jet,
    pub agree: usize,
    pub trace: Vec<LevelChoice>,
    pub conditions: Vec<ConditionCheck>,
    pub key_before: StratumKey,
    pub key_after: StratumKey,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Lifted(LiftResult),
    Infeasible(Infeasibility),
}

impl LiftOutcome {
    pub fn lifted(self) -> Option<LiftResult> {
        match self {
            LiftOutcome::Lifted(r) => Some(r),
            LiftOutcome::Infeasible(_) => None,
        }
    }
}

fn key_of(x: &FpScheme, r: usize, theta: &Jet) -> StratumKey {
    jet_invariants_fp(x, r, theta).key()
}

/// Lifts with the triangular solver.
///
/// With `a = pi_l(theta)` and `A J(a) P = T` triangular with pivots `t^{e_i}`,
/// every lift is `a + t^{l+1} P w` and row `i` of `A f` has its coefficient
/// of `t^{l+1+e_i+s}` affected by `w_{i,s}` with coefficient one and
/// otherwise only by `w_{j,s}` (`j > i`) and lower coefficients. Rows are
/// therefore solved in descending order, one `s` at a time. The pivots are
/// computed once at modulus `target + 1`.
pub fn lift_dvr(req: &LiftRequest, policy: FreePolicy) -> Result<LiftOutcome> {
    let theta = &req.source;
    let (l, n0, target) = (req.agree, theta.level(), req.target);
    let x = req.scheme.over(theta.field().modulus())?;
    let f = x.field();
    if !verify_jet_fp(&x, theta)? {
        return Err(Error::InvalidInput("the source jet does not lie on the scheme".into()));
    }
    let modulus = target + 1;
    let a = theta.truncate(l).pad(target);
    let jac = x.jacobian(&a.series(modulus), modulus);
    let tf = triangularize(&jac, target - l);
    let m = x.ngens();
    let em = tf.exponents.last().copied().unwrap_or(0);
    if tf.b() != m {
        return Err(Error::HypothesisViolated(format!(
            "the Jacobian has {} invariant factors below t^{}, need all m = {m}",
            tf.b(),
            target - l
        )));
    }
    if em > l || n0 < l + em {
        return Err(Error::HypothesisViolated(format!(
            "need e_m <= l and n_0 >= l + e_m, got e_m = {em}, l = {l}, n_0 = {n0}"
        )));
    }

    let h = tf.a.mul_vec_unchecked(&x.eval(&a.series(modulus), modulus));
    let mut conditions = Vec::with_capacity(m);
    for (i, hi) in h.iter().enumerate() {
        let required = l + 1 + tf.exponents[i];
        let actual = hi.valuation();
        let satisfied = actual.capped() >= required;
        conditions.push(ConditionCheck {
            row: i + 1,
            required,
            actual,
            satisfied,
        });
        if !satisfied {
            return Ok(LiftOutcome::Infeasible(Infeasibility {
                row: i + 1,
                required,
                actual,
            }));
        }
    }

    let nvars = x.nvars();
    let mut coords: Vec<Vec<Fp>> = a.coords().to_vec();
    let mut free = vec![vec![true; nvars]; target + 1];
    for (i, &e) in tf.exponents.iter().enumerate() {
        let var = tf.col_perm[i];
        for level in l + 1..=target.saturating_sub(e) {
            free[level][var] = false;
        }
    }
    let mut rng = match policy {
        FreePolicy::Zero => None,
        FreePolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    if let Some(rng) = rng.as_mut() {
        for level in l + 1..=target {
            for var in 0..nvars {
                if free[level][var] {
                    coords[var][level] = rng.gen_range(0..f.modulus());
                }
            }
        }
    }
    for s in 0..target - l {
        for i in (0..m).rev() {
            let order = l + 1 + tf.exponents[i] + s;
            if order > target {
                continue;
            }
            let current = Jet::new(f, target, coords.clone())?;
            let residual = tf.a.mul_vec_unchecked(&x.eval(&current.series(modulus), modulus));
            let var = tf.col_perm[i];
            coords[var][l + 1 + s] = f.neg(residual[i].coeff(order));
        }
    }

    let lifted = Jet::new(f, target, coords)?;
    check_soundness(&x, theta, l, &lifted)?;
    let trace = (l + 1..=target)
        .map(|level| LevelChoice {
            level,
            coefficients: lifted.layer(level),
            free: free[level].clone(),
        })
        .collect();
    let r = req.scheme.codim();
    Ok(LiftOutcome::Lifted(LiftResult {
        engine: Engine::Triangular,
        key_before: key_of(&x, r, theta),
        key_after: key_of(&x, r, &lifted),
        jet: lifted,
        agree: l,
        trace,
        conditions,
    }))
}

fn check_soundness(x: &FpScheme, theta: &Jet, l: usize, lifted: &Jet) -> Result<()> {
    if !verify_jet_fp(x, lifted)? {
        return Err(Error::ConsistencyCheck("the lift does not lie on the scheme".into()));
    }
    if lifted.truncate(l) != theta.truncate(l) {
        return Err(Error::ConsistencyCheck(format!("the lift does not agree through level {l}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BacktrackOutcome {
    Found(LiftResult),
    /// The whole search space was explored without reaching the target.
    NoLift { nodes: u64 },
    /// The budget ran out first; nothing is claimed.
    Exhausted { budget: u64 },
}

impl BacktrackOutcome {
    pub fn found(self) -> Option<LiftResult> {
        match self {
            BacktrackOutcome::Found(r) => Some(r),
            _ => None,
        }
    }
}

/// Depth-first search from `pi_l(theta)` through the extension sets, each
/// explored in lexicographic order. Returns the first lift found.
pub fn lift_backtracking(req: &LiftRequest, budget: &mut Budget) -> Result<BacktrackOutcome> {
    let theta = &req.source;
    let x = req.scheme.over(theta.field().modulus())?;
    if !verify_jet_fp(&x, theta)? {
        return Err(Error::InvalidInput("the source jet does not lie on the scheme".into()));
    }
    let start = theta.truncate(req.agree);
    let before = budget.used();
    let found = match search(&x, start, req.target, budget) {
        Ok(found) => found,
        Err(Error::BudgetExceeded { budget }) => return Ok(BacktrackOutcome::Exhausted { budget }),
        Err(e) => return Err(e),
    };
    let Some(lifted) = found else {
        return Ok(BacktrackOutcome::NoLift {
            nodes: budget.used() - before,
        });
    };
    check_soundness(&x, theta, req.agree, &lifted)?;
    let r = req.scheme.codim();
    Ok(BacktrackOutcome::Found(LiftResult {
        engine: Engine::Backtracking,
        key_before: key_of(&x, r, theta),
        key_after: key_of(&x, r, &lifted),
        trace: (req.agree + 1..=req.target)
            .map(|level| LevelChoice {
                level,
                coefficients: lifted.layer(level),
                free: vec![false; x.nvars()],
            })
            .collect(),
        jet: lifted,
        agree: req.agree,
        conditions: Vec::new(),
    }))
}

fn search(x: &FpScheme, node: Jet, target: usize, budget: &mut Budget) -> Result<Option<Jet>> {
    budget.tick()?;
    if node.level() == target {
        return Ok(Some(node));
    }
    if let Some(ext) = extend_jet_fp(x, &node) {
        for child in ext.jets() {
            if let Some(found) = search(x, child, target, budget)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

/// Replaces the generators by `rows` random `F_p`-combinations of them,
/// drawn from a seeded generator until the matrix has full rank. Returns
/// the new presentation together with the matrix used.
pub fn recombine(x: &AffineScheme, p: u64, rows: usize, seed: u64) -> Result<(AffineScheme, Vec<Vec<Fp>>)> {
    let field = crate::rings::PrimeField::new(p)?;
    let m = x.ngens();
    if rows > m {
        return Err(Error::InvalidInput(format!("cannot take {rows} independent combinations of {m} generators")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let matrix = loop {
        let g: Vec<Vec<Fp>> = (0..rows)
            .map(|_| (0..m).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if rank_mod_p(field, g.clone()) == rows {
            break g;
        }
    };
    let nvars = x.nvars();
    let gens = matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(x.generators())
                .fold(MultiPolynomial::zero(nvars), |acc, (&c, f)| {
                    acc.add(&MultiPolynomial::constant(nvars, c).mul(f))
                })
        })
        .collect();
    Ok((x.with_generators(gens)?, matrix))
}

/// Exact invariant factors `e_1..e_k` of a jet, without the threshold.
fn leading_exponents(x: &FpScheme, theta: &Jet, k: usize) -> Vec<usize> {
    let m = theta.level() + 1;
    let e = cokernel_exponents(&x.jacobian(&theta.series(m), m));
    e[..k.min(e.len())].to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrontierReport {
    pub exponents: Vec<usize>,
    pub agree: usize,
    pub source_level: usize,
    pub target_level: usize,
    pub prime: u64,
    pub jets: usize,
    pub truncations: usize,
    pub triangular_lifted: usize,
    pub backtracking_lifted: usize,
    /// Source jets on which the engines disagree or either fails.
    pub counterexamples: Vec<Jet>,
    pub verdict: Verdict,
}

impl FrontierReport {
    pub fn success_rate(&self) -> f64 {
        if self.jets == 0 {
            1.0
        } else {
            self.triangular_lifted.min(self.backtracking_lifted) as f64 / self.jets as f64
        }
    }
}

/// Enumerates the jets at level `n_0 = l + e_m` whose leading invariant
/// factors are exactly `exponents` (one per generator) and asks both
/// engines to lift each `l`-truncation to level `n_0 + k`.
///
/// At level `l + e_m` the threshold `g` can equal `e_m`, so the thresholded
/// stratum key would drop the last exponent; the exact values are used
/// instead.
pub fn liftability_frontier(
    x: &AffineScheme,
    exponents: &[usize],
    l: usize,
    p: u64,
    k: usize,
    budget: &mut Budget,
) -> Result<FrontierReport> {
    if exponents.len() != x.ngens() {
        return Err(Error::HypothesisViolated(format!(
            "need one exponent per generator, got {} for m = {}",
            exponents.len(),
            x.ngens()
        )));
    }
    let em = exponents.last().copied().unwrap_or(0);
    if l < em {
        return Err(Error::HypothesisViolated(format!("need l >= e_m = {em}, got l = {l}")));
    }
    if k == 0 {
        return Err(Error::InvalidInput("probe depth must be positive".into()));
    }
    let xp = x.over(p)?;
    let n0 = l + em;
    let target = n0 + k;
    let members: Vec<Jet> = enumerate_jets_fp(&xp, n0, budget)?
        .into_iter()
        .filter(|j| leading_exponents(&xp, j, exponents.len()) == exponents)
        .collect();
    let mut truncations: BTreeMap<Jet, bool> = BTreeMap::new();
    let (mut tri, mut back) = (0, 0);
    let mut counterexamples = Vec::new();
    for theta in &members {
        let req = LiftRequest::new(x.clone(), theta.clone(), l, target)?;
        let ok_tri = matches!(lift_dvr(&req, FreePolicy::Zero)?, LiftOutcome::Lifted(_));
        let key = theta.truncate(l);
        let ok_back = match truncations.get(&key) {
            Some(&b) => b,
            None => {
                let b = matches!(lift_backtracking(&req, budget)?, BacktrackOutcome::Found(_));
                truncations.insert(key, b);
                b
            }
        };
        tri += usize::from(ok_tri);
        back += usize::from(ok_back);
        if !(ok_tri && ok_back) {
            counterexamples.push(theta.clone());
        }
    }
    Ok(FrontierReport {
        exponents: exponents.to_vec(),
        agree: l,
        source_level: n0,
        target_level: target,
        prime: p,
        jets: members.len(),
        truncations: truncations.len(),
        triangular_lifted: tri,
        backtracking_lifted: back,
        verdict: Verdict::from_bool(counterexamples.is_empty()),
        counterexamples,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub level: usize,
    pub prime: u64,
    pub sub_generators: Vec<String>,
    /// Pairs `(theta, alpha)` with matching strata and `(n-g)`-truncations.
    pub pairs: u64,
    pub violations: Vec<Jet>,
    pub verdict: Verdict,
}

/// For every `theta` on `X` whose stratum key has `b` entries (the number of
/// generators of `sub`) and equals its key relative to `sub`, checks that
/// every `alpha` on `sub` with the same key and the same `(n-g)`-truncation
/// lies on `X`.
pub fn membership_transfer_check(
    x: &AffineScheme,
    sub: &AffineScheme,
    n: usize,
    p: u64,
    budget: &mut Budget,
) -> Result<TransferReport> {
    if sub.nvars() != x.nvars() {
        return Err(Error::ArityMismatch {
            expected: x.nvars(),
            actual: sub.nvars(),
        });
    }
    let (xp, mp) = (x.over(p)?, sub.over(p)?);
    let b = sub.ngens();
    let cut = n - crate::strata::threshold(n);
    let x_jets = enumerate_jets_fp(&xp, n, budget)?;
    let sub_jets = enumerate_jets_fp(&mp, n, budget)?;
    let x_set: BTreeSet<&Jet> = x_jets.iter().collect();

    let mut buckets: BTreeMap<(StratumKey, Jet), Vec<&Jet>> = BTreeMap::new();
    for alpha in &sub_jets {
        let key = key_of(&mp, b, alpha);
        if key.b() == b {
            buckets.entry((key, alpha.truncate(cut))).or_default().push(alpha);
        }
    }
    let mut pairs = 0u64;
    let mut violations = BTreeSet::new();
    for theta in &x_jets {
        let key = key_of(&xp, x.codim(), theta);
        if key.b() != b || key_of(&mp, b, theta) != key {
            continue;
        }
        if let Some(alphas) = buckets.get(&(key, theta.truncate(cut))) {
            for alpha in alphas {
                pairs += 1;
                if !x_set.contains(alpha) {
                    violations.insert((*alpha).clone());
                }
            }
        }
    }
    Ok(TransferReport {
        level: n,
        prime: p,
        sub_generators: sub.to_file().generators,
        pairs,
        verdict: Verdict::from_bool(violations.is_empty()),
        violations: violations.into_iter().collect(),
    })
}

/// Evaluates the generators along a jet and returns the order of the first
/// nonvanishing one, used by tests to confirm lifts by hand.
pub fn residual_orders(x: &AffineScheme, theta: &Jet) -> Result<Vec<Valuation>> {
    let xp = x.over(theta.field().modulus())?;
    let m = theta.level() + 1;
    Ok(xp.eval(&theta.series(m), m).iter().map(TruncatedSeries::valuation).collect())
}
