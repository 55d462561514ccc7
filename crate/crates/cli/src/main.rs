//! `jetspace`: jet counts, strata, lifts and zeta functions from the
//! command line. Every command prints one JSON document.

mod output;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use jetspace::jets::{count_jets, AffineScheme, Budget, Jet, DEFAULT_BUDGET};
use jetspace::lifting::{lift_backtracking, lift_dvr, BacktrackOutcome, FreePolicy, LiftOutcome, LiftRequest};
use jetspace::rings::qpoly::rat;
use jetspace::rings::PrimeField;
use jetspace::strata::{fiber_report, stratify, FiberMode, StratumKey};
use jetspace::verify::{self, SuiteReport};
use jetspace::zeta::{
    motivic_series, motivic_zeta, numerical_data, pole_bound_check, poles, reconstruct_motivic, top_from_motivic,
    topological_zeta, BlowupTower, CheckStatus, PoleBoundMode, ResolutionData,
};
use jetspace::{report, Error};

use output::{Failure, Outcome};

#[derive(Parser)]
#[command(name = "jetspace", version, about = "Exact jet-space computations over prime fields")]
struct Cli {
    /// Write the JSON report here instead of standard output. The file
    /// appears only if the command succeeds.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Work limit for enumerations and searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of n-jets over F_p.
    Count(LevelArgs),
    /// Stratum keys of the n-jets and their sizes.
    Strata(LevelArgs),
    /// Fiber cardinalities of truncation maps on each stratum.
    Fibers(FiberArgs),
    /// Lifts a jet to a higher level.
    Lift(LiftArgs),
    /// Zeta functions from resolution data.
    #[command(subcommand)]
    Zeta(ZetaCommand),
    /// Runs a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct LevelArgs {
    /// Scheme file: {"nvars", "vars", "generators", "dim"}.
    scheme: PathBuf,
    #[arg(long)]
    prime: u64,
    #[arg(long)]
    level: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FiberModeArg {
    CompleteIntersection,
    Reduced,
    BStratum,
}

impl From<FiberModeArg> for FiberMode {
    fn from(m: FiberModeArg) -> Self {
        match m {
            FiberModeArg::CompleteIntersection => FiberMode::CompleteIntersection,
            FiberModeArg::Reduced => FiberMode::Reduced,
            FiberModeArg::BStratum => FiberMode::BStratum,
        }
    }
}

#[derive(Args)]
struct FiberArgs {
    #[command(flatten)]
    at: LevelArgs,
    /// Level l of the truncation pi^n_l.
    #[arg(long)]
    truncate: usize,
    #[arg(long, value_enum, default_value = "reduced")]
    mode: FiberModeArg,
    /// Restrict to the stratum with these exponents, e.g. `1` or `1,3`.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    exponents: Option<Vec<usize>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Triangular,
    Backtracking,
}

#[derive(Args)]
struct LiftArgs {
    scheme: PathBuf,
    #[arg(long)]
    prime: u64,
    /// Coefficient lists per variable, lowest power first, e.g. `[[0,1],[0,0,1]]`.
    #[arg(long)]
    jet: String,
    /// Level of the source jet.
    #[arg(long)]
    level: usize,
    /// The lift agrees with the source through this level.
    #[arg(long)]
    agree: usize,
    #[arg(long)]
    target: usize,
    #[arg(long, value_enum, default_value = "triangular")]
    engine: EngineArg,
    /// Choose free coefficients at random from this seed instead of zero.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum ZetaCommand {
    /// Topological zeta function, its poles, and optionally the pole bound.
    Top(TopArgs),
    /// The motivic zeta function as a sum over strata.
    Motivic {
        resolution: PathBuf,
    },
    /// Coefficients of the motivic series with L = q.
    Series {
        resolution: PathBuf,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        order: usize,
    },
    /// Fits the motivic zeta function to contact counts of a scheme.
    Reconstruct(ReconstructArgs),
    /// Numerical data (N, nu) of a blow-up tower.
    Tower {
        tower: PathBuf,
    },
}

#[derive(Args)]
struct TopArgs {
    resolution: PathBuf,
    /// Check the bound for a reduced scheme of pure dimension d.
    #[arg(long, conflicts_with = "equations")]
    dimension: Option<usize>,
    /// Check the bound for an ideal with this many generators.
    #[arg(long)]
    equations: Option<usize>,
}

#[derive(Args)]
struct ReconstructArgs {
    scheme: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    primes: Vec<u64>,
    /// Counts are taken for n = 0..=levels.
    #[arg(long, default_value_t = 10)]
    levels: usize,
    /// Denominator factors `a:N` for (1 - q^a t^N), e.g. `2:2,1:1`.
    #[arg(long, value_delimiter = ',', required = true)]
    template: Vec<String>,
    /// Largest t-degree of the numerator; defaults to levels - 2.
    #[arg(long)]
    degree_bound: Option<usize>,
    /// Largest q-degree of each numerator coefficient; defaults to one
    /// less than the number of primes.
    #[arg(long)]
    q_degree_bound: Option<usize>,
    /// Codimension delta used for the topological specialization.
    #[arg(long)]
    delta: Option<i64>,
    /// Points s, as integers or fractions, at which to specialize.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "delta")]
    at: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of the suite names listed by `--help`.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::SUITES))]
    suite: String,
    /// Seed for the randomized oracle suite.
    #[arg(long, default_value_t = verify::ORACLE_SEED)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut budget = Budget::new(cli.budget);
    let result = run(cli.command, &mut budget);
    output::finish(result, cli.output.as_deref())
}

fn run(command: Command, budget: &mut Budget) -> Result<Outcome, Failure> {
    match command {
        Command::Count(a) => {
            let x = load_scheme(&a.scheme)?;
            let n = count_jets(&x, a.level, a.prime, budget)?;
            Ok(Outcome::ok(json!({ "count": output::integer(&n.to_string()) })))
        }
        Command::Strata(a) => strata(&a, budget),
        Command::Fibers(a) => fibers(&a, budget),
        Command::Lift(a) => lift(&a, budget),
        Command::Zeta(z) => zeta(z, budget),
        Command::Verify(v) => {
            let report = if v.suite == "oracles" {
                let check = verify::oracles(v.seed)?;
                SuiteReport {
                    suite: v.suite.clone(),
                    verdict: check.verdict,
                    checks: vec![check],
                }
            } else {
                verify::run_suite(&v.suite)?
            };
            let passed = report.verdict.passed();
            let mut value = to_value(&report);
            value["seed"] = json!(v.seed);
            Ok(Outcome::verdict(value, passed))
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn load_scheme(path: &Path) -> Result<AffineScheme, Failure> {
    Ok(AffineScheme::from_json(&read(path)?)?)
}

fn load_resolution(path: &Path) -> Result<ResolutionData, Failure> {
    Ok(ResolutionData::from_json(&read(path)?)?)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn strata(a: &LevelArgs, budget: &mut Budget) -> Result<Outcome, Failure> {
    let x = load_scheme(&a.scheme)?;
    let jets = jetspace::jets::enumerate_jets(&x, a.level, a.prime, budget)?;
    let strata = stratify(&x, &jets, a.level)?;
    let rows: Vec<Value> = strata
        .iter()
        .map(|(key, members)| json!({ "exponents": key.exponents, "b": key.b(), "size": members.len() }))
        .collect();
    Ok(Outcome::ok(json!({
        "prime": a.prime,
        "level": a.level,
        "total": jets.len(),
        "strata": rows,
    })))
}

fn fibers(a: &FiberArgs, budget: &mut Budget) -> Result<Outcome, Failure> {
    let x = load_scheme(&a.at.scheme)?;
    let key = a.exponents.clone().map(|e| StratumKey::new(a.at.level, e));
    let reports = fiber_report(&x, a.at.level, a.truncate, a.at.prime, a.mode.into(), key.as_ref(), budget)?;
    let passed = reports.iter().all(|r| r.verdict.passed());
    Ok(Outcome::verdict(
        json!({ "prime": a.at.prime, "reports": to_value(&reports), "verdict": verdict(passed) }),
        passed,
    ))
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn lift(a: &LiftArgs, budget: &mut Budget) -> Result<Outcome, Failure> {
    let x = load_scheme(&a.scheme)?;
    let coords: Vec<Vec<i64>> =
        serde_json::from_str(&a.jet).map_err(|e| Failure::input(format!("--jet: {e}")))?;
    let field = PrimeField::new(a.prime)?;
    let source = Jet::from_i64(field, a.level, &coords)?;
    let req = LiftRequest::new(x, source, a.agree, a.target)?;
    let policy = a.seed.map_or(FreePolicy::Zero, FreePolicy::Random);
    let mut value = match a.engine {
        EngineArg::Triangular => match lift_dvr(&req, policy)? {
            LiftOutcome::Lifted(r) => json!({ "outcome": "lifted", "result": to_value(&r) }),
            LiftOutcome::Infeasible(i) => json!({ "outcome": "infeasible", "condition": to_value(&i) }),
        },
        EngineArg::Backtracking => match lift_backtracking(&req, budget)? {
            BacktrackOutcome::Found(r) => json!({ "outcome": "lifted", "result": to_value(&r) }),
            BacktrackOutcome::NoLift { nodes } => json!({ "outcome": "no-lift", "nodes": nodes }),
            BacktrackOutcome::Exhausted { budget } => return Err(Error::BudgetExceeded { budget }.into()),
        },
    };
    value["policy"] = to_value(&policy);
    Ok(Outcome::ok(value))
}

fn zeta(command: ZetaCommand, budget: &mut Budget) -> Result<Outcome, Failure> {
    match command {
        ZetaCommand::Top(a) => {
            let res = load_resolution(&a.resolution)?;
            let z = topological_zeta(&res)?;
            let pole_list: Vec<Value> = poles(&z)?
                .iter()
                .map(|(p, m)| json!([report::rational_string(p), m]))
                .collect();
            let mut value = json!({ "zeta_top": z.to_string(), "poles": pole_list });
            let mode = match (a.dimension, a.equations) {
                (Some(d), _) => Some(PoleBoundMode::Dimension(d)),
                (None, Some(m)) => Some(PoleBoundMode::Equations(m)),
                (None, None) => None,
            };
            let Some(mode) = mode else {
                return Ok(Outcome::ok(value));
            };
            let delta = usize::try_from(res.delta).map_err(|_| Failure::input("delta must be positive"))?;
            let check = pole_bound_check(&z, delta, mode)?;
            let failed = check.status == CheckStatus::Fail;
            value["pole_bound"] = to_value(&check);
            Ok(Outcome::verdict(value, !failed))
        }
        ZetaCommand::Motivic { resolution } => {
            let expr = motivic_zeta(&load_resolution(&resolution)?)?;
            Ok(Outcome::ok(to_value(&expr)))
        }
        ZetaCommand::Series { resolution, q, order } => {
            PrimeField::new(q)?;
            let expr = motivic_zeta(&load_resolution(&resolution)?)?;
            let coeffs: Vec<Value> = motivic_series(&expr, q, order)?
                .iter()
                .map(|c| output::integer(&c.to_string()))
                .collect();
            Ok(Outcome::ok(json!({ "q": q, "coefficients": coeffs })))
        }
        ZetaCommand::Reconstruct(a) => reconstruct(&a, budget),
        ZetaCommand::Tower { tower } => {
            let t = BlowupTower::from_json(&read(&tower)?)?;
            Ok(Outcome::ok(json!({ "numerical_data": numerical_data(&t)? })))
        }
    }
}

fn parse_template(items: &[String]) -> Result<Vec<(u64, u64)>, Failure> {
    items
        .iter()
        .map(|item| {
            let (a, n) = item
                .split_once(':')
                .ok_or_else(|| Failure::input(format!("template factor {item:?} is not of the form a:N")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|e| Failure::input(format!("template factor {item:?}: {e}")))
            };
            Ok((parse(a)?, parse(n)?))
        })
        .collect()
}

fn parse_point(s: &str) -> Result<(i64, i64), Failure> {
    let bad = |e: std::num::ParseIntError| Failure::input(format!("point {s:?}: {e}"));
    let (a, b) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?),
        None => (s.trim().parse().map_err(bad)?, 1),
    };
    if b == 0 {
        return Err(Failure::input(format!("point {s:?} has a zero denominator")));
    }
    Ok((a, b))
}

fn reconstruct(a: &ReconstructArgs, budget: &mut Budget) -> Result<Outcome, Failure> {
    let x = load_scheme(&a.scheme)?;
    let template = parse_template(&a.template)?;
    let points = a.at.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>, _>>()?;
    let mut counts = BTreeMap::new();
    for &q in &a.primes {
        for n in 0..=a.levels {
            let c = jetspace::jets::contact_count(&x, n, q, budget)?;
            counts.insert((q, n), c.into());
        }
    }
    let bound = a.degree_bound.unwrap_or(a.levels.saturating_sub(2));
    let rec = reconstruct_motivic(&counts, &template, bound, a.q_degree_bound)?;
    let mut value = to_value(&rec);
    if let Some(delta) = a.delta {
        let mut specializations = Vec::new();
        for (num, den) in points {
            let s = rat(num, den);
            let v = top_from_motivic(&rec.zeta, delta, &s)?;
            specializations.push(json!({ "s": report::rational_string(&s), "value": to_value(&v) }));
        }
        value["specializations"] = Value::Array(specializations);
    }
    Ok(Outcome::ok(value))
}
