//! Principalization data: blow-up towers and resolved divisor data.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{json_error, Error, Result};
use crate::rings::LaurentPolynomialL;
use crate::strata::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupStep {
    /// 1-based indices of the earlier exceptional divisors containing the
    /// center.
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub mu: u64,
    #[serde(rename = "dimC")]
    pub dim_c: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupTower {
    pub delta: u64,
    pub steps: Vec<BlowupStep>,
}

impl BlowupTower {
    pub fn from_json(text: &str) -> Result<Self> {
        let tower: Self = serde_json::from_str(text).map_err(json_error)?;
        tower.check()?;
        Ok(tower)
    }

    pub fn check(&self) -> Result<()> {
        for (i, step) in self.steps.iter().enumerate() {
            if let Some(&bad) = step.s.iter().find(|&&j| j == 0 || j > i) {
                return Err(Error::InvalidInput(format!(
                    "step {}: divisor index {bad} is not among 1..{i}",
                    i + 1
                )));
            }
            if step.s.iter().collect::<BTreeSet<_>>().len() != step.s.len() {
                return Err(Error::InvalidInput(format!("step {}: repeated divisor index", i + 1)));
            }
            if step.mu == 0 {
                return Err(Error::InvalidInput(format!("step {}: mu must be at least one", i + 1)));
            }
            if step.dim_c >= self.delta {
                return Err(Error::InvalidInput(format!(
                    "step {}: center dimension {} must be below {}",
                    i + 1,
                    step.dim_c,
                    self.delta
                )));
            }
        }
        Ok(())
    }
}

/// `(N_j, nu_j)` for each exceptional divisor of the tower, in order.
pub fn numerical_data(tower: &BlowupTower) -> Result<Vec<(u64, u64)>> {
    tower.check()?;
    let delta = tower.delta;
    let mut out: Vec<(u64, u64)> = Vec::with_capacity(tower.steps.len());
    for step in &tower.steps {
        let n: u64 = step.s.iter().map(|&j| out[j - 1].0).sum::<u64>() + step.mu;
        let nu: u64 = step.s.iter().map(|&j| out[j - 1].1).sum::<u64>() + delta
            - step.s.len() as u64
            - step.dim_c;
        if delta * n < nu {
            return Err(Error::ConsistencyCheck(format!(
                "recursion produced delta N - nu < 0 for (N, nu) = ({n}, {nu})"
            )));
        }
        out.push((n, nu));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Divisor {
    #[serde(rename = "N")]
    pub n: i64,
    pub nu: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    /// 1-based divisor indices.
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub euler: i64,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "class_serde")]
    pub class: Option<LaurentPolynomialL>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionData {
    pub delta: i64,
    pub divisors: Vec<Divisor>,
    pub strata: Vec<Stratum>,
}

mod class_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<LaurentPolynomialL>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Option<Vec<(i64, i64)>> = match v {
            None => None,
            Some(p) => Some(
                p.terms()
                    .map(|(e, c)| {
                        i64::try_from(c)
                            .map(|c| (e, c))
                            .map_err(|_| serde::ser::Error::custom("class coefficient exceeds 64 bits"))
                    })
                    .collect::<std::result::Result<_, _>>()?,
            ),
        };
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<LaurentPolynomialL>, D::Error> {
        let pairs: Option<Vec<(i64, i64)>> = Option::deserialize(d)?;
        Ok(pairs.map(|ps| LaurentPolynomialL::from_pairs(ps.into_iter().map(|(e, c)| (e, BigInt::from(c))))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IssueKind {
    /// Malformed indices or subsets.
    Structure,
    /// `N_j >= 1`, `nu_j >= 1` or `delta N_j - nu_j >= 0` fails.
    Numerical,
    /// A class does not specialize to its Euler number at `L = 1`.
    Class,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationIssue {
    pub kind: IssueKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
    pub verdict: Verdict,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    /// Issues that matter when only Euler numbers are used.
    pub fn topological_issues(&self) -> impl Iterator<Item = &ValidationIssue> {
        self.issues.iter().filter(|i| i.kind != IssueKind::Class)
    }
}

impl ResolutionData {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("resolution data serializes")
    }

    pub fn has_classes(&self) -> bool {
        self.strata.iter().all(|s| s.class.is_some())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let mut push = |kind, message: String| issues.push(ValidationIssue { kind, message });
        if self.delta < 1 {
            push(IssueKind::Structure, format!("delta = {} must be positive", self.delta));
        }
        for (i, d) in self.divisors.iter().enumerate() {
            let j = i + 1;
            if d.n < 1 {
                push(IssueKind::Numerical, format!("E_{j}: N = {} must be at least 1", d.n));
            }
            if d.nu < 1 {
                push(IssueKind::Numerical, format!("E_{j}: nu = {} must be at least 1", d.nu));
            }
            let a = self.delta * d.n - d.nu;
            if a < 0 {
                push(
                    IssueKind::Numerical,
                    format!("E_{j}: delta N - nu = {} * {} - {} = {a} is negative", self.delta, d.n, d.nu),
                );
            }
        }
        let mut seen = BTreeSet::new();
        for s in &self.strata {
            let set: BTreeSet<usize> = s.j.iter().copied().collect();
            if set.len() != s.j.len() {
                push(IssueKind::Structure, format!("J = {:?} repeats an index", s.j));
            }
            if let Some(&bad) = set.iter().find(|&&j| j == 0 || j > self.divisors.len()) {
                push(IssueKind::Structure, format!("J = {:?} names a missing divisor {bad}", s.j));
            }
            if !seen.insert(set) {
                push(IssueKind::Structure, format!("J = {:?} appears twice", s.j));
            }
            if let Some(c) = &s.class {
                let at_one = c.eval_at_one();
                if at_one != BigInt::from(s.euler) {
                    push(
                        IssueKind::Class,
                        format!("J = {:?}: class {c} gives {at_one} at L = 1, euler is {}", s.j, s.euler),
                    );
                }
            }
        }
        let verdict = Verdict::from_bool(issues.is_empty());
        ValidationReport { issues, verdict }
    }

    /// `(N_j, delta N_j - nu_j)` for the divisors in a stratum.
    pub(crate) fn factors(&self, j: &[usize]) -> Vec<(i64, i64)> {
        j.iter()
            .map(|&k| {
                let d = self.divisors[k - 1];
                (d.n, self.delta * d.n - d.nu)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(delta: u64, steps: &[(&[usize], u64, u64)]) -> BlowupTower {
        BlowupTower {
            delta,
            steps: steps
                .iter()
                .map(|&(s, mu, dim_c)| BlowupStep { s: s.to_vec(), mu, dim_c })
                .collect(),
        }
    }

    #[test]
    fn numerical_data_examples() {
        assert_eq!(numerical_data(&tower(3, &[(&[], 1, 0)])).unwrap(), vec![(1, 3)]);
        assert_eq!(numerical_data(&tower(3, &[(&[], 1, 0), (&[1], 1, 0)])).unwrap(), vec![(1, 3), (2, 5)]);
        assert_eq!(numerical_data(&tower(5, &[(&[], 4, 2)])).unwrap(), vec![(4, 3)]);
        assert!(numerical_data(&tower(3, &[(&[1], 1, 0)])).is_err());
        assert!(numerical_data(&tower(3, &[(&[], 0, 0)])).is_err());
        assert!(numerical_data(&tower(3, &[(&[], 1, 3)])).is_err());
    }

    #[test]
    fn tower_json() {
        let t = BlowupTower::from_json(r#"{"delta": 3, "steps": [{"S": [], "mu": 1, "dimC": 0}]}"#).unwrap();
        assert_eq!(numerical_data(&t).unwrap(), vec![(1, 3)]);
        assert!(matches!(BlowupTower::from_json("{\"delta\": 3,"), Err(Error::Parse { .. })));
    }

    fn data(delta: i64, divisors: &[(i64, i64)], strata: Vec<Stratum>) -> ResolutionData {
        ResolutionData {
            delta,
            divisors: divisors.iter().map(|&(n, nu)| Divisor { n, nu }).collect(),
            strata,
        }
    }

    #[test]
    fn validation_examples() {
        assert!(data(1, &[(1, 1)], vec![]).validate().passed());
        assert!(data(3, &[(2, 4)], vec![]).validate().passed());
        let bad = data(3, &[(1, 5)], vec![]).validate();
        assert!(!bad.passed());
        assert_eq!(bad.issues[0].kind, IssueKind::Numerical);

        let wrong_class = Stratum {
            j: vec![1],
            euler: 2,
            class: Some(LaurentPolynomialL::l()),
        };
        let r = data(1, &[(1, 1)], vec![wrong_class]).validate();
        assert_eq!(r.issues.len(), 1);
        assert_eq!(r.topological_issues().count(), 0);

        let dup = vec![
            Stratum { j: vec![1], euler: 1, class: None },
            Stratum { j: vec![1], euler: 1, class: None },
        ];
        assert!(!data(1, &[(1, 1)], dup).validate().passed());
    }

    #[test]
    fn resolution_json_round_trip() {
        let text = r#"{"delta": 1, "divisors": [{"N": 1, "nu": 1}],
            "strata": [{"J": [], "euler": 0, "class": [[1, 1], [0, -1]]}, {"J": [1], "euler": 1, "class": [[0, 1]]}]}"#;
        let r = ResolutionData::from_json(text).unwrap();
        assert!(r.has_classes());
        assert!(r.validate().passed());
        assert_eq!(ResolutionData::from_json(&r.to_json()).unwrap(), r);
        assert!(ResolutionData::from_json(r#"{"delta": 1, "divisors": [], "strata": [], "x": 1}"#).is_err());
    }
}
