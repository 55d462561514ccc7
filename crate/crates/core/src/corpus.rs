//! The built-in test schemes and resolution data.
//!
//! The same objects ship as JSON under `data/`; a test keeps the two in sync.

use crate::error::{Error, Result};
use crate::jets::AffineScheme;
use crate::rings::LaurentPolynomialL;
use crate::zeta::{BlowupStep, BlowupTower, Divisor, ResolutionData, Stratum};

/// Name, variables, generators and declared dimension.
const SCHEMES: &[(&str, &[&str], &[&str], usize)] = &[
    ("cusp", &["x", "y"], &["y^2 - x^3"], 1),
    ("node", &["x", "y"], &["x*y"], 1),
    ("axes", &["x1", "x2", "x3"], &["x1*x2", "x1*x3", "x2*x3"], 1),
    // A plane and a line meeting at the origin; the dimension is the larger one.
    ("plane-line", &["x1", "x2", "x3"], &["x1*x2", "x1*x3"], 2),
    ("line", &["x", "y"], &["x"], 1),
    ("point", &["x"], &["x"], 0),
    ("double-point", &["x"], &["x^2"], 0),
    ("quadric3", &["x1", "x2", "x3"], &["x1", "x2^2 + x3^2"], 1),
    ("quadric4", &["x1", "x2", "x3", "x4"], &["x1", "x2^2 + x3^2 + x4^2"], 2),
];

pub fn scheme_names() -> Vec<&'static str> {
    SCHEMES.iter().map(|s| s.0).collect()
}

pub fn scheme(name: &str) -> Result<AffineScheme> {
    let (_, vars, gens, dim) = SCHEMES
        .iter()
        .find(|s| s.0 == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown corpus scheme {name:?}")))?;
    AffineScheme::parse(vars, gens, *dim)
}

pub fn schemes() -> Vec<(&'static str, AffineScheme)> {
    scheme_names()
        .into_iter()
        .map(|n| (n, scheme(n).expect("corpus schemes parse")))
        .collect()
}

/// A polynomial in `L` from its coefficients, constant term first.
fn class(coeffs: &[i64]) -> Option<LaurentPolynomialL> {
    Some(LaurentPolynomialL::from_pairs(
        coeffs.iter().enumerate().map(|(e, &c)| (e as i64, c.into())),
    ))
}

fn stratum(j: &[usize], euler: i64, coeffs: &[i64]) -> Stratum {
    Stratum {
        j: j.to_vec(),
        euler,
        class: class(coeffs),
    }
}

fn data(delta: i64, divisors: &[(i64, i64)], strata: Vec<Stratum>) -> ResolutionData {
    ResolutionData {
        delta,
        divisors: divisors.iter().map(|&(n, nu)| Divisor { n, nu }).collect(),
        strata,
    }
}

pub const RESOLUTION_NAMES: &[&str] = &["line-point", "quadric3", "quadric3-alt", "quadric4"];

/// Resolution data paired with the corpus scheme it resolves.
pub fn resolution_scheme(name: &str) -> Option<&'static str> {
    match name {
        "line-point" => Some("point"),
        "quadric3" | "quadric3-alt" => Some("quadric3"),
        "quadric4" => Some("quadric4"),
        _ => None,
    }
}

/// Whether the data is defined over every `F_q` (odd `q`) or needs
/// `q = 1 mod 4` because a blow-up center splits only there.
pub fn needs_split_prime(name: &str) -> bool {
    name == "quadric3-alt"
}

pub fn resolution(name: &str) -> Result<ResolutionData> {
    let r = match name {
        "line-point" => data(1, &[(1, 1)], vec![stratum(&[], 0, &[-1, 1]), stratum(&[1], 1, &[1])]),
        // Blow up the origin, then the line where the first exceptional
        // divisor meets the strict transform of {x2^2 + x3^2 = 0}, then the
        // two lines x2 = +-i x3. See docs/quadric-resolution.md.
        "quadric3" => data(
            3,
            &[(1, 3), (2, 4), (1, 2)],
            vec![
                stratum(&[], 0, &[1, -2, 0, 1]),
                stratum(&[1], 1, &[0, 0, 1]),
                stratum(&[2], 0, &[-2, 1, 1]),
                stratum(&[3], 0, &[-2, 0, 2]),
                stratum(&[1, 2], 2, &[1, 1]),
                stratum(&[2, 3], 4, &[2, 2]),
            ],
        ),
        // Blow up one line of the pair, then the strict transform of the other.
        "quadric3-alt" => data(
            3,
            &[(1, 2), (1, 2)],
            vec![
                stratum(&[], 0, &[1, -2, 0, 1]),
                stratum(&[1], 1, &[-1, 1, 1]),
                stratum(&[2], 0, &[-1, 0, 1]),
                stratum(&[1, 2], 2, &[1, 1]),
            ],
        ),
        "quadric4" => data(
            4,
            &[(1, 4), (2, 5), (1, 2)],
            vec![
                stratum(&[], 0, &[0, 0, -1, 0, 1]),
                stratum(&[1], 1, &[0, 0, 0, 1]),
                stratum(&[2], 1, &[-1, 0, 1, 1]),
                stratum(&[3], 0, &[-1, -1, 1, 1]),
                stratum(&[1, 2], 3, &[1, 1, 1]),
                stratum(&[2, 3], 4, &[1, 2, 1]),
            ],
        ),
        _ => return Err(Error::InvalidInput(format!("unknown resolution {name:?}"))),
    };
    Ok(r)
}

pub const TOWER_NAMES: &[&str] = &["point-blowup", "quadric3", "quadric4"];

pub fn tower(name: &str) -> Result<BlowupTower> {
    let step = |s: &[usize], mu, dim_c| BlowupStep { s: s.to_vec(), mu, dim_c };
    let t = match name {
        "point-blowup" => BlowupTower {
            delta: 3,
            steps: vec![step(&[], 1, 0)],
        },
        "quadric3" => BlowupTower {
            delta: 3,
            steps: vec![step(&[], 1, 0), step(&[1], 1, 1), step(&[], 1, 1)],
        },
        "quadric4" => BlowupTower {
            delta: 4,
            steps: vec![step(&[], 1, 0), step(&[1], 1, 2), step(&[], 1, 2)],
        },
        _ => return Err(Error::InvalidInput(format!("unknown tower {name:?}"))),
    };
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{numerical_data, topological_zeta};

    #[test]
    fn everything_parses_and_validates() {
        assert_eq!(schemes().len(), SCHEMES.len());
        for name in RESOLUTION_NAMES {
            let r = resolution(name).unwrap();
            assert!(r.validate().passed(), "{name}: {:?}", r.validate());
            assert!(r.has_classes());
            scheme(resolution_scheme(name).unwrap()).unwrap();
        }
    }

    #[test]
    fn towers_reproduce_divisor_data() {
        for (t, r) in [("quadric3", "quadric3"), ("quadric4", "quadric4")] {
            let nd = numerical_data(&tower(t).unwrap()).unwrap();
            let divs: Vec<(u64, u64)> = resolution(r)
                .unwrap()
                .divisors
                .iter()
                .map(|d| (d.n as u64, d.nu as u64))
                .collect();
            assert_eq!(nd, divs);
        }
        assert_eq!(numerical_data(&tower("point-blowup").unwrap()).unwrap(), vec![(1, 3)]);
    }

    #[test]
    fn both_quadric_resolutions_agree() {
        let a = topological_zeta(&resolution("quadric3").unwrap()).unwrap();
        let b = topological_zeta(&resolution("quadric3-alt").unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(4+s)/(2+s)^2");
        let c = topological_zeta(&resolution("quadric4").unwrap()).unwrap();
        assert_eq!(c.to_string(), "(10+3s)/((5+2s)(2+s))");
    }
}
