use std::collections::BTreeSet;

use jetspace::corpus;
use jetspace::jets::{count_jets, enumerate_jets, AffineScheme, Budget};
use jetspace::rings::MultiPolynomial;
use jetspace::strata::jet_invariants;

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn enumeration_and_counting_agree() {
    for (name, x) in corpus::schemes() {
        for p in [2, 3] {
            for n in 0..=3 {
                let listed = enumerate_jets(&x, n, p, &mut budget()).unwrap();
                let counted = count_jets(&x, n, p, &mut budget()).unwrap();
                assert_eq!(counted, listed.len().into(), "{name} p={p} n={n}");
            }
        }
    }
}

#[test]
fn every_jet_truncates_into_the_previous_level() {
    for (name, x) in corpus::schemes() {
        for p in [2, 3] {
            let mut previous: BTreeSet<_> = enumerate_jets(&x, 0, p, &mut budget()).unwrap().into_iter().collect();
            for n in 1..=3 {
                let current = enumerate_jets(&x, n, p, &mut budget()).unwrap();
                for j in &current {
                    assert!(previous.contains(&j.truncate(n - 1)), "{name} p={p} n={n}");
                }
                previous = current.into_iter().collect();
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let x = corpus::scheme("axes").unwrap();
    let a = enumerate_jets(&x, 3, 3, &mut budget()).unwrap();
    let b = enumerate_jets(&x, 3, 3, &mut budget()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn smooth_schemes_follow_the_product_formula() {
    let cases: Vec<(AffineScheme, Vec<u64>)> = vec![
        (corpus::scheme("line").unwrap(), vec![2, 3, 5]),
        (corpus::scheme("point").unwrap(), vec![2, 3, 5]),
        (AffineScheme::parse(&["x", "y"], &["y - x^2"], 1).unwrap(), vec![2, 3, 5]),
        (AffineScheme::parse(&["x", "y"], &["x^2 + y^2 - 1"], 1).unwrap(), vec![3, 5, 7]),
        (AffineScheme::parse(&["x", "y", "z"], &["z - x*y", "x - y^3"], 1).unwrap(), vec![2, 3]),
    ];
    for (x, primes) in cases {
        for p in primes {
            let points = count_jets(&x, 0, p, &mut budget()).unwrap();
            for n in 0..=4 {
                let expected = &points * num_traits::pow(num_bigint::BigUint::from(p), n * x.dim());
                assert_eq!(count_jets(&x, n, p, &mut budget()).unwrap(), expected, "p={p} n={n}");
            }
        }
    }
}

#[test]
fn b_never_exceeds_the_codimension() {
    for name in ["cusp", "node", "axes", "line", "point", "double-point", "quadric3", "quadric4"] {
        let x = corpus::scheme(name).unwrap();
        for p in [2, 3] {
            for n in 0..=3 {
                for j in enumerate_jets(&x, n, p, &mut budget()).unwrap() {
                    let inv = jet_invariants(&x, &j).unwrap();
                    assert!(inv.b <= x.codim(), "{name} p={p} {j:?} b={}", inv.b);
                }
            }
        }
    }
}

/// In the full stratum with `n >= max(2 e_r, e)` the next exponent jumps
/// past `n - e_r`.
#[test]
fn full_stratum_exponent_gap() {
    let mut examined = 0;
    for name in ["cusp", "node", "axes", "line", "quadric4"] {
        let x = corpus::scheme(name).unwrap();
        let r = x.codim();
        for p in [2, 3] {
            for n in 1..=4 {
                for j in enumerate_jets(&x, n, p, &mut budget()).unwrap() {
                    let inv = jet_invariants(&x, &j).unwrap();
                    if inv.b != r || r >= x.nvars() {
                        continue;
                    }
                    let er = inv.exponents[r - 1];
                    let e: usize = inv.exponents[..r].iter().sum();
                    if n < (2 * er).max(e) {
                        continue;
                    }
                    examined += 1;
                    assert!(inv.exponents[r] + er > n, "{name} p={p} n={n} {:?}", inv.exponents);
                }
            }
        }
    }
    assert!(examined > 0);
}

/// Adding `f_1 + f_2` and `x_1 f_1` to the generators changes nothing.
#[test]
fn invariants_do_not_depend_on_the_generators() {
    for name in ["cusp", "node", "axes", "plane-line", "quadric3"] {
        let x = corpus::scheme(name).unwrap();
        let gens = x.generators();
        let mut more: Vec<MultiPolynomial> = gens.to_vec();
        let second = gens.get(1).cloned().unwrap_or_else(|| gens[0].clone());
        more.push(gens[0].add(&second));
        more.push(MultiPolynomial::variable(x.nvars(), 0).mul(&gens[0]));
        let y = x.with_generators(more).unwrap();
        for p in [2, 3] {
            for j in enumerate_jets(&x, 3, p, &mut budget()).unwrap() {
                assert_eq!(
                    jet_invariants(&x, &j).unwrap().exponents,
                    jet_invariants(&y, &j).unwrap().exponents,
                    "{name} p={p} {j:?}"
                );
            }
        }
    }
}
