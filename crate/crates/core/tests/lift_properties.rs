use std::collections::{BTreeMap, BTreeSet};

use jetspace::corpus;
use jetspace::jets::{enumerate_jets, verify_jet, Budget, Jet};
use jetspace::lifting::{lift_backtracking, lift_dvr, BacktrackOutcome, FreePolicy, LiftOutcome, LiftRequest};
use jetspace::strata::jet_invariants;
use jetspace::Error;

fn budget() -> Budget {
    Budget::default()
}

/// Runs both engines on every jet of the given levels and every admissible
/// agreement level; returns the number of instances where the triangular
/// engine's preconditions held.
fn engines_agree(name: &str, p: u64, levels: std::ops::RangeInclusive<usize>, extra: usize) -> usize {
    let x = corpus::scheme(name).unwrap();
    let mut instances = 0;
    for n0 in levels {
        for theta in enumerate_jets(&x, n0, p, &mut budget()).unwrap() {
            for l in 0..=n0 {
                let req = LiftRequest::new(x.clone(), theta.clone(), l, n0 + extra).unwrap();
                let outcome = match lift_dvr(&req, FreePolicy::Random(n0 as u64 * 31 + l as u64)) {
                    Err(Error::HypothesisViolated(_)) => continue,
                    other => other.unwrap(),
                };
                instances += 1;
                let back = lift_backtracking(&req, &mut budget()).unwrap();
                assert!(!matches!(back, BacktrackOutcome::Exhausted { .. }));
                let found = matches!(back, BacktrackOutcome::Found(_));
                match outcome {
                    LiftOutcome::Lifted(r) => {
                        assert!(found, "{name} p={p} {theta:?} l={l}: only the triangular engine lifted");
                        assert_eq!(r.jet.level(), n0 + extra);
                        assert!(verify_jet(&x, &r.jet).unwrap());
                        assert_eq!(r.jet.truncate(l), theta.truncate(l));
                        // Exponents below the source threshold persist.
                        let b = r.key_before.exponents.len();
                        assert_eq!(&r.key_after.exponents[..b], &r.key_before.exponents[..], "{name} {theta:?}");
                    }
                    LiftOutcome::Infeasible(_) => assert!(!found, "{name} p={p} {theta:?} l={l}"),
                }
            }
        }
    }
    instances
}

#[test]
fn engines_agree_on_the_node() {
    assert!(engines_agree("node", 2, 1..=4, 2) > 0);
    assert!(engines_agree("node", 3, 1..=3, 2) > 0);
}

#[test]
fn engines_agree_on_the_cusp() {
    assert!(engines_agree("cusp", 2, 2..=5, 2) > 0);
    assert!(engines_agree("cusp", 3, 2..=5, 1) > 0);
}

/// Leading exponents of the Jacobian without any threshold.
fn leading(x: &jetspace::jets::AffineScheme, j: &Jet) -> Vec<usize> {
    jet_invariants(x, j).unwrap().exponents[..x.ngens()].to_vec()
}

/// Over each arc-liftable `l`-jet of a stratum with `e_m <= l`, the
/// liftable `(l+1)`-jets form a set of size `p^{N-m}`. Liftability of an
/// `(l+1)`-jet is witnessed by a level `l+1+e_m` jet of the same stratum.
#[test]
fn lifts_one_level_up_form_an_affine_space() {
    // In characteristic 2 the cusp only has even exponents.
    for (name, p, top) in [("node", 2u64, 3), ("node", 3, 3), ("cusp", 2, 4), ("cusp", 3, 3)] {
        let x = corpus::scheme(name).unwrap();
        let fiber = p.pow((x.nvars() - x.ngens()) as u32);
        let mut nonempty = 0;
        for em in 0..=top {
            for l in em..=em + 1 {
                let deep = l + 1 + em;
                let mut images: BTreeMap<Jet, BTreeSet<Jet>> = BTreeMap::new();
                for j in enumerate_jets(&x, deep, p, &mut budget()).unwrap() {
                    if leading(&x, &j) == [em] {
                        images.entry(j.truncate(l)).or_default().insert(j.truncate(l + 1));
                    }
                }
                nonempty += usize::from(!images.is_empty());
                for (base, above) in &images {
                    assert_eq!(above.len() as u64, fiber, "{name} p={p} e={em} l={l} over {base:?}");
                }
            }
        }
        // Smooth points alone give two nonempty cases; require singular ones too.
        assert!(nonempty >= 4, "{name} p={p}: only {nonempty} nonempty strata");
    }
}
