use jetspace::dvr::oracle::{determinantal_check, exhaustive_solve_check, random_matrix, random_unimodular, stacking_check};
use jetspace::dvr::{cokernel_exponents, smith, solve_affine, SeriesMatrix, SolveOutcome};
use jetspace::rings::{PrimeField, TruncatedSeries};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Prime, shape and modulus for the invariance properties.
fn shape() -> impl Strategy<Value = (u64, usize, usize, usize, u64)> {
    (prop::sample::select(vec![3u64, 5]), 1usize..=4, 1usize..=4, 1usize..=6, any::<u64>())
}

fn permute(m: &SeriesMatrix, rng: &mut ChaCha8Rng) -> SeriesMatrix {
    let mut out = m.clone();
    for _ in 0..4 {
        let (a, b) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.rows()));
        out.swap_rows(a, b);
        let (a, b) = (rng.gen_range(0..m.cols()), rng.gen_range(0..m.cols()));
        out.swap_cols(a, b);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_certifies_itself((p, rows, cols, modulus, seed) in shape()) {
        let f = PrimeField::new(p).unwrap();
        let m = random_matrix(&mut ChaCha8Rng::seed_from_u64(seed), f, modulus, rows, cols);
        prop_assert!(smith(&m).certifies(&m));
    }

    #[test]
    fn exponents_are_invariant((p, rows, cols, modulus, seed) in shape()) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, f, modulus, rows, cols);
        let e = smith(&m).exponents;
        let u = random_unimodular(&mut rng, f, modulus, rows);
        let v = random_unimodular(&mut rng, f, modulus, cols);
        let transformed = u.mul(&m).unwrap().mul(&v).unwrap();
        prop_assert_eq!(&smith(&transformed).exponents, &e);
        prop_assert_eq!(&smith(&permute(&m, &mut rng)).exponents, &e);
        prop_assert_eq!(cokernel_exponents(&transformed), cokernel_exponents(&m));
    }

    #[test]
    fn small_matrices_match_the_oracles(
        p in prop::sample::select(vec![2u64, 3]),
        rows in 1usize..=3,
        cols in 1usize..=4,
        modulus in 1usize..=4,
        seed in any::<u64>(),
    ) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, f, modulus, rows, cols);
        prop_assert!(determinantal_check(&m));
        prop_assert!(stacking_check(&m));
        let c: Vec<TruncatedSeries> = (0..rows)
            .map(|_| random_matrix(&mut rng, f, modulus, 1, 1).get(0, 0).clone())
            .collect();
        let precision = rng.gen_range(0..=modulus);
        let check = exhaustive_solve_check(&m, &c, precision);
        prop_assert!(check.passed(), "{:?}", check);
    }

    /// Right-hand sides in the image are always solvable, and the reported
    /// particular solution reproduces them.
    #[test]
    fn images_are_solvable((p, rows, cols, modulus, seed) in shape()) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, f, modulus, rows, cols);
        let z: Vec<TruncatedSeries> = (0..cols)
            .map(|_| random_matrix(&mut rng, f, modulus, 1, 1).get(0, 0).clone())
            .collect();
        let c = m.mul_vec(&z).unwrap();
        match solve_affine(&m, &c, modulus).unwrap() {
            SolveOutcome::Solved(sol) => prop_assert_eq!(m.mul_vec(&sol.particular).unwrap(), c),
            SolveOutcome::Infeasible(why) => prop_assert!(false, "image reported infeasible: {:?}", why),
        }
    }
}
