//! Brute-force cross-checks for the normal forms and the solver. They are
//! independent of the elimination code and are shared by unit tests, the
//! acceptance suite and the `verify` command.

use std::collections::BTreeMap;

use rand::Rng;

use super::matrix::SeriesMatrix;
use super::smith::{cokernel_exponents, smith};
use super::solve::{solve_affine, SolveOutcome};
use crate::rings::{Fp, PrimeField, TruncatedSeries};

/// Determinant by permutation expansion (small matrices only).
pub fn determinant(m: &SeriesMatrix) -> TruncatedSeries {
    let n = m.rows();
    assert_eq!(n, m.cols(), "square matrix required");
    let (f, modulus) = (m.field(), m.modulus());
    let mut total = TruncatedSeries::zero(f, modulus);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut term = TruncatedSeries::one(f, modulus);
        for (i, &c) in p.iter().enumerate() {
            term = term.mul_unchecked(m.get(i, c));
        }
        if parity(p) {
            total = total.sub_unchecked(&term);
        } else {
            total = total.add_unchecked(&term);
        }
    });
    total
}

fn permutations(perm: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// True for odd permutations.
fn parity(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Least valuation of a `k x k` minor, capped at the modulus.
pub fn min_minor_valuation(m: &SeriesMatrix, k: usize) -> usize {
    let mut best = m.modulus();
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let mut sub = SeriesMatrix::zero(m.field(), m.modulus(), k, k);
            for (a, &r) in rs.iter().enumerate() {
                for (b, &c) in cs.iter().enumerate() {
                    sub.set(a, b, m.get(r, c).clone());
                }
            }
            best = best.min(determinant(&sub).valuation().capped());
        }
    }
    best
}

/// Partial sums of the Smith exponents against minors of every size.
pub fn determinantal_check(m: &SeriesMatrix) -> bool {
    let e = smith(m).exponents;
    let mut partial = 0;
    for k in 1..=e.len() {
        partial += e[k - 1];
        if partial.min(m.modulus()) != min_minor_valuation(m, k) {
            return false;
        }
    }
    true
}

/// Cokernel exponents against the Smith form of `J` stacked over
/// `t^M * I`, computed at a larger working modulus and capped at `M`.
pub fn stacking_check(m: &SeriesMatrix) -> bool {
    let modulus = m.modulus();
    let big = 2 * modulus + 1;
    let lifted = m.with_modulus(big);
    let n = m.cols();
    let mut stacked = SeriesMatrix::zero(m.field(), big, m.rows() + n, n);
    for i in 0..m.rows() {
        for j in 0..n {
            stacked.set(i, j, lifted.get(i, j).clone());
        }
    }
    for j in 0..n {
        stacked.set(m.rows() + j, j, TruncatedSeries::monomial(m.field(), big, 1, modulus));
    }
    let via_stack: Vec<usize> = smith(&stacked).exponents.iter().map(|&e| e.min(modulus)).collect();
    via_stack == cokernel_exponents(m)
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: PrimeField, modulus: usize, rows: usize, cols: usize) -> SeriesMatrix {
    let mut out = SeriesMatrix::zero(field, modulus, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            // Bias towards sparse, high-valuation entries so that interesting
            // invariant factors show up.
            let v = rng.gen_range(0..=modulus);
            let coeffs: Vec<Fp> = (0..modulus)
                .map(|k| if k < v { 0 } else { rng.gen_range(0..field.modulus()) })
                .collect();
            out.set(i, j, TruncatedSeries::from_coeffs(field, modulus, &coeffs));
        }
    }
    out
}

pub fn random_unimodular<R: Rng>(rng: &mut R, field: PrimeField, modulus: usize, n: usize) -> SeriesMatrix {
    loop {
        let mut out = SeriesMatrix::zero(field, modulus, n, n);
        for i in 0..n {
            for j in 0..n {
                let coeffs: Vec<Fp> = (0..modulus).map(|_| rng.gen_range(0..field.modulus())).collect();
                out.set(i, j, TruncatedSeries::from_coeffs(field, modulus, &coeffs));
            }
        }
        if out.is_unimodular() {
            return out;
        }
    }
}

/// Number of `z` mod `t^P` with `J z = c` mod `t^P`, by exhaustive search
/// one coefficient layer at a time.
///
/// The layer-`k` coefficient of `J z` is `J_0 z_k` plus a term fixed by the
/// earlier layers, so every layer vector is indexed once by `J_0 w` and each
/// partial solution is extended by exactly the vectors in the matching
/// bucket. Every solution is still visited individually.
pub fn brute_force_count(j: &SeriesMatrix, c: &[TruncatedSeries], precision: usize) -> u64 {
    let f = j.field();
    let (rows, cols) = (j.rows(), j.cols());
    let coef: Vec<Vec<Vec<Fp>>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|col| (0..precision).map(|k| if k < j.modulus() { j.get(i, col).coeff(k) } else { 0 }).collect())
                .collect()
        })
        .collect();
    let target: Vec<Vec<Fp>> = c.iter().map(|s| (0..precision).map(|k| s.coeff(k)).collect()).collect();
    if precision == 0 {
        return 1;
    }
    let p = f.modulus();
    let mut buckets: BTreeMap<Vec<Fp>, Vec<Vec<Fp>>> = BTreeMap::new();
    for mut code in 0..p.pow(cols as u32) {
        let w: Vec<Fp> = (0..cols)
            .map(|_| {
                let d = code % p;
                code /= p;
                d
            })
            .collect();
        let image: Vec<Fp> = (0..rows)
            .map(|i| (0..cols).fold(0, |acc, col| f.add(acc, f.mul(coef[i][col][0], w[col]))))
            .collect();
        buckets.entry(image).or_default().push(w);
    }
    let need = |z: &[Vec<Fp>]| -> Vec<Fp> {
        let k = z.len();
        (0..rows)
            .map(|i| {
                let mut acc = target[i][k];
                for col in 0..cols {
                    for (a, layer) in z.iter().enumerate() {
                        acc = f.sub(acc, f.mul(coef[i][col][k - a], layer[col]));
                    }
                }
                acc
            })
            .collect()
    };
    fn search(
        z: &mut Vec<Vec<Fp>>,
        precision: usize,
        buckets: &BTreeMap<Vec<Fp>, Vec<Vec<Fp>>>,
        need: &dyn Fn(&[Vec<Fp>]) -> Vec<Fp>,
    ) -> u64 {
        let Some(bucket) = buckets.get(&need(z)) else {
            return 0;
        };
        if z.len() + 1 == precision {
            return bucket.len() as u64;
        }
        let mut total = 0;
        for w in bucket {
            z.push(w.clone());
            total += search(z, precision, buckets, need);
            z.pop();
        }
        total
    }
    search(&mut Vec::with_capacity(precision), precision, &buckets, &need)
}

/// Outcome of comparing `solve_affine` with exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveCheck {
    pub brute_force_count: u64,
    pub reported_count: u64,
    pub sound: bool,
    pub complete: bool,
}

impl SolveCheck {
    pub fn passed(&self) -> bool {
        self.sound && self.complete && self.brute_force_count == self.reported_count
    }
}

/// Searches all `z` mod `t^P` and compares with the reported solution set:
/// the counts must agree, every reported vector must solve its equation and
/// the span of the kernel must reach every brute-force solution.
pub fn exhaustive_solve_check(j: &SeriesMatrix, c: &[TruncatedSeries], precision: usize) -> SolveCheck {
    let f = j.field();
    let jp = j.with_modulus(precision);
    let cp: Vec<TruncatedSeries> = c.iter().map(|s| s.with_modulus(precision)).collect();
    let brute = brute_force_count(j, c, precision);
    let outcome = solve_affine(j, c, precision).expect("well-formed system");
    match outcome {
        SolveOutcome::Infeasible(_) => SolveCheck {
            brute_force_count: brute,
            reported_count: 0,
            sound: true,
            complete: brute == 0,
        },
        SolveOutcome::Solved(sol) => {
            let zero = vec![TruncatedSeries::zero(f, precision); j.rows()];
            let sound = jp.mul_vec_unchecked(&sol.particular) == cp
                && sol.kernel.iter().all(|k| jp.mul_vec_unchecked(k) == zero);
            // Every solution minus the particular one must lie in the span;
            // with p^dim distinct combinations and independence this means
            // the counts agree and the span has full size.
            let rank = kernel_rank(f, &sol.kernel, precision);
            let independent = rank == sol.kernel.len();
            let reported = (f.modulus() as u128).pow(sol.dimension as u32);
            let complete = independent && brute as u128 == reported;
            SolveCheck {
                brute_force_count: brute,
                reported_count: reported.min(u64::MAX as u128) as u64,
                sound,
                complete,
            }
        }
    }
}

fn kernel_rank(field: PrimeField, kernel: &[Vec<TruncatedSeries>], precision: usize) -> usize {
    let rows: Vec<Vec<Fp>> = kernel
        .iter()
        .map(|v| {
            v.iter()
                .flat_map(|s| (0..precision).map(move |k| s.coeff(k)))
                .collect()
        })
        .collect();
    super::matrix::rank_mod_p(field, rows)
}
