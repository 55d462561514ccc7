//! Affine systems `J z = c (mod t^P)` over `F_p[t]/(t^M)`.

use serde::Serialize;

use super::matrix::SeriesMatrix;
use super::triangular::triangularize;
use crate::error::{Error, Result};
use crate::rings::{TruncatedSeries, Valuation};

/// All solutions are `particular + span_F(kernel)`; `dimension` counts free
/// coefficient slots and equals `kernel.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub precision: usize,
    pub particular: Vec<TruncatedSeries>,
    pub kernel: Vec<Vec<TruncatedSeries>>,
    pub dimension: usize,
}

/// The first violated solvability condition of the triangular system: row
/// `row` (1-based) needs order at least `required` but has `actual`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Infeasibility {
    pub row: usize,
    pub required: usize,
    pub actual: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(AffineSolutionSet),
    Infeasible(Infeasibility),
}

impl SolveOutcome {
    pub fn solved(self) -> Option<AffineSolutionSet> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            SolveOutcome::Infeasible(_) => None,
        }
    }
}

pub fn solve_affine(j: &SeriesMatrix, c: &[TruncatedSeries], precision: usize) -> Result<SolveOutcome> {
    let m = j.modulus();
    if precision > m {
        return Err(Error::InvalidInput(format!(
            "precision {precision} exceeds the working modulus {m}"
        )));
    }
    if c.len() != j.rows() {
        return Err(Error::ArityMismatch {
            expected: j.rows(),
            actual: c.len(),
        });
    }
    for s in c {
        if s.field() != j.field() {
            return Err(Error::FieldMismatch {
                left: j.field().modulus(),
                right: s.field().modulus(),
            });
        }
        if s.modulus() != m {
            return Err(Error::ModulusMismatch {
                left: m,
                right: s.modulus(),
            });
        }
    }
    let f = j.field();
    let p = precision;
    let n = j.cols();
    let jp = j.with_modulus(p);
    let cp: Vec<TruncatedSeries> = c.iter().map(|s| s.with_modulus(p)).collect();
    let tf = triangularize(&jp, p);
    let h = tf.a.mul_vec_unchecked(&cp);
    let b = tf.b();

    for (i, hi) in h.iter().enumerate() {
        let required = if i < b { tf.exponents[i] } else { p };
        if hi.valuation().capped() < required {
            return Ok(SolveOutcome::Infeasible(Infeasibility {
                row: i + 1,
                required,
                actual: hi.valuation(),
            }));
        }
    }

    // Back substitution in permuted coordinates w, with z[col_perm[k]] = w[k].
    // `free[k]` holds the free part added to w[k]: for pivot columns the top
    // e_k coefficients, for the other columns every coefficient.
    let back_substitute = |rhs: &[TruncatedSeries], free: &[TruncatedSeries]| -> Vec<TruncatedSeries> {
        let mut w: Vec<TruncatedSeries> = free.to_vec();
        for i in (0..b).rev() {
            let mut r = rhs[i].clone();
            for k in i + 1..n {
                r = r.sub_unchecked(&tf.t.get(i, k).mul_unchecked(&w[k]));
            }
            w[i] = r.shift_down(tf.exponents[i]).add_unchecked(&free[i]);
        }
        let mut z = vec![TruncatedSeries::zero(f, p); n];
        for (k, &col) in tf.col_perm.iter().enumerate() {
            z[col] = w[k].clone();
        }
        z
    };

    let zero_free = vec![TruncatedSeries::zero(f, p); n];
    let particular = back_substitute(&h, &zero_free);

    let zero_rhs = vec![TruncatedSeries::zero(f, p); j.rows()];
    let mut kernel = Vec::new();
    for k in 0..n {
        let first_free = if k < b { p - tf.exponents[k] } else { 0 };
        for s in first_free..p {
            let mut free = zero_free.clone();
            free[k] = TruncatedSeries::monomial(f, p, 1, s);
            kernel.push(back_substitute(&zero_rhs, &free));
        }
    }
    let dimension = kernel.len();
    debug_assert_eq!(
        dimension,
        tf.exponents.iter().sum::<usize>() + (n - b) * p
    );
    Ok(SolveOutcome::Solved(AffineSolutionSet {
        precision: p,
        particular,
        kernel,
        dimension,
    }))
}
