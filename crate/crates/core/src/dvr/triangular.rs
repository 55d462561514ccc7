//! Row triangularization with a column renumbering.

use super::matrix::SeriesMatrix;

/// `T = A * J * P` where `P` renumbers columns: column `k` of `T` is column
/// `col_perm[k]` of `J`. The first `b` diagonal entries of `T` are exactly
/// `t^{e_i}`, entries below them vanish, row `i < b` has valuations
/// `>= e_i`, and the block of rows and columns past `b` has valuations
/// `>= threshold`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularForm {
    pub a: SeriesMatrix,
    pub t: SeriesMatrix,
    pub col_perm: Vec<usize>,
    pub exponents: Vec<usize>,
    pub threshold: usize,
    /// True when the residual block holds a nonzero entry.
    pub residual_nonzero: bool,
}

impl TriangularForm {
    pub fn b(&self) -> usize {
        self.exponents.len()
    }
}

pub fn triangularize(j: &SeriesMatrix, threshold: usize) -> TriangularForm {
    let (f, m) = (j.field(), j.modulus());
    let (rows, cols) = (j.rows(), j.cols());
    let mut t = j.clone();
    let mut a = SeriesMatrix::identity(f, m, rows);
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut exponents = Vec::new();
    for k in 0..rows.min(cols) {
        let Some((val, pr, pc)) = t.min_valuation_in_block(k, k) else {
            break;
        };
        if val >= threshold {
            break;
        }
        t.swap_rows(k, pr);
        a.swap_rows(k, pr);
        t.swap_cols(k, pc);
        col_perm.swap(k, pc);
        let inv = t.get(k, k).shift_down(val).unit_inverse().expect("exact valuation");
        t.scale_row(k, &inv);
        a.scale_row(k, &inv);
        for i in k + 1..rows {
            let q = t.get(i, k).shift_down(val);
            t.sub_row_multiple(i, k, &q);
            a.sub_row_multiple(i, k, &q);
        }
        exponents.push(val);
    }
    let b = exponents.len();
    let residual_nonzero = (b..rows).any(|i| (b..cols).any(|c| !t.get(i, c).is_zero()));
    TriangularForm {
        a,
        t,
        col_perm,
        exponents,
        threshold,
        residual_nonzero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{PrimeField, TruncatedSeries};

    fn check_shape(j: &SeriesMatrix, tf: &TriangularForm) {
        let mut permuted = SeriesMatrix::zero(j.field(), j.modulus(), j.rows(), j.cols());
        for i in 0..j.rows() {
            for (k, &c) in tf.col_perm.iter().enumerate() {
                permuted.set(i, k, j.get(i, c).clone());
            }
        }
        assert_eq!(tf.a.mul(&permuted).unwrap(), tf.t);
        assert!(tf.a.is_unimodular());
        for (i, &e) in tf.exponents.iter().enumerate() {
            assert_eq!(tf.t.get(i, i), &TruncatedSeries::monomial(j.field(), j.modulus(), 1, e));
            for c in 0..j.cols() {
                assert!(tf.t.get(i, c).valuation().capped() >= e);
            }
            for r in i + 1..j.rows() {
                assert!(tf.t.get(r, i).is_zero());
            }
        }
        let b = tf.b();
        for r in b..j.rows() {
            for c in b..j.cols() {
                assert!(tf.t.get(r, c).valuation().capped() >= tf.threshold.min(j.modulus()));
            }
        }
    }

    #[test]
    fn examples() {
        let f = PrimeField::new(5).unwrap();
        let j = SeriesMatrix::from_i64(f, 6, &[vec![vec![1], vec![0, 1]], vec![vec![0], vec![0, 0, 1]]]).unwrap();
        let tf = triangularize(&j, 3);
        assert_eq!(tf.exponents, vec![0, 2]);
        check_shape(&j, &tf);

        let j = SeriesMatrix::from_i64(f, 6, &[vec![vec![0, 0, 0, 0, 0, 1], vec![0; 7]]]).unwrap();
        let tf = triangularize(&j, 3);
        assert_eq!(tf.b(), 0);
        assert!(tf.residual_nonzero);
        check_shape(&j, &tf);

        let id = SeriesMatrix::identity(f, 4, 3);
        let tf = triangularize(&id, 1);
        assert_eq!(tf.exponents, vec![0, 0, 0]);
    }

    #[test]
    fn renumbers_columns() {
        let f = PrimeField::new(3).unwrap();
        // [[t^2, t], [t, 0]]: pivot (0,1) first
        let j = SeriesMatrix::from_i64(f, 5, &[vec![vec![0, 0, 1], vec![0, 1]], vec![vec![0, 1], vec![0]]]).unwrap();
        let tf = triangularize(&j, 5);
        assert_eq!(tf.col_perm, vec![1, 0]);
        assert_eq!(tf.exponents, vec![1, 1]);
        check_shape(&j, &tf);
    }
}
