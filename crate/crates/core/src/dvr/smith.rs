//! Smith normal form over the truncated discrete valuation ring.

use super::matrix::SeriesMatrix;
use crate::rings::TruncatedSeries;

/// `U * J * V` is diagonal with entries `t^e` (exponent `M` standing for
/// the zero class). Both transforms are unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: SeriesMatrix,
    pub v: SeriesMatrix,
    pub exponents: Vec<usize>,
}

impl SmithDecomposition {
    /// Recomputes `U * J * V` and compares it to the claimed diagonal.
    pub fn certifies(&self, j: &SeriesMatrix) -> bool {
        let Ok(uj) = self.u.mul(j) else { return false };
        let Ok(d) = uj.mul(&self.v) else { return false };
        let (f, m) = (j.field(), j.modulus());
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                let expected = if r == c {
                    TruncatedSeries::monomial(f, m, 1, self.exponents[r])
                } else {
                    TruncatedSeries::zero(f, m)
                };
                if d.get(r, c) != &expected {
                    return false;
                }
            }
        }
        self.u.is_unimodular() && self.v.is_unimodular()
    }
}

pub fn smith(j: &SeriesMatrix) -> SmithDecomposition {
    let (f, m) = (j.field(), j.modulus());
    let (rows, cols) = (j.rows(), j.cols());
    let mut d = j.clone();
    let mut u = SeriesMatrix::identity(f, m, rows);
    let mut v = SeriesMatrix::identity(f, m, cols);
    let k_max = rows.min(cols);
    let mut exponents = Vec::with_capacity(k_max);
    for k in 0..k_max {
        let Some((val, pr, pc)) = d.min_valuation_in_block(k, k) else {
            exponents.resize(k_max, m);
            break;
        };
        d.swap_rows(k, pr);
        u.swap_rows(k, pr);
        d.swap_cols(k, pc);
        v.swap_cols(k, pc);
        let unit = d.get(k, k).shift_down(val);
        let inv = unit.unit_inverse().expect("pivot has exact valuation");
        d.scale_row(k, &inv);
        u.scale_row(k, &inv);
        for i in k + 1..rows {
            let q = d.get(i, k).shift_down(val);
            d.sub_row_multiple(i, k, &q);
            u.sub_row_multiple(i, k, &q);
        }
        for c in k + 1..cols {
            let q = d.get(k, c).shift_down(val);
            d.sub_col_multiple(c, k, &q);
            v.sub_col_multiple(c, k, &q);
        }
        exponents.push(val);
    }
    SmithDecomposition { u, v, exponents }
}

/// Invariant factors of `(F[t]/(t^M))^N` modulo the row span of `J`:
/// the Smith exponents padded with `M` up to length `N`.
pub fn cokernel_exponents(j: &SeriesMatrix) -> Vec<usize> {
    let mut e = smith(j).exponents;
    e.resize(j.cols(), j.modulus());
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::PrimeField;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn smith_examples() {
        let id = SeriesMatrix::identity(f(5), 4, 2);
        assert_eq!(smith(&id).exponents, vec![0, 0]);
        let z = SeriesMatrix::zero(f(5), 4, 2, 3);
        assert_eq!(smith(&z).exponents, vec![4, 4]);
        let j = SeriesMatrix::from_i64(
            f(5),
            5,
            &[vec![vec![0, 1], vec![0, 0, 1]], vec![vec![0, 0, 1], vec![0, 0, 0, 1]]],
        )
        .unwrap();
        let s = smith(&j);
        assert_eq!(s.exponents, vec![1, 5]);
        assert!(s.certifies(&j));
    }

    #[test]
    fn cokernel_examples() {
        let j = SeriesMatrix::from_i64(f(5), 4, &[vec![vec![0, 1]]]).unwrap();
        assert_eq!(cokernel_exponents(&j), vec![1]);
        let j = SeriesMatrix::from_i64(f(5), 8, &[vec![vec![0, 0, 0, 1], vec![0, 0, 0, 0, 1]]]).unwrap();
        assert_eq!(cokernel_exponents(&j), vec![3, 8]);
        assert_eq!(cokernel_exponents(&SeriesMatrix::identity(f(5), 6, 2)), vec![0, 0]);
    }

    #[test]
    fn pivot_with_nontrivial_unit() {
        // [[2t + t^2, 3], [t, 1 + t]] over F_7, modulus 4
        let j = SeriesMatrix::from_i64(
            f(7),
            4,
            &[vec![vec![0, 2, 1], vec![3]], vec![vec![0, 1], vec![1, 1]]],
        )
        .unwrap();
        let s = smith(&j);
        assert!(s.certifies(&j));
        assert_eq!(s.exponents[0], 0);
    }
}
