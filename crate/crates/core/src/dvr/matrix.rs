//! Dense matrices over `F_p[t]/(t^M)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{Fp, PrimeField, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    field: PrimeField,
    modulus: usize,
    rows: usize,
    cols: usize,
    entries: Vec<TruncatedSeries>,
}

impl SeriesMatrix {
    pub fn zero(field: PrimeField, modulus: usize, rows: usize, cols: usize) -> Self {
        SeriesMatrix {
            field,
            modulus,
            rows,
            cols,
            entries: vec![TruncatedSeries::zero(field, modulus); rows * cols],
        }
    }

    pub fn identity(field: PrimeField, modulus: usize, n: usize) -> Self {
        let mut m = Self::zero(field, modulus, n, n);
        for i in 0..n {
            m.entries[i * n + i] = TruncatedSeries::one(field, modulus);
        }
        m
    }

    /// Builds a matrix from rows of series, which must share field and modulus.
    pub fn from_rows(field: PrimeField, modulus: usize, rows: Vec<Vec<TruncatedSeries>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::ArityMismatch {
                    expected: ncols,
                    actual: row.len(),
                });
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field.modulus(),
                        right: s.field().modulus(),
                    });
                }
                if s.modulus() != modulus {
                    return Err(Error::ModulusMismatch {
                        left: modulus,
                        right: s.modulus(),
                    });
                }
                entries.push(s);
            }
        }
        Ok(SeriesMatrix {
            field,
            modulus,
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Convenience constructor: each entry is a list of integer
    /// coefficients, lowest degree first.
    pub fn from_i64(field: PrimeField, modulus: usize, rows: &[Vec<Vec<i64>>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| TruncatedSeries::from_i64s(field, modulus, c))
                    .collect()
            })
            .collect();
        Self::from_rows(field, modulus, rows)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: TruncatedSeries) {
        debug_assert_eq!(value.modulus(), self.modulus);
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[TruncatedSeries] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        self.check_ring(other.field, other.modulus)?;
        let mut out = Self::zero(self.field, self.modulus, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.mul_unchecked(other.get(k, j));
                    out.entries[i * other.cols + j].add_assign_unchecked(&prod);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        if v.len() != self.cols {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        for s in v {
            self.check_ring(s.field(), s.modulus())?;
        }
        Ok(self.mul_vec_unchecked(v))
    }

    pub(crate) fn mul_vec_unchecked(&self, v: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
        (0..self.rows)
            .map(|i| {
                let mut acc = TruncatedSeries::zero(self.field, self.modulus);
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc.add_assign_unchecked(&a.mul_unchecked(x));
                    }
                }
                acc
            })
            .collect()
    }

    fn check_ring(&self, field: PrimeField, modulus: usize) -> Result<()> {
        if field != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: field.modulus(),
            });
        }
        if modulus != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: modulus,
            });
        }
        Ok(())
    }

    /// Same entries read in `F_p[t]/(t^M')`, truncating or zero-padding.
    pub fn with_modulus(&self, modulus: usize) -> Self {
        SeriesMatrix {
            field: self.field,
            modulus,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|s| s.with_modulus(modulus)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.field, self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &TruncatedSeries) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.entries[idx] = self.entries[idx].mul_unchecked(c);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &TruncatedSeries) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.entries[idx] = self.entries[idx].mul_unchecked(c);
        }
    }

    /// `row[target] -= c * row[source]`.
    pub fn sub_row_multiple(&mut self, target: usize, source: usize, c: &TruncatedSeries) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = self.get(source, j).mul_unchecked(c);
            let idx = target * self.cols + j;
            self.entries[idx] = self.entries[idx].sub_unchecked(&delta);
        }
    }

    /// `col[target] -= c * col[source]`.
    pub fn sub_col_multiple(&mut self, target: usize, source: usize, c: &TruncatedSeries) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = self.get(i, source).mul_unchecked(c);
            let idx = i * self.cols + target;
            self.entries[idx] = self.entries[idx].sub_unchecked(&delta);
        }
    }

    /// Position of the entry of least valuation in the block
    /// `rows >= r0, cols >= c0`, ties broken by lowest (row, col).
    pub(crate) fn min_valuation_in_block(&self, r0: usize, c0: usize) -> Option<(usize, usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in r0..self.rows {
            for j in c0..self.cols {
                if let crate::rings::Valuation::Finite(v) = self.get(i, j).valuation() {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        best
    }

    /// Constant-term matrix over `F_p`.
    pub fn constant_terms(&self) -> Vec<Vec<Fp>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).coeff(0)).collect())
            .collect()
    }

    /// A square matrix is invertible over `F_p[t]/(t^M)` iff its reduction
    /// mod `t` is invertible over `F_p`.
    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols
            && (self.modulus == 0 || rank_mod_p(self.field, self.constant_terms()) == self.rows)
    }
}

/// Rank of a matrix over `F_p` by Gaussian elimination.
pub fn rank_mod_p(field: PrimeField, mut m: Vec<Vec<Fp>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = field.inv(m[rank][c]).expect("nonzero pivot");
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = field.mul(m[r][c], inv);
                for k in c..cols {
                    let d = field.mul(f, m[rank][k]);
                    m[r][k] = field.sub(m[r][k], d);
                }
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Display for SeriesMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_and_row_ops() {
        let f = PrimeField::new(5).unwrap();
        let a = SeriesMatrix::from_i64(f, 3, &[vec![vec![1, 1], vec![0, 1]], vec![vec![0], vec![1]]]).unwrap();
        let id = SeriesMatrix::identity(f, 3, 2);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert!(a.is_unimodular());
        let mut b = a.clone();
        let t = TruncatedSeries::from_i64s(f, 3, &[0, 1]);
        b.sub_row_multiple(0, 1, &t);
        assert!(b.get(0, 1).is_zero());
        assert_eq!(b.get(0, 0), a.get(0, 0));
        assert!(!SeriesMatrix::from_i64(f, 3, &[vec![vec![0, 1]]]).unwrap().is_unimodular());
    }

    #[test]
    fn rejects_mixed_moduli() {
        let f = PrimeField::new(3).unwrap();
        let rows = vec![vec![TruncatedSeries::zero(f, 2), TruncatedSeries::zero(f, 3)]];
        assert!(matches!(
            SeriesMatrix::from_rows(f, 2, rows),
            Err(Error::ModulusMismatch { .. })
        ));
    }
}
