use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rings::{Fp, PrimeField, TruncatedSeries};

/// An `n`-jet: `N` coordinate polynomials of degree at most `n` over `F_p`,
/// stored densely as `coords[j][k]` = coefficient of `t^k` in `x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Jet {
    level: usize,
    field: PrimeField,
    coords: Vec<Vec<Fp>>,
}

impl Jet {
    /// Builds a jet from coefficient lists; shorter lists are zero-padded,
    /// longer ones rejected.
    pub fn new(field: PrimeField, level: usize, coords: Vec<Vec<Fp>>) -> Result<Self> {
        let mut out = Vec::with_capacity(coords.len());
        for c in coords {
            if c.len() > level + 1 {
                return Err(Error::InvalidInput(format!(
                    "coordinate has {} coefficients, more than level {level} allows",
                    c.len()
                )));
            }
            let mut c: Vec<Fp> = c.into_iter().map(|a| a % field.modulus()).collect();
            c.resize(level + 1, 0);
            out.push(c);
        }
        Ok(Jet {
            level,
            field,
            coords: out,
        })
    }

    pub fn from_i64(field: PrimeField, level: usize, coords: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            field,
            level,
            coords
                .iter()
                .map(|c| c.iter().map(|&a| field.from_i64(a)).collect())
                .collect(),
        )
    }

    /// The constant jet at a point.
    pub fn constant(field: PrimeField, level: usize, point: &[Fp]) -> Self {
        let coords = point
            .iter()
            .map(|&a| {
                let mut c = vec![0; level + 1];
                c[0] = a % field.modulus();
                c
            })
            .collect();
        Jet { level, field, coords }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Vec<Fp>] {
        &self.coords
    }

    pub fn coeff(&self, var: usize, k: usize) -> Fp {
        self.coords[var].get(k).copied().unwrap_or(0)
    }

    /// The base point `theta(0)`.
    pub fn point(&self) -> Vec<Fp> {
        self.coords.iter().map(|c| c[0]).collect()
    }

    /// The coefficient vector of `t^k`.
    pub fn layer(&self, k: usize) -> Vec<Fp> {
        self.coords.iter().map(|c| c.get(k).copied().unwrap_or(0)).collect()
    }

    /// Coordinates as series in `F_p[t]/(t^modulus)`.
    pub fn series(&self, modulus: usize) -> Vec<TruncatedSeries> {
        self.coords
            .iter()
            .map(|c| TruncatedSeries::from_coeffs(self.field, modulus, c))
            .collect()
    }

    /// The truncation to level `l <= n`.
    pub fn truncate(&self, l: usize) -> Jet {
        assert!(l <= self.level, "cannot truncate level {} to {l}", self.level);
        Jet {
            level: l,
            field: self.field,
            coords: self.coords.iter().map(|c| c[..=l].to_vec()).collect(),
        }
    }

    /// Appends `z` as the coefficients of `t^{n+1}`.
    pub fn extend(&self, z: &[Fp]) -> Jet {
        Jet {
            level: self.level + 1,
            field: self.field,
            coords: self
                .coords
                .iter()
                .zip(z)
                .map(|(c, &a)| {
                    let mut c = c.clone();
                    c.push(a);
                    c
                })
                .collect(),
        }
    }

    /// The same polynomials read at a higher level.
    pub fn pad(&self, level: usize) -> Jet {
        assert!(level >= self.level);
        Jet {
            level,
            field: self.field,
            coords: self
                .coords
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.resize(level + 1, 0);
                    c
                })
                .collect(),
        }
    }

    /// Ordering key: the `t^0` layer first, then `t^1`, and so on.
    pub fn layer_key(&self) -> Vec<Fp> {
        (0..=self.level).flat_map(|k| self.layer(k)).collect()
    }
}

impl Serialize for Jet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Jet", 3)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("prime", &self.field.modulus())?;
        st.serialize_field("coords", &self.coords)?;
        st.end()
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .series(self.level + 1)
            .iter()
            .map(ToString::to_string)
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}
