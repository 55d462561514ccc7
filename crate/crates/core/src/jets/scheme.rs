//! Affine scheme presentations and their reductions mod `p`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dvr::SeriesMatrix;
use crate::error::{json_error, Error, Result};
use crate::rings::{parse_polynomial, Fp, MultiPolynomial, PrimeField, ReducedPolynomial, TruncatedSeries};

/// The on-disk presentation of a scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub nvars: usize,
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub dim: usize,
}

/// A closed subscheme of affine `N`-space cut out by integer polynomials,
/// together with its declared dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineScheme {
    vars: Vec<String>,
    generators: Vec<MultiPolynomial>,
    jacobian: Vec<Vec<MultiPolynomial>>,
    dim: usize,
}

impl AffineScheme {
    pub fn new(vars: Vec<String>, generators: Vec<MultiPolynomial>, dim: usize) -> Result<Self> {
        let n = vars.len();
        let distinct: BTreeSet<&String> = vars.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidInput("variable names must be distinct".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidInput("at least one generator is required".into()));
        }
        if dim > n {
            return Err(Error::InvalidInput(format!("declared dimension {dim} exceeds N = {n}")));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    actual: g.nvars(),
                });
            }
            if g.is_zero() {
                return Err(Error::InvalidInput(format!("generator {} is zero", i + 1)));
            }
        }
        let jacobian = generators
            .iter()
            .map(|g| (0..n).map(|j| g.partial(j)).collect())
            .collect();
        Ok(AffineScheme {
            vars,
            generators,
            jacobian,
            dim,
        })
    }

    /// Parses generator expressions over the named variables.
    pub fn parse(vars: &[&str], generators: &[&str], dim: usize) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let gens = generators
            .iter()
            .enumerate()
            .map(|(k, g)| {
                parse_polynomial(g, &vars).map_err(|e| match e {
                    Error::Parse { line, column, message } => Error::Parse {
                        line,
                        column,
                        message: format!("generator {}: {message}", k + 1),
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vars, gens, dim)
    }

    pub fn from_file(file: &SchemeFile) -> Result<Self> {
        if file.nvars != file.vars.len() {
            return Err(Error::InvalidInput(format!(
                "nvars is {} but {} variable names are listed",
                file.nvars,
                file.vars.len()
            )));
        }
        let vars: Vec<&str> = file.vars.iter().map(String::as_str).collect();
        let gens: Vec<&str> = file.generators.iter().map(String::as_str).collect();
        Self::parse(&vars, &gens, file.dim)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SchemeFile = serde_json::from_str(text).map_err(json_error)?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> SchemeFile {
        SchemeFile {
            nvars: self.nvars(),
            vars: self.vars.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| g.display_with(&self.vars).to_string())
                .collect(),
            dim: self.dim,
        }
    }

    /// Same variables and dimension with another generator list.
    pub fn with_generators(&self, generators: Vec<MultiPolynomial>) -> Result<Self> {
        Self::new(self.vars.clone(), generators, self.dim)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPolynomial] {
        &self.generators
    }

    /// Number of generators `m`.
    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Codimension `r = N - d`.
    pub fn codim(&self) -> usize {
        self.nvars() - self.dim
    }

    /// Reduction of generators and Jacobian entries mod `p`.
    pub fn over(&self, p: u64) -> Result<FpScheme> {
        let field = PrimeField::new(p)?;
        Ok(FpScheme {
            field,
            nvars: self.nvars(),
            gens: self.generators.iter().map(|g| g.reduce(field)).collect(),
            jac: self
                .jacobian
                .iter()
                .map(|row| row.iter().map(|d| d.reduce(field)).collect())
                .collect(),
        })
    }
}

/// A scheme with coefficients reduced into `F_p`, ready for evaluation.
#[derive(Clone, Debug)]
pub struct FpScheme {
    field: PrimeField,
    nvars: usize,
    gens: Vec<ReducedPolynomial>,
    jac: Vec<Vec<ReducedPolynomial>>,
}

impl FpScheme {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    /// Generator values at a series point; all series share `modulus`.
    pub fn eval(&self, point: &[TruncatedSeries], modulus: usize) -> Vec<TruncatedSeries> {
        self.gens
            .iter()
            .map(|g| g.eval_series_unchecked(point, modulus))
            .collect()
    }

    pub fn eval_point(&self, point: &[Fp]) -> Vec<Fp> {
        self.gens
            .iter()
            .map(|g| g.eval_point(point).expect("arity checked by caller"))
            .collect()
    }

    /// The `m x N` Jacobian matrix at a series point.
    pub fn jacobian(&self, point: &[TruncatedSeries], modulus: usize) -> SeriesMatrix {
        let mut j = SeriesMatrix::zero(self.field, modulus, self.gens.len(), self.nvars);
        for (i, row) in self.jac.iter().enumerate() {
            for (c, d) in row.iter().enumerate() {
                if !d.is_zero() {
                    j.set(i, c, d.eval_series_unchecked(point, modulus));
                }
            }
        }
        j
    }

    /// The Jacobian matrix over `F_p` at a point.
    pub fn jacobian_at_point(&self, point: &[Fp]) -> Vec<Vec<Fp>> {
        self.jac
            .iter()
            .map(|row| {
                row.iter()
                    .map(|d| d.eval_point(point).expect("arity checked by caller"))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"nvars": 2, "vars": ["x", "y"], "generators": ["y^2 - x^3"], "dim": 1}"#;
        let x = AffineScheme::from_json(text).unwrap();
        assert_eq!(x.codim(), 1);
        assert_eq!(x.to_file().generators, vec!["-x^3 + y^2".to_string()]);
        let again = AffineScheme::from_file(&x.to_file()).unwrap();
        assert_eq!(again, x);
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(AffineScheme::parse(&["x"], &[], 0).is_err());
        assert!(AffineScheme::parse(&["x"], &["x - x"], 0).is_err());
        assert!(AffineScheme::parse(&["x"], &["x"], 2).is_err());
        assert!(AffineScheme::parse(&["x", "x"], &["x"], 1).is_err());
        assert!(matches!(
            AffineScheme::parse(&["x"], &["x +"], 0),
            Err(Error::Parse { .. })
        ));
        let text = r#"{"nvars": 3, "vars": ["x"], "generators": ["x"], "dim": 0}"#;
        assert!(AffineScheme::from_json(text).is_err());
    }
}
