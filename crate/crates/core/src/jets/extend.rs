//! Jet verification, base points and one-level extensions.

use super::budget::Budget;
use super::jet::Jet;
use super::scheme::{AffineScheme, FpScheme};
use crate::error::{Error, Result};
use crate::rings::{Fp, PrimeField};

fn check_arity(x: &FpScheme, theta: &Jet) -> Result<()> {
    if theta.nvars() != x.nvars() {
        return Err(Error::ArityMismatch {
            expected: x.nvars(),
            actual: theta.nvars(),
        });
    }
    Ok(())
}

/// True iff every generator vanishes on `theta` modulo `t^{n+1}`.
pub fn verify_jet(x: &AffineScheme, theta: &Jet) -> Result<bool> {
    let xp = x.over(theta.field().modulus())?;
    verify_jet_fp(&xp, theta)
}

pub fn verify_jet_fp(x: &FpScheme, theta: &Jet) -> Result<bool> {
    check_arity(x, theta)?;
    let m = theta.level() + 1;
    Ok(x.eval(&theta.series(m), m).iter().all(|v| v.is_zero()))
}

/// All `F_p`-points of `X` in lexicographic order.
pub fn base_points(x: &AffineScheme, p: u64, budget: &mut Budget) -> Result<Vec<Vec<Fp>>> {
    base_points_fp(&x.over(p)?, budget)
}

pub fn base_points_fp(x: &FpScheme, budget: &mut Budget) -> Result<Vec<Vec<Fp>>> {
    let p = x.field().modulus();
    let n = x.nvars();
    let total = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    budget.reserve(total)?;
    let mut out = Vec::new();
    let mut point = vec![0; n];
    loop {
        if x.eval_point(&point).iter().all(|&v| v == 0) {
            out.push(point.clone());
        }
        // Odometer increment with the last coordinate fastest.
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            point[k] += 1;
            if point[k] < p {
                break;
            }
            point[k] = 0;
        }
    }
}

/// The fiber of the truncation over an `n`-jet: every `(n+1)`-jet is
/// `base + t^{n+1} (particular + span(kernel))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSet {
    pub base: Jet,
    pub particular: Vec<Fp>,
    pub kernel: Vec<Vec<Fp>>,
}

impl ExtensionSet {
    /// Number of extensions, `p^{dim kernel}`.
    pub fn size(&self) -> u128 {
        (self.base.field().modulus() as u128).pow(self.kernel.len() as u32)
    }

    /// All coefficient vectors `z`, sorted lexicographically.
    pub fn members(&self) -> Vec<Vec<Fp>> {
        let f = self.base.field();
        let p = f.modulus();
        let d = self.kernel.len();
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut lambda = vec![0u64; d];
        loop {
            let mut z = self.particular.clone();
            for (l, k) in lambda.iter().zip(&self.kernel) {
                if *l != 0 {
                    for (zi, ki) in z.iter_mut().zip(k) {
                        *zi = f.add(*zi, f.mul(*l, *ki));
                    }
                }
            }
            out.push(z);
            let mut i = d;
            loop {
                if i == 0 {
                    out.sort_unstable();
                    return out;
                }
                i -= 1;
                lambda[i] += 1;
                if lambda[i] < p {
                    break;
                }
                lambda[i] = 0;
            }
        }
    }

    /// All `(n+1)`-jets over the base, in lexicographic order.
    pub fn jets(&self) -> Vec<Jet> {
        self.members().iter().map(|z| self.base.extend(z)).collect()
    }
}

/// Solves `Jac(f)(theta(0)) z = -[t^{n+1}] f(theta)`, or returns `None` when
/// the system is inconsistent.
pub fn extend_jet(x: &AffineScheme, theta: &Jet) -> Result<Option<ExtensionSet>> {
    let xp = x.over(theta.field().modulus())?;
    check_arity(&xp, theta)?;
    Ok(extend_jet_fp(&xp, theta))
}

pub fn extend_jet_fp(x: &FpScheme, theta: &Jet) -> Option<ExtensionSet> {
    let f = x.field();
    let n = theta.level();
    let values = x.eval(&theta.series(n + 2), n + 2);
    let rhs: Vec<Fp> = values.iter().map(|v| f.neg(v.coeff(n + 1))).collect();
    let jac = x.jacobian_at_point(&theta.point());
    let (particular, kernel) = solve_mod_p(f, &jac, &rhs)?;
    Some(ExtensionSet {
        base: theta.clone(),
        particular,
        kernel,
    })
}

/// Solves `a z = b` over `F_p`: a particular solution (free variables zero)
/// and a kernel basis, one vector per free column in increasing order.
pub fn solve_mod_p(field: PrimeField, a: &[Vec<Fp>], b: &[Fp]) -> Option<(Vec<Fp>, Vec<Vec<Fp>>)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Fp>> = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut r = r.clone();
            r.push(bi);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = field.inv(m[rank][c]).expect("nonzero pivot");
        for k in c..=cols {
            m[rank][k] = field.mul(m[rank][k], inv);
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let factor = m[r][c];
                for k in c..=cols {
                    let d = field.mul(factor, m[rank][k]);
                    m[r][k] = field.sub(m[r][k], d);
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if m[rank..].iter().any(|r| r[cols] != 0) {
        return None;
    }
    let mut particular = vec![0; cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][cols];
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(m[r][fc]);
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cusp() -> AffineScheme {
        AffineScheme::parse(&["x", "y"], &["y^2 - x^3"], 1).unwrap()
    }

    #[test]
    fn verify_examples() {
        let f = PrimeField::new(5).unwrap();
        let theta = Jet::from_i64(f, 4, &[vec![0, 0, 1], vec![0, 0, 0, 1]]).unwrap();
        assert!(verify_jet(&cusp(), &theta).unwrap());
        // (t, t) gives t^2 - t^3, which vanishes mod t^2 but not mod t^3.
        let diag = Jet::from_i64(f, 1, &[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(verify_jet(&cusp(), &diag).unwrap());
        assert!(!verify_jet(&cusp(), &diag.pad(2)).unwrap());
        let c = Jet::constant(f, 6, &[1, 1]);
        assert!(verify_jet(&cusp(), &c).unwrap());
        let wrong = Jet::constant(f, 1, &[1]);
        assert!(matches!(verify_jet(&cusp(), &wrong), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn base_point_examples() {
        let mut budget = Budget::default();
        let v = AffineScheme::parse(&["x"], &["x"], 0).unwrap();
        assert_eq!(base_points(&v, 5, &mut budget).unwrap(), vec![vec![0]]);
        assert_eq!(
            base_points(&cusp(), 3, &mut budget).unwrap(),
            vec![vec![0, 0], vec![1, 1], vec![1, 2]]
        );
        let unit = AffineScheme::parse(&["x"], &["1"], 0).unwrap();
        assert!(base_points(&unit, 7, &mut budget).unwrap().is_empty());
        let mut tiny = Budget::new(10);
        assert!(matches!(
            base_points(&cusp(), 5, &mut tiny),
            Err(Error::BudgetExceeded { budget: 10 })
        ));
    }

    #[test]
    fn extension_examples() {
        let f = PrimeField::new(3).unwrap();
        let line = AffineScheme::parse(&["x", "y"], &["x"], 1).unwrap();
        let theta = Jet::from_i64(f, 2, &[vec![0], vec![1, 2, 1]]).unwrap();
        let ext = extend_jet(&line, &theta).unwrap().unwrap();
        assert_eq!(ext.kernel.len(), 1);
        assert_eq!(ext.size(), 3);

        let origin = Jet::constant(f, 0, &[0, 0]);
        let ext = extend_jet(&cusp(), &origin).unwrap().unwrap();
        assert_eq!(ext.size(), 9);

        let double = AffineScheme::parse(&["x"], &["x^2"], 0).unwrap();
        let ext = extend_jet(&double, &Jet::constant(f, 0, &[0])).unwrap().unwrap();
        assert_eq!(ext.size(), 3);
        for j in ext.jets() {
            assert!(verify_jet(&double, &j).unwrap());
        }
    }

    #[test]
    fn inconsistent_extension() {
        // The Jacobian of x^2 - y^3 vanishes at the origin, yet x^2 = t^2
        // for the 1-jet (t, 0), so no 2-jet lies over it.
        let f = PrimeField::new(5).unwrap();
        let x = AffineScheme::parse(&["x", "y"], &["x^2 - y^3"], 1).unwrap();
        let theta = Jet::from_i64(f, 1, &[vec![0, 1], vec![0]]).unwrap();
        assert!(verify_jet(&x, &theta).unwrap());
        assert_eq!(extend_jet(&x, &theta).unwrap(), None);
    }

    #[test]
    fn linear_solver() {
        let f = PrimeField::new(7).unwrap();
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let (part, ker) = solve_mod_p(f, &a, &[1, 2]).unwrap();
        assert_eq!(part, vec![1, 0, 0]);
        assert_eq!(ker.len(), 2);
        assert!(solve_mod_p(f, &a, &[1, 3]).is_none());
    }
}
