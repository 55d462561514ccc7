//! Depth-first enumeration of `L_n(X)(F_p)`.

use super::budget::Budget;
use super::extend::{base_points_fp, extend_jet_fp};
use super::jet::Jet;
use super::scheme::{AffineScheme, FpScheme};
use crate::error::Result;

/// Visits every `n`-jet of `X` over `F_p` in lexicographic order of its
/// coefficient layers (`t^0` first). Every visited node, at any level,
/// consumes one unit of budget.
pub fn for_each_jet(
    x: &FpScheme,
    n: usize,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&Jet) -> Result<()>,
) -> Result<()> {
    for point in base_points_fp(x, budget)? {
        let base = Jet::constant(x.field(), 0, &point);
        descend(x, base, n, budget, visit)?;
    }
    Ok(())
}

fn descend(
    x: &FpScheme,
    theta: Jet,
    n: usize,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&Jet) -> Result<()>,
) -> Result<()> {
    budget.tick()?;
    if theta.level() == n {
        return visit(&theta);
    }
    if let Some(ext) = extend_jet_fp(x, &theta) {
        for child in ext.jets() {
            descend(x, child, n, budget, visit)?;
        }
    }
    Ok(())
}

pub fn enumerate_jets(x: &AffineScheme, n: usize, p: u64, budget: &mut Budget) -> Result<Vec<Jet>> {
    let xp = x.over(p)?;
    enumerate_jets_fp(&xp, n, budget)
}

pub fn enumerate_jets_fp(x: &FpScheme, n: usize, budget: &mut Budget) -> Result<Vec<Jet>> {
    let mut out = Vec::new();
    for_each_jet(x, n, budget, &mut |j| {
        out.push(j.clone());
        Ok(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::jets::extend::verify_jet;

    #[test]
    fn enumeration_examples() {
        let mut budget = Budget::default();
        let v = AffineScheme::parse(&["x"], &["x"], 0).unwrap();
        assert_eq!(enumerate_jets(&v, 2, 2, &mut budget).unwrap().len(), 1);
        let cusp = AffineScheme::parse(&["x", "y"], &["y^2 - x^3"], 1).unwrap();
        let jets = enumerate_jets(&cusp, 1, 3, &mut budget).unwrap();
        assert_eq!(jets.len(), 15);
        for j in &jets {
            assert!(verify_jet(&cusp, j).unwrap());
        }
        let keys: Vec<_> = jets.iter().map(Jet::layer_key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let unit = AffineScheme::parse(&["x"], &["1"], 0).unwrap();
        assert!(enumerate_jets(&unit, 3, 5, &mut budget).unwrap().is_empty());
    }

    #[test]
    fn respects_budget() {
        let line = AffineScheme::parse(&["x", "y"], &["x"], 1).unwrap();
        let mut budget = Budget::new(50);
        assert!(matches!(
            enumerate_jets(&line, 4, 3, &mut budget),
            Err(Error::BudgetExceeded { budget: 50 })
        ));
    }
}
