//! Exact point counts of jet schemes and contact loci.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::budget::Budget;
use super::enumerate::for_each_jet;
use super::extend::{base_points_fp, extend_jet_fp};
use super::jet::Jet;
use super::scheme::{AffineScheme, FpScheme};
use crate::dvr::triangularize;
use crate::error::{Error, Result};
use crate::rings::Valuation;

fn pow(p: u64, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(p), e)
}

/// Number of `n`-jets of `X` over `F_p`.
///
/// The search extends jets level by level but stops as soon as the number
/// of `n`-jets over the current `k`-jet is determined in closed form by the
/// invariant factors of its Jacobian (see [`closed_form_fiber`]).
pub fn count_jets(x: &AffineScheme, n: usize, p: u64, budget: &mut Budget) -> Result<BigUint> {
    count_jets_fp(&x.over(p)?, n, budget)
}

pub fn count_jets_fp(x: &FpScheme, n: usize, budget: &mut Budget) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for point in base_points_fp(x, budget)? {
        total += count_over(x, Jet::constant(x.field(), 0, &point), n, budget)?;
    }
    Ok(total)
}

/// Number of `n`-jets of `X` over a given `k`-jet (`k <= n`).
pub fn count_over(x: &FpScheme, theta: Jet, n: usize, budget: &mut Budget) -> Result<BigUint> {
    budget.tick()?;
    if theta.level() == n {
        return Ok(BigUint::one());
    }
    if let Some(c) = closed_form_fiber(x, &theta, n) {
        return Ok(c);
    }
    let mut total = BigUint::zero();
    if let Some(ext) = extend_jet_fp(x, &theta) {
        for child in ext.jets() {
            total += count_over(x, child, n, budget)?;
        }
    }
    Ok(total)
}

/// Closed-form size of the fiber of `L_n(X) -> L_k(X)` over the `k`-jet
/// `theta`, when it is determined by first-order data.
///
/// Write an `n`-jet over `theta` as `theta + t^{k+1} z` and triangularize
/// `A J(theta) P = T` with pivots `t^{e_i}`, `i < b`, below `n - k`. Then
/// `A f(theta + t^{k+1} z) = h + t^{k+1} T w + t^{2k+2} Q(z)` with `h = A f(theta)`.
/// When `2k + 1 >= n` the quadratic part vanishes and the system is
/// linear. Otherwise, if every row has a pivot with `e_i <= k`, the
/// coefficient of `t^{k+1+e_i+s}` in row `i` determines `w_{i,s}` in terms
/// of coefficients already fixed, exactly as in Newton's method. In both
/// cases solutions exist iff `ord h_i >= k+1+e_i` (`i < b`) and `h_i = 0`
/// (`i >= b`), and then form an affine space of dimension
/// `(N - b)(n - k) + sum e_i`.
pub fn closed_form_fiber(x: &FpScheme, theta: &Jet, n: usize) -> Option<BigUint> {
    let k = theta.level();
    debug_assert!(k < n);
    let modulus = n + 1;
    let point = theta.series(modulus);
    let values = x.eval(&point, modulus);
    let jac = x.jacobian(&point, modulus);
    let tf = triangularize(&jac, n - k);
    let b = tf.b();
    let linear = 2 * k + 1 >= n;
    if !linear && (b < x.ngens() || tf.exponents.iter().any(|&e| e > k)) {
        return None;
    }
    let h = tf.a.mul_vec_unchecked(&values);
    for (i, hi) in h.iter().enumerate() {
        let required = if i < b { k + 1 + tf.exponents[i] } else { modulus };
        if hi.valuation().capped() < required {
            return Some(BigUint::zero());
        }
    }
    let dim = (x.nvars() - b) * (n - k) + tf.exponents.iter().sum::<usize>();
    Some(pow(x.field().modulus(), dim))
}

/// Counting oracle without the closed form: enumerate `(n-1)`-jets and add
/// up the sizes of their extension sets.
pub fn count_jets_plain(x: &AffineScheme, n: usize, p: u64, budget: &mut Budget) -> Result<BigUint> {
    let xp = x.over(p)?;
    if n == 0 {
        return Ok(BigUint::from(base_points_fp(&xp, budget)?.len()));
    }
    let mut total = BigUint::zero();
    for_each_jet(&xp, n - 1, budget, &mut |j| {
        if let Some(ext) = extend_jet_fp(&xp, j) {
            total += BigUint::from(ext.size());
        }
        Ok(())
    })?;
    Ok(total)
}

/// Least order of vanishing of the generators along an ambient jet.
pub fn ideal_order_along_jet(x: &AffineScheme, theta: &Jet) -> Result<Valuation> {
    let xp = x.over(theta.field().modulus())?;
    if theta.nvars() != xp.nvars() {
        return Err(Error::ArityMismatch {
            expected: xp.nvars(),
            actual: theta.nvars(),
        });
    }
    Ok(ideal_order_fp(&xp, theta))
}

pub fn ideal_order_fp(x: &FpScheme, theta: &Jet) -> Valuation {
    let m = theta.level() + 1;
    x.eval(&theta.series(m), m)
        .iter()
        .map(|v| v.valuation())
        .min_by_key(|v| v.capped())
        .unwrap_or(Valuation::AtLeast(m))
}

/// Number of ambient `n`-jets with contact order exactly `n`, via
/// `p^N #L_{n-1}(X) - #L_n(X)`; for `n = 0` it is `p^N - #X(F_p)`.
pub fn contact_count(x: &AffineScheme, n: usize, p: u64, budget: &mut Budget) -> Result<BigUint> {
    let xp = x.over(p)?;
    let ambient = pow(p, x.nvars());
    let previous = if n == 0 {
        BigUint::one()
    } else {
        count_jets_fp(&xp, n - 1, budget)?
    };
    let current = count_jets_fp(&xp, n, budget)?;
    let diff = BigInt::from(ambient * previous) - BigInt::from(current);
    diff.to_biguint()
        .ok_or_else(|| Error::InvalidInput("negative contact count".into()))
}

/// Contact counts by exhaustive enumeration of ambient jets.
pub fn contact_count_brute(x: &AffineScheme, n: usize, p: u64, budget: &mut Budget) -> Result<BigUint> {
    let xp = x.over(p)?;
    let slots = x.nvars() * (n + 1);
    let total = (p as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    budget.reserve(total)?;
    let mut count = 0u64;
    let mut digits = vec![0u64; slots];
    loop {
        let coords: Vec<Vec<u64>> = digits.chunks(n + 1).map(<[u64]>::to_vec).collect();
        let theta = Jet::new(xp.field(), n, coords)?;
        if ideal_order_fp(&xp, &theta) == Valuation::Finite(n) {
            count += 1;
        }
        let mut i = slots;
        loop {
            if i == 0 {
                return Ok(BigUint::from(count));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
}
