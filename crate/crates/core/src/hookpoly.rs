//! Hook length polynomials of complete m-ary trees and plane forests.
//!
//! Each family's `H_n(x)` is available three ways: summed over the
//! enumerated structures, by the root-removal recurrence, and in closed form
//! as a scaled binomial polynomial. The product-form identities obtained by
//! transporting `H_n` through reversal and shift operators live here as well,
//! together with their special values.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::counting::{convolution_power, special_rhs, SpecialIdentity};
use crate::enumerate::{mary_trees, plane_forests};
use crate::poly::{integer, Rational, RationalPolynomial};
use crate::tree::{HookMode, HookTable, PlaneTree};
use crate::{Error, Result};

/// Structure family carrying a hook length polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Complete m-ary trees with the given total arity `m >= 1`.
    Mary(u32),
    /// Plane forests.
    Forest,
}

fn small(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `(((m-1)h + 1)x + 1 - h) / (m h)` for total arity `m`.
pub fn mary_factor(h: usize, m_total: u32) -> RationalPolynomial {
    let m = m_total as usize;
    let den = small(m * h).recip();
    RationalPolynomial::linear(small((m - 1) * h + 1) * &den, (Rational::one() - small(h)) * &den)
}

/// `((2h - 1)x + 1 - h) / h`.
pub fn forest_factor(h: usize) -> RationalPolynomial {
    let den = small(h).recip();
    RationalPolynomial::linear(small(2 * h - 1) * &den, (Rational::one() - small(h)) * &den)
}

/// Hook length polynomial of a single complete m-ary tree.
pub fn tree_poly_mary(t: &PlaneTree, m_total: u32) -> Result<RationalPolynomial> {
    if m_total == 0 || !t.is_complete_mary(m_total) {
        return Err(Error::NotComplete(m_total));
    }
    Ok(t.hook_table(HookMode::InternalOnly).hooks().map(|h| mary_factor(h, m_total)).product())
}

pub fn forest_poly(forest: &[PlaneTree]) -> RationalPolynomial {
    HookTable::forest(forest).hooks().map(forest_factor).product()
}

pub fn h_mary_enum(n: usize, m_total: u32, cap: u64) -> Result<RationalPolynomial> {
    mary_trees(m_total, n, cap)?.iter().map(|t| tree_poly_mary(t, m_total)).sum()
}

/// `H_0..=H_max_n` for total arity `m_total` by the root-removal recurrence.
pub fn h_mary_recur_table(max_n: usize, m_total: u32) -> Vec<RationalPolynomial> {
    assert!(m_total >= 1, "arity must be at least 1");
    let m = (m_total - 1) as usize;
    let mut table = vec![RationalPolynomial::one()];
    for n in 1..=max_n {
        let den = small(m_total as usize * n).recip();
        let prefactor = RationalPolynomial::linear(small(m * n + 1) * &den, (Rational::one() - small(n)) * &den);
        let conv = convolution_power(&table, m_total as usize, n - 1);
        table.push(&prefactor * &conv);
    }
    table
}

pub fn h_mary_recur(n: usize, m_total: u32) -> RationalPolynomial {
    h_mary_recur_table(n, m_total).swap_remove(n)
}

/// `binom((mn+1)x, n) / (mn+1)` with `m = m_total - 1`.
pub fn h_mary_closed(n: usize, m_total: u32) -> RationalPolynomial {
    assert!(m_total >= 1, "arity must be at least 1");
    let top = small((m_total as usize - 1) * n + 1);
    RationalPolynomial::binomial(&top, &Rational::zero(), n).scale(&top.recip())
}

pub fn h_forest_enum(n: usize, cap: u64) -> Result<RationalPolynomial> {
    Ok(plane_forests(n, cap)?.iter().map(|f| forest_poly(f)).sum())
}

pub fn h_forest_recur_table(max_n: usize) -> Vec<RationalPolynomial> {
    let mut table = vec![RationalPolynomial::one()];
    for n in 1..=max_n {
        let mut acc = RationalPolynomial::zero();
        for i in 1..=n {
            let weight = forest_factor(i);
            acc = &acc + &(&weight * &(&table[i - 1] * &table[n - i]));
        }
        table.push(acc);
    }
    table
}

pub fn h_forest_recur(n: usize) -> RationalPolynomial {
    h_forest_recur_table(n).swap_remove(n)
}

/// `binom((2n+1)x, n) / (2n+1)`.
pub fn h_forest_closed(n: usize) -> RationalPolynomial {
    let top = small(2 * n + 1);
    RationalPolynomial::binomial(&top, &Rational::zero(), n).scale(&top.recip())
}

/// Hook lengths of every structure in the family at size `n`.
fn family_hooks(family: Family, n: usize, cap: u64) -> Result<Vec<Vec<usize>>> {
    Ok(match family {
        Family::Mary(m_total) => mary_trees(m_total, n, cap)?
            .iter()
            .map(|t| t.hook_table(HookMode::InternalOnly).hooks().collect())
            .collect(),
        Family::Forest => plane_forests(n, cap)?
            .iter()
            .map(|f| HookTable::forest(f).hooks().collect())
            .collect(),
    })
}

/// `sum over structures of prod over counted vertices of (x + c / h_v)`.
/// With `c = 1` this is the left side of the product-form identities.
pub fn product_identity_lhs(family: Family, n: usize, c: &Rational, cap: u64) -> Result<RationalPolynomial> {
    Ok(family_hooks(family, n, cap)?
        .into_iter()
        .map(|hooks| {
            hooks
                .into_iter()
                .map(|h| RationalPolynomial::linear(Rational::one(), c / small(h)))
                .product::<RationalPolynomial>()
        })
        .sum())
}

/// Closed product forms:
/// m-ary `prod_{i<n} ((mn+1+i)x + mn+1-mi) / ((mn+1) n!)`,
/// forest `prod_{i<n} ((2n+1-i)x + 2n+1-2i) / ((2n+1) n!)`.
pub fn product_identity_rhs(family: Family, n: usize) -> RationalPolynomial {
    let n_i = n as i64;
    let (base, factors): (i64, Vec<RationalPolynomial>) = match family {
        Family::Mary(m_total) => {
            let m = m_total as i64 - 1;
            let base = m * n_i + 1;
            (base, (0..n_i).map(|i| RationalPolynomial::linear(integer(base + i), integer(base - m * i))).collect())
        }
        Family::Forest => {
            let base = 2 * n_i + 1;
            (base, (0..n_i).map(|i| RationalPolynomial::linear(integer(base - i), integer(base - 2 * i))).collect())
        }
    };
    let fact: BigInt = (1..=n).fold(BigInt::one(), |acc, i| acc * i);
    let norm = (Rational::from_integer(fact) * integer(base)).recip();
    factors.into_iter().product::<RationalPolynomial>().scale(&norm)
}

/// Maps `H_n` to the product-form polynomial.
///
/// m-ary (with `m = m_total - 1`): `E^{-(m-1)} . phi_n . E^{-1} . phi_n . R_m`
/// where `R_m f(x) = f((m+1)x + m)` and `E f(x) = f(x+1)`.
/// Forest: `E . phi_n . E . phi_n`.
pub fn transport(family: Family, n: usize, h: &RationalPolynomial) -> Result<RationalPolynomial> {
    match family {
        Family::Mary(m_total) => {
            let m = m_total as i64 - 1;
            let r = h.affine_compose(&integer(m + 1), &integer(m));
            let p = r.reverse_in_window(n)?.shift(&integer(-1));
            Ok(p.reverse_in_window(n)?.shift(&integer(-(m - 1))))
        }
        Family::Forest => {
            let p = h.reverse_in_window(n)?.shift(&integer(1));
            Ok(p.reverse_in_window(n)?.shift(&integer(1)))
        }
    }
}

fn closed(family: Family, n: usize) -> RationalPolynomial {
    match family {
        Family::Mary(m_total) => h_mary_closed(n, m_total),
        Family::Forest => h_forest_closed(n),
    }
}

fn recur(family: Family, n: usize) -> RationalPolynomial {
    match family {
        Family::Mary(m_total) => h_mary_recur(n, m_total),
        Family::Forest => h_forest_recur(n),
    }
}

fn enumerated(family: Family, n: usize, cap: u64) -> Result<RationalPolynomial> {
    match family {
        Family::Mary(m_total) => h_mary_enum(n, m_total, cap),
        Family::Forest => h_forest_enum(n, cap),
    }
}

/// True iff transporting the closed form of `H_n` gives the closed product.
pub fn verify_operator_transport(family: Family, n: usize) -> Result<bool> {
    Ok(transport(family, n, &closed(family, n))? == product_identity_rhs(family, n))
}

/// True iff transporting the enumerated `H_n` gives the enumerated product
/// sum `sum prod (x + 1/h_v)`.
pub fn verify_operator_transport_enumerated(family: Family, n: usize, cap: u64) -> Result<bool> {
    let lhs = product_identity_lhs(family, n, &Rational::one(), cap)?;
    Ok(transport(family, n, &enumerated(family, n, cap)?)? == lhs)
}

/// Both routes to one special value, next to the closed right side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialValueCheck {
    pub identity: SpecialIdentity,
    pub m: u64,
    pub n: u64,
    pub expected: Rational,
    /// Value read off the transported recurrence polynomial.
    pub transported: Rational,
    /// Direct sum over enumerated structures; `None` when beyond the cap.
    pub enumerated: Option<Rational>,
}

impl SpecialValueCheck {
    pub fn holds(&self) -> bool {
        self.transported == self.expected && self.enumerated.as_ref().is_none_or(|e| *e == self.expected)
    }
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * i))
}

/// Checks a special-value identity at `(m, n)`:
///
/// * `prod-mi-plus-1`: `n! sum_T prod 1/h_v = prod (mi+1)`, (m+1)-ary trees;
/// * `mary-x-eq-m`: `sum_T prod (m + 1/h_v) = (m+1)^n (mn+1)^(n-1) / n!`;
/// * `forest-double-factorial`: `n! sum_F prod 1/h_v = (2n-1)!!`;
/// * `forest-x-eq-2`: `sum_F prod (2 - 1/h_v) = (2n+1)^(n-1) / n!`.
///
/// The enumerated side evaluates the printed products directly over hook
/// tables. The transported side evaluates `sum prod (x + 1/h_v)`, obtained
/// from the recurrence polynomial, at `x = 0`, `x = m` or `x = -2`; at
/// `x = -2` each of the `n` factors flips sign, so that value is multiplied
/// by `(-1)^n`.
pub fn verify_special_values(identity: SpecialIdentity, m: u64, n: usize, cap: u64) -> Result<SpecialValueCheck> {
    let family = if identity.is_forest() { Family::Forest } else { Family::Mary(m as u32 + 1) };
    let product_form = transport(family, n, &recur(family, n))?;
    let sign = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let (transported, weight, offset, scale) = match identity {
        SpecialIdentity::ProdMiPlus1 | SpecialIdentity::ForestDoubleFactorial => {
            (product_form.eval(&Rational::zero()) * factorial(n), Rational::one(), Rational::zero(), factorial(n))
        }
        SpecialIdentity::MaryXEqM => {
            let x = Rational::from_integer(BigInt::from(m));
            (product_form.eval(&x), Rational::one(), x, Rational::one())
        }
        SpecialIdentity::ForestXEq2 => {
            (product_form.eval(&integer(-2)) * sign, -Rational::one(), integer(2), Rational::one())
        }
    };
    let enumerated = match family_hooks(family, n, cap) {
        Ok(all) => Some(
            all.into_iter()
                .map(|hooks| hooks.into_iter().map(|h| &offset + &weight / small(h)).product::<Rational>())
                .sum::<Rational>()
                * scale,
        ),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SpecialValueCheck { identity, m, n: n as u64, expected: special_rhs(identity, m, n as u64), transported, enumerated })
}

/// True iff ternary-tree and plane-forest hook polynomials coincide at `n`,
/// both in closed form and by recurrence.
pub fn verify_ternary_forest_equality(n: usize) -> bool {
    h_mary_closed(n, 3) == h_forest_closed(n) && h_mary_recur(n, 3) == h_forest_recur(n)
}
