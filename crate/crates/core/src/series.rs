//! Truncated formal power series over exact rationals.
//!
//! A series of order `N` stores coefficients of `z^0..=z^N` and every result
//! is exact through its own order. Binary operations truncate to the smaller
//! order; `derivative` and `shift_down` each lose one order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::counting::binomial;
use crate::poly::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedPowerSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedPowerSeries {
    /// Series with the given coefficients; its order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncatedPowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self::new(self.coeffs[..=order].to_vec())
    }

    /// Coefficientwise equality through `order`.
    pub fn agrees_through(&self, other: &Self, order: usize) -> bool {
        order <= self.order() && order <= other.order() && self.coeffs[..=order] == other.coeffs[..=order]
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ReciprocalOfNonUnit);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = Rational::zero();
            for i in 1..=n {
                acc += &self.coeffs[i] * &out[n - i];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self::new(out))
    }

    /// `d/dz`, one order lower. A constant of order 0 differentiates to the
    /// order-0 zero series.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(
            (1..=self.order())
                .map(|i| &self.coeffs[i] * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term, kept at the same order.
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![Rational::zero()];
        out.extend(
            (0..self.order()).map(|i| &self.coeffs[i] / Rational::from_integer(BigInt::from(i + 1))),
        );
        Self::new(out)
    }

    /// Multiplies by `z`, keeping the order.
    pub fn shift_up(&self) -> Self {
        let mut out = vec![Rational::zero()];
        out.extend_from_slice(&self.coeffs[..self.order()]);
        Self::new(out)
    }

    /// Divides by `z`, one order lower; needs a zero constant term.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ShiftDownOfUnit);
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(Rational::to_string).collect()
    }
}

impl fmt::Display for TruncatedPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

/// `C <- (1 + z C^m)^k` started from `C = 1`, one entry per round, `order + 2`
/// entries in all (the start plus `order + 1` rounds).
pub fn solve_c_iterates(k: u32, m: u32, order: usize) -> Vec<TruncatedPowerSeries> {
    let one = TruncatedPowerSeries::one(order);
    let mut c = one.clone();
    let mut out = vec![c.clone()];
    for _ in 0..=order {
        c = one.add(&c.pow(m).shift_up()).pow(k);
        out.push(c.clone());
    }
    out
}

/// The generating function of (k,m)-ary trees through `order`, the solution
/// of `C = (1 + z C^m)^k`.
pub fn solve_c(k: u32, m: u32, order: usize) -> TruncatedPowerSeries {
    solve_c_iterates(k, m, order).pop().expect("at least one iterate")
}

/// `B = z (1 + B)^{mk}` by fixed-point iteration from `B = 0`.
pub fn solve_b(k: u32, m: u32, order: usize) -> TruncatedPowerSeries {
    let one = TruncatedPowerSeries::one(order);
    let mut b = TruncatedPowerSeries::zero(order);
    for _ in 0..=order {
        b = one.add(&b).pow(m * k).shift_up();
    }
    b
}

/// `C = (1 + B)^k` with `B` from [`solve_b`].
pub fn solve_via_lagrange(k: u32, m: u32, order: usize) -> TruncatedPowerSeries {
    TruncatedPowerSeries::one(order).add(&solve_b(k, m, order)).pow(k)
}

/// Coefficient extraction by Lagrange inversion for `B = z (1+B)^{mk}` and
/// `C = (1+B)^k`:
/// `[z^n] C = (1/n) [t^{n-1}] (d/dt (1+t)^k) (1+t)^{mkn} = (k/n) binom(mkn + k - 1, n - 1)`,
/// and `1` at `n = 0`.
pub fn lagrange_coefficient(k: u64, m: u64, n: u64) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    Rational::new(BigInt::from(k) * binomial(m * k * n + k - 1, n - 1), BigInt::from(n))
}

/// Outcome of the generating-function checks for `(k,2)`-ary trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeCheck {
    /// `(1-k)C = -(2k-1)(C + zC') + C'/C^2`, through `order - 1`.
    pub differentiated: bool,
    /// Constant left over in `(1-k)D + (2k-1)zC + 1/C`.
    pub alpha: Rational,
    /// `(1-k)D = -(2k-1)zC - 1/C + alpha` with `alpha = 1`, through `order`.
    pub integrated: bool,
    /// `(C-1)/z = (2k-1)C^2 + (1-k) C D/z`, through `order - 1`.
    pub recurrence_form: bool,
}

impl OdeCheck {
    pub fn holds(&self) -> bool {
        self.differentiated && self.alpha.is_one() && self.integrated && self.recurrence_form
    }
}

/// Checks the differential and integrated equations satisfied by
/// `C = (1 + z C^2)^k` and its antiderivative `D`. Needs `order >= 1`.
pub fn verify_k2_ode(k: u32, order: usize) -> Result<OdeCheck> {
    if order == 0 {
        return Err(Error::InvalidInput("order must be at least 1".into()));
    }
    let c = solve_c(k, 2, order);
    let d = c.antiderivative();
    let kk = Rational::from_integer(BigInt::from(k));
    let one = Rational::one();
    let two_k_minus_1 = &kk + &kk - &one;
    let one_minus_k = &one - &kk;
    let c_inv = c.reciprocal()?;

    let dc = c.derivative();
    let c_low = c.truncate(order - 1);
    let lhs = c_low.scale(&one_minus_k);
    let rhs = c_low
        .add(&dc.shift_up())
        .scale(&-&two_k_minus_1)
        .add(&dc.mul(&c_inv.mul(&c_inv).truncate(order - 1)));
    let differentiated = lhs.agrees_through(&rhs, order - 1);

    let leftover = d
        .scale(&one_minus_k)
        .add(&c.shift_up().scale(&two_k_minus_1))
        .add(&c_inv);
    let alpha = leftover.coeff(0).clone();
    let integrated = leftover.agrees_through(&TruncatedPowerSeries::constant(one.clone(), order), order);

    let lhs = c.sub(&TruncatedPowerSeries::one(order)).shift_down()?;
    let d_over_z = d.shift_down()?;
    let rhs = c
        .mul(&c)
        .truncate(order - 1)
        .scale(&two_k_minus_1)
        .add(&c.truncate(order - 1).mul(&d_over_z).scale(&one_minus_k));
    let recurrence_form = lhs.agrees_through(&rhs, order - 1);

    Ok(OdeCheck { differentiated, alpha, integrated, recurrence_form })
}
