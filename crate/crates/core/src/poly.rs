//! Dense univariate polynomials with exact rational coefficients, and the
//! coefficient-reversal, shift and affine-substitution functionals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Coefficients in ascending degree with no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| integer(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `a x + b`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x0: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x0 + c)
    }

    /// `p(q(x))` by Horner's scheme.
    pub fn compose(&self, inner: &RationalPolynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        self.affine_compose(&Rational::one(), c)
    }

    /// `p(a x + b)`.
    pub fn affine_compose(&self, a: &Rational, b: &Rational) -> Self {
        self.compose(&Self::linear(a.clone(), b.clone()))
    }

    /// `x^n p(1/x)`: reverses the coefficients inside the window of degrees
    /// `0..=n`.
    pub fn reverse_in_window(&self, n: usize) -> Result<Self> {
        match self.degree() {
            Some(d) if d > n => Err(Error::DegreeExceedsWindow { degree: d, window: n }),
            _ => Ok(Self::new((0..=n).map(|i| self.coeff(n - i)).collect())),
        }
    }

    /// `binom(a x + b, n) = prod_{i<n} (a x + b - i) / n!`.
    pub fn binomial(a: &Rational, b: &Rational, n: usize) -> Self {
        let mut acc = Self::one();
        let mut fact = BigInt::one();
        for i in 0..n {
            acc = &acc * &Self::linear(a.clone(), b - Rational::from_integer(BigInt::from(i)));
            fact *= i + 1;
        }
        acc.scale(&Rational::from_integer(fact).recip())
    }

    /// Reduced coefficient strings in ascending degree, e.g. `["0", "1/3"]`.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(Rational::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items
            .iter()
            .map(|s| s.as_ref().trim().parse::<Rational>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// Shorthand for `p.reverse_in_window(n)`.
pub fn phi(n: usize, p: &RationalPolynomial) -> Result<RationalPolynomial> {
    p.reverse_in_window(n)
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

impl<'a> Add<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &'a RationalPolynomial) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: &'a RationalPolynomial) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: &'a RationalPolynomial) -> RationalPolynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: RationalPolynomial) -> RationalPolynomial {
        &self + &rhs
    }
}

impl Sub for RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: RationalPolynomial) -> RationalPolynomial {
        &self - &rhs
    }
}

impl Mul for RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: RationalPolynomial) -> RationalPolynomial {
        &self * &rhs
    }
}

impl Neg for RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        -&self
    }
}

impl Zero for RationalPolynomial {
    fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for RationalPolynomial {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl std::iter::Sum for RationalPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for RationalPolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn ring_examples() {
        let x = RationalPolynomial::x();
        assert_eq!(&x * &poly(&[1, 1]), poly(&[0, 1, 1]));
        assert_eq!(poly(&[0, 3]).scale(&rational(1, 3)), x);
        let p = poly(&[4, -1, 7]);
        assert!((&p + &(-&p)).is_zero());
        assert_eq!(RationalPolynomial::zero().degree(), None);
        assert_eq!(RationalPolynomial::new(vec![integer(1), integer(0)]).coeffs().len(), 1);
    }

    #[test]
    fn evaluation() {
        // x(5x-1)/2
        let h2 = RationalPolynomial::new(vec![integer(0), rational(-1, 2), rational(5, 2)]);
        assert_eq!(h2.eval(&integer(1)), integer(2));
        assert_eq!(poly(&[9, 4, 4]).eval(&integer(0)), integer(9));
        let quarter_binom = RationalPolynomial::binomial(&integer(4), &integer(0), 3).scale(&rational(1, 4));
        assert_eq!(quarter_binom.eval(&integer(2)), integer(14));
    }

    #[test]
    fn binomial_polynomials() {
        // (1/4) binom(4x, 3) = x(4x-1)(2x-1)/3 = (8x^3 - 6x^2 + x)/3
        let lhs = RationalPolynomial::binomial(&integer(4), &integer(0), 3).scale(&rational(1, 4));
        let rhs = RationalPolynomial::new(vec![integer(0), rational(1, 3), integer(-2), rational(8, 3)]);
        assert_eq!(lhs, rhs);
        assert_eq!(RationalPolynomial::binomial(&integer(7), &integer(0), 0), RationalPolynomial::one());
        let b2 = RationalPolynomial::new(vec![integer(0), rational(-1, 2), rational(1, 2)]);
        assert_eq!(RationalPolynomial::binomial(&integer(1), &integer(0), 2), b2);
        let shifted = RationalPolynomial::new(vec![integer(0), rational(1, 2), rational(1, 2)]);
        assert_eq!(b2.shift(&integer(1)), shifted);
    }

    #[test]
    fn window_reversal() {
        assert_eq!(phi(2, &poly(&[3, 2, 1])).unwrap(), poly(&[1, 2, 3]));
        assert_eq!(phi(4, &poly(&[0, 0, 0, 0, 1])).unwrap(), RationalPolynomial::one());
        assert_eq!(phi(3, &RationalPolynomial::x()).unwrap(), poly(&[0, 0, 1]));
        assert_eq!(
            phi(1, &poly(&[0, 0, 1])),
            Err(Error::DegreeExceedsWindow { degree: 2, window: 1 })
        );
        assert!(phi(0, &RationalPolynomial::zero()).unwrap().is_zero());
    }

    #[test]
    fn substitutions() {
        let x = RationalPolynomial::x();
        assert_eq!(poly(&[0, 0, 1]).shift(&integer(1)), poly(&[1, 2, 1]));
        assert_eq!(x.affine_compose(&integer(2), &integer(1)), poly(&[1, 2]));
        let p = poly(&[5, -3, 2]);
        assert_eq!(p.affine_compose(&integer(1), &integer(0)), p);
        assert_eq!(poly(&[0, 0, 1]).affine_compose(&integer(3), &integer(0)), poly(&[0, 0, 9]));
    }

    #[test]
    fn string_form() {
        let p = RationalPolynomial::new(vec![integer(0), rational(1, 3), integer(-2), rational(8, 3)]);
        assert_eq!(p.to_strings(), vec!["0", "1/3", "-2", "8/3"]);
        assert_eq!(p.to_string(), "[0, 1/3, -2, 8/3]");
        assert_eq!(RationalPolynomial::from_strings(&p.to_strings()).unwrap(), p);
        assert!(RationalPolynomial::from_strings(&["1/0x"]).is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| rational(n, d))
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = RationalPolynomial> {
        prop::collection::vec(arb_rational(), 0..max_len).prop_map(RationalPolynomial::new)
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(5), q in arb_poly(5), r in arb_poly(5)) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
        }

        #[test]
        fn evaluation_is_a_homomorphism(p in arb_poly(5), q in arb_poly(5), x0 in arb_rational()) {
            prop_assert_eq!((&p * &q).eval(&x0), p.eval(&x0) * q.eval(&x0));
            prop_assert_eq!((&p + &q).eval(&x0), p.eval(&x0) + q.eval(&x0));
        }

        #[test]
        fn reversal_is_an_involution(p in arb_poly(6), extra in 0usize..3) {
            let n = p.degree().unwrap_or(0) + extra;
            let twice = phi(n, &phi(n, &p).unwrap()).unwrap();
            prop_assert_eq!(twice, p);
        }

        #[test]
        fn shifts_compose(p in arb_poly(6), c1 in arb_rational(), c2 in arb_rational()) {
            prop_assert_eq!(p.shift(&(&c1 + &c2)), p.shift(&c1).shift(&c2));
        }

        #[test]
        fn binomial_leading_term(a in arb_rational(), b in arb_rational(), n in 0usize..7) {
            prop_assume!(!a.is_zero());
            let p = RationalPolynomial::binomial(&a, &b, n);
            prop_assert_eq!(p.degree(), Some(n));
            let fact: BigInt = (1..=n).fold(BigInt::one(), |acc, i| acc * i);
            let expected = num_traits::pow(a.clone(), n) / Rational::from_integer(fact);
            prop_assert_eq!(p.leading_coeff().cloned(), Some(expected));
        }
    }
}
