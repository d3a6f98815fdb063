//! Closed forms and convolution recurrences for the tree counts.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Rational;
use crate::{Error, Result};

/// `binom(n, k)` for nonnegative arguments.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn exact_quotient(num: BigInt, den: BigInt, context: &'static str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision(context))
    }
}

fn integer_of(r: Rational, context: &'static str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::InexactDivision(context))
    }
}

/// The four textbook expressions for the nth Catalan number:
/// `(2n)!/((n+1)! n!)`, `binom(2n+1, n)/(2n+1)`, `binom(2n, n-1)/n` and
/// `binom(2n, n)/(n+1)`. The third is undefined at `n = 0` and reported as
/// `None`.
pub fn catalan_forms(n: u64) -> [Option<BigInt>; 4] {
    let fact = |j: u64| (1..=j).fold(BigInt::one(), |acc, i| acc * i);
    let ratio_of_factorials = fact(2 * n) / (fact(n + 1) * fact(n));
    let odd_form = binomial(2 * n + 1, n) / (2 * n + 1);
    let shifted_form = (n > 0).then(|| binomial(2 * n, n - 1) / n);
    let central_form = binomial(2 * n, n) / (n + 1);
    [Some(ratio_of_factorials), Some(odd_form), shifted_form, Some(central_form)]
}

pub fn catalan(n: u64) -> BigInt {
    let c = binomial(2 * n, n) / (n + 1);
    debug_assert!(catalan_forms(n).iter().flatten().all(|f| *f == c));
    c
}

/// Number of complete m-ary trees with `n` internal vertices,
/// `binom(mn+1, n)/(mn+1)`.
pub fn catalan_m(m: u64, n: u64) -> BigInt {
    let top = m * n + 1;
    exact_quotient(binomial(top, n), BigInt::from(top), "catalan_m").expect("m-ary count is integral")
}

/// Number of (k,m)-ary trees of order `n`, `binom((mn+1)k, n)/(mn+1)`.
pub fn catalan_km(k: u64, m: u64, n: u64) -> BigInt {
    let base = m * n + 1;
    exact_quotient(binomial(base * k, n), BigInt::from(base), "catalan_km").expect("(k,m) count is integral")
}

/// Coefficient `target` of `seq^power`, where `seq` is read as a series.
pub(crate) fn convolution_power<T>(seq: &[T], power: usize, target: usize) -> T
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let width = target + 1;
    let mut acc: Vec<T> = vec![T::zero(); width];
    acc[0] = T::one();
    for _ in 0..power {
        let mut next = vec![T::zero(); width];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, s) in seq.iter().enumerate().take(width - i) {
                next[i + j] = &next[i + j] + &(a * s);
            }
        }
        acc = next;
    }
    acc.swap_remove(target)
}

/// Memo table for the circled-crucial-vertex recurrence
///
/// `C(n) = ((mn+1)k + 1 - n) / ((m+1)n) * sum_{i_1+..+i_{m+1} = n-1} C(i_1)...C(i_{m+1})`
///
/// with `C(0) = 1`.
#[derive(Debug, Clone)]
pub struct KmRecurrence {
    k: u64,
    m: u64,
    table: Vec<BigInt>,
}

impl KmRecurrence {
    pub fn new(k: u64, m: u64) -> Self {
        KmRecurrence { k, m, table: vec![BigInt::one()] }
    }

    pub fn value(&mut self, n: u64) -> Result<BigInt> {
        let (k, m) = (self.k, self.m);
        while (self.table.len() as u64) <= n {
            let j = self.table.len() as u64;
            let conv = convolution_power(&self.table, (m + 1) as usize, (j - 1) as usize);
            let num = BigInt::from((m * j + 1) * k + 1) - BigInt::from(j);
            let prefactor = Rational::new(num, BigInt::from((m + 1) * j));
            let next = integer_of(prefactor * Rational::from_integer(conv), "catalan_km_recurrence")?;
            self.table.push(next);
        }
        Ok(self.table[n as usize].clone())
    }
}

pub fn catalan_km_recurrence(k: u64, m: u64, n: u64) -> Result<BigInt> {
    KmRecurrence::new(k, m).value(n)
}

/// `C_{k,2}(n)` by the first-tree recurrence
/// `C(n) = sum_{i=1}^n ((2i-1)k - (i-1))/i * C(i-1) C(n-i)`.
pub fn catalan_k2_recurrence(k: u64, n: u64) -> Result<BigInt> {
    let mut table = vec![BigInt::one()];
    for j in 1..=n as usize {
        let mut sum = Rational::zero();
        for i in 1..=j {
            let weight = Rational::new(
                BigInt::from((2 * i as u64 - 1) * k) - BigInt::from(i - 1),
                BigInt::from(i),
            );
            sum += weight * Rational::from_integer(&table[i - 1] * &table[j - i]);
        }
        table.push(integer_of(sum, "catalan_k2_recurrence")?);
    }
    Ok(table.swap_remove(n as usize))
}

/// Closed right-hand sides of the special-value identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecialIdentity {
    /// `prod_{i<n} (mi + 1)`: increasing (m+1)-ary trees.
    ProdMiPlus1,
    /// `(2n-1)!!`: increasing plane forests.
    ForestDoubleFactorial,
    /// `(m+1)^n (mn+1)^(n-1) / n!`.
    MaryXEqM,
    /// `(2n+1)^(n-1) / n!`.
    ForestXEq2,
}

impl SpecialIdentity {
    pub const ALL: [SpecialIdentity; 4] = [
        SpecialIdentity::ProdMiPlus1,
        SpecialIdentity::ForestDoubleFactorial,
        SpecialIdentity::MaryXEqM,
        SpecialIdentity::ForestXEq2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialIdentity::ProdMiPlus1 => "prod-mi-plus-1",
            SpecialIdentity::ForestDoubleFactorial => "forest-double-factorial",
            SpecialIdentity::MaryXEqM => "mary-x-eq-m",
            SpecialIdentity::ForestXEq2 => "forest-x-eq-2",
        }
    }

    pub fn is_forest(self) -> bool {
        matches!(self, SpecialIdentity::ForestDoubleFactorial | SpecialIdentity::ForestXEq2)
    }
}

impl fmt::Display for SpecialIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpecialIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SpecialIdentity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Rational power `base^exp` allowing `exp = -1` (only reached at `n = 0`).
fn rational_pow(base: u64, exp: i64) -> Rational {
    let b = Rational::from_integer(BigInt::from(base));
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b.recip(), (-exp) as usize)
    }
}

/// Right-hand side of a special-value identity. `m` is ignored by the forest
/// identities.
pub fn special_rhs(identity: SpecialIdentity, m: u64, n: u64) -> Rational {
    match identity {
        SpecialIdentity::ProdMiPlus1 => {
            Rational::from_integer((0..n).fold(BigInt::one(), |acc, i| acc * (m * i + 1)))
        }
        SpecialIdentity::ForestDoubleFactorial => {
            Rational::from_integer((0..n).fold(BigInt::one(), |acc, i| acc * (2 * i + 1)))
        }
        SpecialIdentity::MaryXEqM => {
            rational_pow(m + 1, n as i64) * rational_pow(m * n + 1, n as i64 - 1)
                / Rational::from_integer(factorial(n))
        }
        SpecialIdentity::ForestXEq2 => {
            rational_pow(2 * n + 1, n as i64 - 1) / Rational::from_integer(factorial(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(3), big(5));
        assert_eq!(catalan(6), big(132));
        for n in 0..=30 {
            let c = catalan(n);
            for form in catalan_forms(n).into_iter().flatten() {
                assert_eq!(form, c, "n = {n}");
            }
        }
    }

    #[test]
    fn mary_counts() {
        assert_eq!(catalan_m(2, 3), big(5));
        assert_eq!(catalan_m(3, 2), big(3));
        assert_eq!(catalan_m(1, 7), big(1));
        for m in 1..5 {
            for n in 1..15 {
                assert_eq!(catalan_m(m, n), binomial(m * n, n - 1) / n);
            }
        }
    }

    #[test]
    fn km_counts() {
        assert_eq!(catalan_km(3, 2, 3), big(190));
        assert_eq!(catalan_km(3, 2, 1), big(3));
        assert_eq!(catalan_km(3, 2, 2), big(21));
        assert_eq!(catalan_km(3, 3, 3), big(406));
        assert_eq!(catalan_km(2, 1, 2), big(5));
        assert_eq!(catalan_km(2, 2, 3), big(52));
        for k in 1..5 {
            for m in 1..5 {
                assert_eq!(catalan_km(k, m, 0), big(1));
            }
        }
    }

    #[test]
    fn reduction_identities() {
        for n in 0..=30 {
            assert_eq!(catalan_km(1, 2, n), catalan(n));
            assert_eq!(catalan_km(2, 1, n), catalan(n + 1));
            for m in 1..5 {
                assert_eq!(catalan_km(1, m, n), catalan_m(m, n));
                assert_eq!(catalan_km(m, 1, n), catalan_m(m, n + 1));
            }
        }
    }

    #[test]
    fn recurrences_match_closed_form() {
        assert_eq!(catalan_km_recurrence(3, 2, 3).unwrap(), big(190));
        assert_eq!(catalan_k2_recurrence(1, 4).unwrap(), big(14));
        assert_eq!(catalan_k2_recurrence(2, 3).unwrap(), big(52));
        assert_eq!(catalan_k2_recurrence(3, 2).unwrap(), catalan_km(3, 2, 2));
        for k in 1..=4 {
            for m in 1..=4 {
                let mut rec = KmRecurrence::new(k, m);
                for n in 0..=30 {
                    assert_eq!(rec.value(n).unwrap(), catalan_km(k, m, n), "({k},{m},{n})");
                }
            }
            for n in 0..=30 {
                assert_eq!(catalan_k2_recurrence(k, n).unwrap(), catalan_km(k, 2, n));
            }
        }
        for n in 0..=12 {
            assert_eq!(catalan_km_recurrence(1, 2, n).unwrap(), catalan(n));
        }
    }

    #[test]
    fn special_right_sides() {
        assert_eq!(special_rhs(SpecialIdentity::ForestDoubleFactorial, 0, 3), Rational::from_integer(big(15)));
        for n in 0..8 {
            assert_eq!(special_rhs(SpecialIdentity::ProdMiPlus1, 1, n), Rational::from_integer(factorial(n)));
        }
        assert_eq!(special_rhs(SpecialIdentity::MaryXEqM, 1, 3), Rational::new(big(64), big(3)));
        // x = m identity at n = 0 is the empty sum: 1.
        assert_eq!(special_rhs(SpecialIdentity::MaryXEqM, 2, 0), Rational::one());
        assert_eq!(special_rhs(SpecialIdentity::ForestXEq2, 0, 0), Rational::one());
        assert_eq!("forest-x-eq-2".parse::<SpecialIdentity>().unwrap(), SpecialIdentity::ForestXEq2);
        assert!(matches!("nope".parse::<SpecialIdentity>(), Err(Error::UnknownIdentity(_))));
    }
}
