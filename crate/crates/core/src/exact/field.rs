use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rationals, the prime field of every coefficient field used here.
pub type Rational = BigRational;

/// A commutative field with exact, canonical arithmetic.
///
/// Equality is structural: implementors keep values in a normal form so that
/// `a == b` decides equality of field elements.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// Resolves a named indeterminate of this field (or of a base field it extends).
    fn variable(name: &str) -> Option<Self>;

    /// Numerator and denominator rendered as polynomial strings.
    fn to_parts(&self) -> (String, String);

    /// Checked division.
    fn div_checked(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    /// Integer power; negative exponents invert (`None` if `self` is zero).
    fn pow_i(&self, exp: i64) -> Option<Self> {
        pow_by_squaring(self, exp)
    }
}

pub(crate) fn pow_by_squaring<F: Field>(x: &F, exp: i64) -> Option<F> {
    let base = if exp < 0 { x.inv()? } else { x.clone() };
    let mut e = exp.unsigned_abs();
    let mut acc = F::one();
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = sq.clone() * &sq;
        }
    }
    Some(acc)
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn variable(_name: &str) -> Option<Self> {
        None
    }

    fn to_parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

/// `true` for the rational `-1`, used when printing signs.
pub(crate) fn is_minus_one<F: Field>(x: &F) -> bool {
    (x.clone() + F::one()).is_zero()
}

/// The q-integer `{n}_q = (1 - q^n)/(1 - q)`, computed as a finite sum so that it is
/// defined at `q = 1` (where it equals `n`). Negative `n` gives `-(q^n + ... + q^-1)`.
pub fn q_integer<F: Field>(q: &F, n: i64) -> F {
    let mut acc = F::zero();
    if n >= 0 {
        let mut p = F::one();
        for _ in 0..n {
            acc = acc + &p;
            p = p * q;
        }
    } else {
        let qinv = q.inv().expect("q-integer with negative index needs q != 0");
        let mut p = qinv.clone();
        for _ in 0..(-n) {
            acc = acc - &p;
            p = p * &qinv;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_is_reduced() {
        let x = r(6, -4);
        assert_eq!(x.to_parts(), ("-3".to_string(), "2".to_string()));
        assert_eq!(r(0, 5).to_parts(), ("0".to_string(), "1".to_string()));
    }

    #[test]
    fn pow_negative() {
        assert_eq!(r(2, 1).pow_i(-3), Some(r(1, 8)));
        assert_eq!(Rational::zero().pow_i(-1), None);
        assert_eq!(Rational::zero().pow_i(0), Some(Rational::one()));
    }

    #[test]
    fn q_integer_at_one_is_n() {
        let one = Rational::one();
        for n in -5..=5 {
            assert_eq!(q_integer(&one, n), Rational::from_int(n));
        }
    }

    #[test]
    fn q_integer_matches_quotient() {
        let q = r(3, 1);
        for n in -4..=4 {
            let lhs = q_integer(&q, n);
            let rhs = (Rational::one() - q.pow_i(n).unwrap()) / (Rational::one() - q.clone());
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }
}
