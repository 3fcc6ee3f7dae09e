use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::field::{is_minus_one, Field, Rational};
use super::parse::parse_parts;
use super::poly::{wrap, Poly};
use super::ExactError;

/// Exponent monoid of a Laurent polynomial ring: `Z` for `k[t, 1/t]`, `Z^n` for
/// `k[z1^±1, ..., zn^±1]`.
pub trait Exponent: Ord + Clone + fmt::Debug + fmt::Display + Hash + Send + Sync + 'static {
    fn zero(arity: usize) -> Self;
    fn arity(&self) -> usize;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Monomial rendering, empty for the zero exponent.
    fn fmt_monomial(&self) -> String;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Exponent for i64 {
    fn zero(_arity: usize) -> Self {
        0
    }

    fn arity(&self) -> usize {
        1
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn fmt_monomial(&self) -> String {
        match *self {
            0 => String::new(),
            1 => "t".to_string(),
            n => format!("t^{n}"),
        }
    }

    fn to_json(&self) -> Value {
        Value::from(*self)
    }

    fn from_json(v: &Value) -> Option<Self> {
        v.as_i64()
    }
}

/// Integer exponent vector, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(pub Vec<i64>);

impl ExpVec {
    pub fn new(v: impl Into<Vec<i64>>) -> Self {
        ExpVec(v.into())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl Exponent for ExpVec {
    fn zero(arity: usize) -> Self {
        ExpVec(vec![0; arity])
    }

    fn arity(&self) -> usize {
        self.0.len()
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.0.len(), other.0.len(), "exponent arity mismatch");
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn neg(&self) -> Self {
        ExpVec(self.0.iter().map(|a| -a).collect())
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    fn fmt_monomial(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("z{}", i + 1)
                } else {
                    format!("z{}^{e}", i + 1)
                }
            })
            .collect();
        parts.join("*")
    }

    fn to_json(&self) -> Value {
        Value::from(self.0.clone())
    }

    fn from_json(v: &Value) -> Option<Self> {
        let arr = v.as_array()?;
        arr.iter().map(|x| x.as_i64()).collect::<Option<Vec<_>>>().map(ExpVec)
    }
}

/// Finitely supported map from exponents to nonzero coefficients: an element of a
/// (multi-variable) Laurent polynomial ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly<E: Exponent, F: Field> {
    terms: BTreeMap<E, F>,
    arity: usize,
}

/// `F[t, 1/t]`.
pub type Laurent<F> = LaurentPoly<i64, F>;
/// `F[z1^±1, ..., zn^±1]`.
pub type MultiLaurent<F> = LaurentPoly<ExpVec, F>;

impl<E: Exponent, F: Field> LaurentPoly<E, F> {
    pub fn zero(arity: usize) -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
            arity,
        }
    }

    pub fn monomial(exp: E, coeff: F) -> Self {
        let mut p = Self::zero(exp.arity());
        p.add_term(exp, coeff);
        p
    }

    pub fn constant(coeff: F, arity: usize) -> Self {
        Self::monomial(E::zero(arity), coeff)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(F::one(), arity)
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (E, F)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Adds `coeff * x^exp` in place, pruning a cancelled term.
    pub fn add_term(&mut self, exp: E, coeff: F) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(exp.arity(), self.arity);
        match self.terms.remove(&exp) {
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(exp, sum);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &E) -> F {
        self.terms.get(exp).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (E, F)> {
        self.terms.into_iter()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c)).collect(),
            arity: self.arity,
        }
    }

    /// Multiplication by the monomial `x^exp`.
    pub fn shift(&self, exp: &E) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (e.add(exp), a.clone())).collect(),
            arity: self.arity,
        }
    }

    pub fn try_map_coeffs<F2: Field>(
        &self,
        f: impl Fn(&F) -> Result<F2, ExactError>,
    ) -> Result<LaurentPoly<E, F2>, ExactError> {
        let mut out = LaurentPoly::zero(self.arity);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Serializes as `{"terms": [{"exp": .., "coeff": {"num": .., "den": ..}}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let (num, den) = c.to_parts();
                serde_json::json!({"exp": e.to_json(), "coeff": {"num": num, "den": den}})
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(v: &Value, arity: usize) -> Result<Self, ExactError> {
        #[derive(Deserialize)]
        struct Coeff {
            num: String,
            den: String,
        }
        #[derive(Deserialize)]
        struct Term {
            exp: Value,
            coeff: Coeff,
        }
        #[derive(Deserialize)]
        struct Doc {
            terms: Vec<Term>,
        }
        let doc: Doc =
            serde_json::from_value(v.clone()).map_err(|e| ExactError::Parse(e.to_string()))?;
        let mut out = Self::zero(arity);
        for t in doc.terms {
            let exp = E::from_json(&t.exp)
                .filter(|e| e.arity() == arity)
                .ok_or_else(|| ExactError::Parse(format!("bad exponent {}", t.exp)))?;
            out.add_term(exp, parse_parts(&t.coeff.num, &t.coeff.den)?);
        }
        Ok(out)
    }
}

impl<F: Field> LaurentPoly<i64, F> {
    /// `c * t^n`.
    pub fn term(n: i64, c: F) -> Self {
        Self::monomial(n, c)
    }

    pub fn t_pow(n: i64) -> Self {
        Self::monomial(n, F::one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn to_poly(&self, offset: i64) -> Poly<F> {
        let len = (self.max_exp().unwrap() - offset + 1) as usize;
        let mut coeffs = vec![F::zero(); len];
        for (e, c) in &self.terms {
            coeffs[(e - offset) as usize] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    fn from_poly(p: &Poly<F>, offset: i64) -> Self {
        Self::from_terms(
            1,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + offset, c.clone())),
        )
    }

    /// Exact quotient `self / divisor` in `F[t, 1/t]`.
    ///
    /// Monomials are units, so the divisor's monomial content is stripped before
    /// polynomial long division.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, ExactError> {
        let db = divisor.min_exp().ok_or(ExactError::DivisionByZero)?;
        let Some(da) = self.min_exp() else {
            return Ok(Self::zero(1));
        };
        let a = self.to_poly(da);
        let b = divisor.to_poly(db);
        let (q, r) = a.div_rem(&b).ok_or(ExactError::DivisionByZero)?;
        if !r.is_zero() {
            return Err(ExactError::NotExact {
                remainder: Self::from_poly(&r, da).to_string(),
            });
        }
        Ok(Self::from_poly(&q, da - db))
    }
}

/// Specializes the deformation parameter of every coefficient.
pub fn specialize_q<E: Exponent, V: super::ratfunc::Indeterminate>(
    a: &LaurentPoly<E, super::ratfunc::RatFunc<Rational, V>>,
    value: &Rational,
) -> Result<LaurentPoly<E, Rational>, ExactError> {
    a.try_map_coeffs(|c| c.eval(value))
}

impl<E: Exponent, F: Field> fmt::Display for LaurentPoly<E, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mono = e.fmt_monomial();
            let term = if mono.is_empty() {
                wrap(&c.to_string())
            } else if c.is_one() {
                mono
            } else if is_minus_one(c) {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", wrap(&c.to_string()))
            };
            if first {
                f.write_str(&term)?;
                first = false;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl<'a, E: Exponent, F: Field> Add for &'a LaurentPoly<E, F> {
    type Output = LaurentPoly<E, F>;

    fn add(self, rhs: Self) -> LaurentPoly<E, F> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, E: Exponent, F: Field> Sub for &'a LaurentPoly<E, F> {
    type Output = LaurentPoly<E, F>;

    fn sub(self, rhs: Self) -> LaurentPoly<E, F> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a, E: Exponent, F: Field> Mul for &'a LaurentPoly<E, F> {
    type Output = LaurentPoly<E, F>;

    fn mul(self, rhs: Self) -> LaurentPoly<E, F> {
        let mut out = LaurentPoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1.clone() * c2);
            }
        }
        out
    }
}

impl<'a, E: Exponent, F: Field> Neg for &'a LaurentPoly<E, F> {
    type Output = LaurentPoly<E, F>;

    fn neg(self) -> LaurentPoly<E, F> {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
            arity: self.arity,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_field;
    use crate::exact::ratfunc::Fq;

    fn fq(s: &str) -> Fq {
        parse_field(s).unwrap()
    }

    fn lp(terms: &[(i64, &str)]) -> Laurent<Fq> {
        Laurent::from_terms(1, terms.iter().map(|(e, c)| (*e, fq(c))))
    }

    /// Naive convolution over a dense window, independent of the map-based product.
    fn naive_mul(a: &[(i64, &str)], b: &[(i64, &str)]) -> Laurent<Fq> {
        let mut acc: Vec<(i64, Fq)> = Vec::new();
        for e in -20..=20 {
            let mut c = Fq::from_int(0);
            for (ea, ca) in a {
                for (eb, cb) in b {
                    if ea + eb == e {
                        c = c + fq(ca) * fq(cb);
                    }
                }
            }
            acc.push((e, c));
        }
        Laurent::from_terms(1, acc)
    }

    #[test]
    fn product_examples() {
        let a = lp(&[(1, "1"), (-1, "1")]);
        assert_eq!(&a * &Laurent::t_pow(1), lp(&[(2, "1"), (0, "1")]));
        assert_eq!(&a * &Laurent::one(1), a);
        let x = [(0, "1"), (1, "-q")];
        let y = [(0, "1"), (1, "q"), (2, "q^2")];
        let prod = &lp(&x) * &lp(&y);
        assert_eq!(prod, naive_mul(&x, &y));
        assert_eq!(prod, lp(&[(0, "1"), (3, "-q^3")]));
    }

    #[test]
    fn div_exact_examples() {
        let a = lp(&[(3, "1"), (6, "-q^3")]);
        let b = lp(&[(1, "1"), (2, "-q")]);
        let c = a.div_exact(&b).unwrap();
        assert_eq!(c, lp(&[(2, "1"), (3, "q"), (4, "q^2")]));
        assert_eq!(&c * &b, a);
        assert_eq!(a.div_exact(&a).unwrap(), Laurent::one(1));
        let err = lp(&[(2, "1"), (0, "1")]).div_exact(&lp(&[(1, "1"), (0, "-1")]));
        match err {
            Err(ExactError::NotExact { remainder }) => assert_eq!(remainder, "2"),
            other => panic!("expected NotExact, got {other:?}"),
        }
        assert!(matches!(a.div_exact(&Laurent::zero(1)), Err(ExactError::DivisionByZero)));
    }

    #[test]
    fn specialization_examples() {
        let three = lp(&[(3, "1 + q + q^2")]);
        let s = specialize_q(&three, &Rational::from_int(1)).unwrap();
        assert_eq!(s, Laurent::term(3, Rational::from_int(3)));
        let s0 = specialize_q(&lp(&[(1, "1"), (2, "q")]), &Rational::from_int(0)).unwrap();
        assert_eq!(s0, Laurent::term(1, Rational::from_int(1)));
        let pole = specialize_q(&lp(&[(0, "1/(1 - q)")]), &Rational::from_int(1));
        assert!(matches!(pole, Err(ExactError::Pole { .. })));
    }

    #[test]
    fn display_and_json() {
        let a = lp(&[(-1, "1/q"), (0, "-2"), (3, "1 + q")]);
        assert_eq!(a.to_string(), "1/q*t^-1 - 2 + (1 + q)*t^3");
        let back = Laurent::<Fq>::from_json(&a.to_json(), 1).unwrap();
        assert_eq!(back, a);
        let m = MultiLaurent::<Fq>::from_terms(2, [(ExpVec::new([1, -2]), fq("q"))]);
        assert_eq!(m.to_string(), "q*z1*z2^-2");
        assert_eq!(MultiLaurent::<Fq>::from_json(&m.to_json(), 2).unwrap(), m);
        assert!(MultiLaurent::<Fq>::from_json(&m.to_json(), 3).is_err());
    }
}
