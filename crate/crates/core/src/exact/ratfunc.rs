use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{pow_by_squaring, Field, Rational};
use super::poly::{wrap, Poly};
use super::ExactError;

/// Type-level name of the indeterminate of a rational function field.
pub trait Indeterminate:
    Copy + Clone + PartialEq + Eq + fmt::Debug + Default + Send + Sync + 'static
{
    const NAME: &'static str;
}

macro_rules! indeterminate {
    ($(#[$doc:meta])* $ty:ident, $name:literal) => {
        $(#[$doc])*
        #[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
        pub struct $ty;
        impl Indeterminate for $ty {
            const NAME: &'static str = $name;
        }
    };
}

indeterminate!(
    /// The deformation parameter `q`.
    Q,
    "q"
);
indeterminate!(
    /// The scale `eta` of a sigma-derivation.
    Eta,
    "eta"
);
indeterminate!(Q1, "q1");
indeterminate!(Q2, "q2");
indeterminate!(Q3, "q3");

/// Element of the rational function field `K(v)`, kept as a reduced fraction with
/// monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc<K: Field, V: Indeterminate> {
    num: Poly<K>,
    den: Poly<K>,
    _var: PhantomData<V>,
}

/// `Q(q)`, the default coefficient field.
pub type Fq = RatFunc<Rational, Q>;
/// `Q(q)(eta)`, used when the derivation scale is kept formal.
pub type FqEta = RatFunc<Fq, Eta>;
/// `Q(q1)(q2)`, coefficients for two-variable Laurent algebras.
pub type Fq1q2 = RatFunc<RatFunc<Rational, Q1>, Q2>;

impl<K: Field, V: Indeterminate> RatFunc<K, V> {
    /// Builds `num/den` and reduces it.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
        };
        let lead = den.lead().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self::raw(num, den))
    }

    fn raw(num: Poly<K>, den: Poly<K>) -> Self {
        RatFunc {
            num,
            den,
            _var: PhantomData,
        }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        Self::raw(p, Poly::one())
    }

    /// Embeds a base-field element as a constant.
    pub fn from_base(c: K) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate `v`.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    /// `Some(c)` if this is the constant `c`.
    pub fn as_base(&self) -> Option<K> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeffs().first().cloned().unwrap_or_else(K::zero))
        } else {
            None
        }
    }

    /// Substitutes a value for the indeterminate.
    pub fn eval(&self, value: &K) -> Result<K, ExactError> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(ExactError::Pole {
                value: value.to_string(),
            });
        }
        Ok(self.num.eval(value) * d.inv().unwrap())
    }

    /// Maps the base-field coefficients (e.g. to specialize an inner parameter).
    pub fn try_map_base<K2: Field>(
        &self,
        f: impl Fn(&K) -> Result<K2, ExactError>,
    ) -> Result<RatFunc<K2, V>, ExactError> {
        let num = self.num.try_map(&f)?;
        let den = self.den.try_map(&f)?;
        if den.is_zero() {
            return Err(ExactError::Pole {
                value: "coefficient specialization".to_string(),
            });
        }
        RatFunc::new(num, den)
    }
}

impl<K: Field, V: Indeterminate> Zero for RatFunc<K, V> {
    fn zero() -> Self {
        Self::raw(Poly::zero(), Poly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<K: Field, V: Indeterminate> One for RatFunc<K, V> {
    fn one() -> Self {
        Self::raw(Poly::one(), Poly::one())
    }
}

impl<'a, K: Field, V: Indeterminate> Add<&'a RatFunc<K, V>> for RatFunc<K, V> {
    type Output = Self;

    fn add(self, rhs: &'a Self) -> Self {
        if rhs.is_zero() {
            return self;
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Self::raw(num, self.den);
            }
            return Self::new(num, self.den).unwrap();
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::new(num, self.den.mul(&rhs.den)).unwrap()
    }
}

impl<'a, K: Field, V: Indeterminate> Mul<&'a RatFunc<K, V>> for RatFunc<K, V> {
    type Output = Self;

    fn mul(self, rhs: &'a Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if rhs.is_one() {
            return self;
        }
        if self.is_one() {
            return rhs.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::raw(self.num.mul(&rhs.num), self.den);
        }
        // Cross-cancel; the monic gcds keep both denominators monic.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = exact_quo(&self.num, &g1);
        let d2 = exact_quo(&rhs.den, &g1);
        let n2 = exact_quo(&rhs.num, &g2);
        let d1 = exact_quo(&self.den, &g2);
        Self::raw(n1.mul(&n2), d1.mul(&d2))
    }
}

fn exact_quo<K: Field>(a: &Poly<K>, g: &Poly<K>) -> Poly<K> {
    if g.is_one() {
        a.clone()
    } else {
        a.div_rem(g).unwrap().0
    }
}

impl<K: Field, V: Indeterminate> Neg for RatFunc<K, V> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::raw(self.num.neg(), self.den)
    }
}

impl<'a, K: Field, V: Indeterminate> Sub<&'a RatFunc<K, V>> for RatFunc<K, V> {
    type Output = Self;

    fn sub(self, rhs: &'a Self) -> Self {
        self + &(-rhs.clone())
    }
}

impl<K: Field, V: Indeterminate> Add for RatFunc<K, V> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<K: Field, V: Indeterminate> Sub for RatFunc<K, V> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self - &rhs
    }
}

impl<K: Field, V: Indeterminate> Mul for RatFunc<K, V> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

/// Panics on division by zero; use [`Field::div_checked`] for a fallible version.
impl<K: Field, V: Indeterminate> Div for RatFunc<K, V> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.div_checked(&rhs).expect("division by zero in rational function field")
    }
}

impl<K: Field, V: Indeterminate> Field for RatFunc<K, V> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lead_inv = self.num.lead().unwrap().inv().unwrap();
        Some(Self::raw(self.den.scale(&lead_inv), self.num.scale(&lead_inv)))
    }

    fn pow_i(&self, exp: i64) -> Option<Self> {
        if self.is_zero() {
            return (exp >= 0).then(|| if exp == 0 { Self::one() } else { Self::zero() });
        }
        // c v^a / v^b, the common case of scales and their inverses
        let (Some(a), Some(b)) = (self.num.monomial_degree(), self.den.monomial_degree()) else {
            return pow_by_squaring(self, exp);
        };
        let c = self.num.lead().unwrap().pow_i(exp)?;
        let e = (a as i64 - b as i64) * exp;
        let d = e.unsigned_abs() as usize;
        Some(if e >= 0 {
            Self::raw(Poly::monomial(c, d), Poly::one())
        } else {
            Self::raw(Poly::constant(c), Poly::monomial(K::one(), d))
        })
    }

    fn from_int(n: i64) -> Self {
        Self::from_base(K::from_int(n))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::from_base(K::from_rational(r))
    }

    fn variable(name: &str) -> Option<Self> {
        if name == V::NAME {
            Some(Self::var())
        } else {
            K::variable(name).map(Self::from_base)
        }
    }

    fn to_parts(&self) -> (String, String) {
        (self.num.fmt_with(V::NAME), self.den.fmt_with(V::NAME))
    }
}

impl<K: Field, V: Indeterminate> fmt::Display for RatFunc<K, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.fmt_with(V::NAME);
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let den = self.den.fmt_with(V::NAME);
        write!(f, "{}/{}", wrap(&num), wrap(&den))
    }
}
