use super::field::{is_minus_one, Field};

/// Dense univariate polynomial over a field, coefficients stored low degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<K: Field> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::from_coeffs(vec![K::zero(), K::one()])
    }

    pub fn monomial(c: K, deg: usize) -> Self {
        let mut coeffs = vec![K::zero(); deg];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.clone() + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a.clone() * b;
                let slot = std::mem::replace(&mut out[i + j], K::zero());
                out[i + j] = slot + prod;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Euclidean division; `None` when the divisor is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dlead_inv = divisor.lead()?.inv()?;
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![K::zero(); rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let c = rem[i + ddeg].clone() * &dlead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let slot = std::mem::replace(&mut rem[i + j], K::zero());
                rem[i + j] = slot - c.clone() * d;
            }
            quot[i] = c;
        }
        rem.truncate(ddeg);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `Some(d)` if this is `c x^d` for some nonzero `c`.
    pub(crate) fn monomial_degree(&self) -> Option<usize> {
        let d = self.degree()?;
        (self.order() == Some(d)).then_some(d)
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead().and_then(|l| l.inv()) {
            Some(inv) if !inv.is_one() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if let Some(d) = self.monomial_degree() {
            return Self::monomial(K::one(), d.min(other.order().unwrap_or(d)));
        }
        if let Some(d) = other.monomial_degree() {
            return Self::monomial(K::one(), d.min(self.order().unwrap_or(d)));
        }
        let (mut a, mut b) = (self.monic(), other.monic());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Self::one();
            }
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc * x + c)
    }

    pub fn try_map<K2: Field, E>(&self, f: impl Fn(&K) -> Result<K2, E>) -> Result<Poly<K2>, E> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Renders with the given variable name, low degree first, e.g. `1 - q^2`.
    pub fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match deg {
                0 => String::new(),
                1 => var.to_string(),
                d => format!("{var}^{d}"),
            };
            let term = if mono.is_empty() {
                wrap(&c.to_string())
            } else if c.is_one() {
                mono
            } else if is_minus_one(c) {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", wrap(&c.to_string()))
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

/// Parenthesizes compound expressions so they can be embedded in a product.
pub(crate) fn wrap(s: &str) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s.to_string()
    }
}
