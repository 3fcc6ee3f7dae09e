use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use serde_json::{Map, Value};

use crate::exact::Field;

/// Index of a basis element: totally ordered for canonical printing.
pub trait BasisKey: Ord + Clone + fmt::Debug + fmt::Display + Hash + Send + Sync + 'static {}

impl<T: Ord + Clone + fmt::Debug + fmt::Display + Hash + Send + Sync + 'static> BasisKey for T {}

/// Finitely supported linear combination of basis keys. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector<K: BasisKey, F: Field> {
    terms: BTreeMap<K, F>,
}

impl<K: BasisKey, F: Field> Default for Vector<K, F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: BasisKey, F: Field> Vector<K, F> {
    pub fn zero() -> Self {
        Vector { terms: BTreeMap::new() }
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, F::one())
    }

    pub fn term(k: K, c: F) -> Self {
        let mut v = Self::zero();
        v.add_term(k, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, F)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, k: K, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone() * c);
        }
    }

    pub fn coeff(&self, k: &K) -> F {
        self.terms.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &F)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
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

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Vector {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c)).collect(),
        }
    }

    /// Linear extension of a map given on basis keys.
    pub fn map_linear<K2: BasisKey>(&self, f: impl Fn(&K) -> Vector<K2, F>) -> Vector<K2, F> {
        let mut out = Vector::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabels keys (injectively).
    pub fn map_keys<K2: BasisKey>(&self, f: impl Fn(&K) -> K2) -> Vector<K2, F> {
        Vector::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Bilinear extension of a map given on pairs of basis keys.
    pub fn bilinear<K2: BasisKey, K3: BasisKey>(
        &self,
        other: &Vector<K2, F>,
        f: impl Fn(&K, &K2) -> Vector<K3, F>,
    ) -> Vector<K3, F> {
        let mut out = Vector::zero();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                out.add_scaled(&f(x, y), &(a.clone() * b));
            }
        }
        out
    }

    /// `{"key": "coefficient", ...}`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, c) in &self.terms {
            m.insert(k.to_string(), Value::String(c.to_string()));
        }
        Value::Object(m)
    }
}

impl<'a, K: BasisKey, F: Field> Add for &'a Vector<K, F> {
    type Output = Vector<K, F>;
    fn add(self, rhs: Self) -> Vector<K, F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &F::one());
        out
    }
}

impl<'a, K: BasisKey, F: Field> Sub for &'a Vector<K, F> {
    type Output = Vector<K, F>;
    fn sub(self, rhs: Self) -> Vector<K, F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-F::one());
        out
    }
}

impl<'a, K: BasisKey, F: Field> Neg for &'a Vector<K, F> {
    type Output = Vector<K, F>;
    fn neg(self) -> Vector<K, F> {
        self.scale(&-F::one())
    }
}

impl<K: BasisKey, F: Field> fmt::Display for Vector<K, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let text = c.to_string();
            let term = if c.is_one() {
                k.to_string()
            } else if text == "-1" {
                format!("-{k}")
            } else if text.contains(' ') {
                format!("({text})*{k}")
            } else {
                format!("{text}*{k}")
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
