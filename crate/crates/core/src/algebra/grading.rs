use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::AlgebraError;
use crate::exact::{parse_field, Field};
use crate::report::{triples, Report};

/// Element of `Z^r + Z/m_1 + ... + Z/m_t`, free components first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(pub Vec<i64>);

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Finitely generated abelian group in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeGroup {
    rank: usize,
    moduli: Vec<i64>,
}

impl GradeGroup {
    pub fn new(rank: usize, moduli: Vec<i64>) -> Result<Self, AlgebraError> {
        if moduli.iter().any(|&m| m < 2) {
            return Err(AlgebraError::Descriptor("torsion moduli must be at least 2".into()));
        }
        Ok(GradeGroup { rank, moduli })
    }

    pub fn trivial() -> Self {
        GradeGroup { rank: 0, moduli: Vec::new() }
    }

    pub fn z2() -> Self {
        GradeGroup { rank: 0, moduli: vec![2] }
    }

    pub fn z2_z2() -> Self {
        GradeGroup { rank: 0, moduli: vec![2, 2] }
    }

    pub fn len(&self) -> usize {
        self.rank + self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Canonical representative: torsion slots in `[0, m)`.
    pub fn reduce(&self, g: &Grade) -> Result<Grade, AlgebraError> {
        if g.0.len() != self.len() {
            return Err(AlgebraError::Descriptor(format!(
                "grade {g} has {} components, expected {}",
                g.0.len(),
                self.len()
            )));
        }
        let mut v = g.0.clone();
        for (i, m) in self.moduli.iter().enumerate() {
            v[self.rank + i] = v[self.rank + i].rem_euclid(*m);
        }
        Ok(Grade(v))
    }

    pub fn zero(&self) -> Grade {
        Grade(vec![0; self.len()])
    }

    pub fn add(&self, a: &Grade, b: &Grade) -> Grade {
        let sum = Grade(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
        self.reduce(&sum).expect("grade arity")
    }

    pub fn neg(&self, a: &Grade) -> Grade {
        self.reduce(&Grade(a.0.iter().map(|x| -x).collect())).expect("grade arity")
    }

    /// Every element, when the group is finite.
    pub fn elements(&self) -> Option<Vec<Grade>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..m).map(move |x| {
                        let mut v = p.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        Some(out.into_iter().map(Grade).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({"rank": self.rank, "moduli": self.moduli})
    }

    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let rank = v.get("rank").and_then(Value::as_u64).unwrap_or(0) as usize;
        let moduli: Vec<i64> = match v.get("moduli") {
            Some(m) => serde_json::from_value(m.clone()).map_err(|e| AlgebraError::Descriptor(e.to_string()))?,
            None => Vec::new(),
        };
        Self::new(rank, moduli)
    }
}

/// A map `eps: G x G -> F`.
#[derive(Clone, Debug, PartialEq)]
pub enum CommutationFactor<F: Field> {
    /// `eps = 1`.
    Trivial,
    /// `eps(a, b) = (-1)^(a^T M b)`.
    Sign(Vec<Vec<i64>>),
    /// Explicit values on pairs of canonical grades.
    Table(BTreeMap<(Grade, Grade), F>),
}

impl<F: Field> CommutationFactor<F> {
    /// `(-1)^(ab)` on `Z/2`.
    pub fn super_sign() -> Self {
        CommutationFactor::Sign(vec![vec![1]])
    }

    /// `(-1)^(a1 b2 + a2 b1)` on `Z/2 x Z/2`.
    pub fn z2_z2_sign() -> Self {
        CommutationFactor::Sign(vec![vec![0, 1], vec![1, 0]])
    }

    pub fn eval(&self, a: &Grade, b: &Grade) -> Option<F> {
        match self {
            CommutationFactor::Trivial => Some(F::one()),
            CommutationFactor::Sign(m) => {
                let mut e = 0i64;
                for (i, row) in m.iter().enumerate() {
                    for (j, mij) in row.iter().enumerate() {
                        e += a.0.get(i)? * mij * b.0.get(j)?;
                    }
                }
                Some(if e.rem_euclid(2) == 0 { F::one() } else { -F::one() })
            }
            CommutationFactor::Table(t) => t.get(&(a.clone(), b.clone())).cloned(),
        }
    }

    /// The three axioms on every triple of `grades` (all of `G` when it is finite and no
    /// sample is given).
    pub fn check_axioms(&self, group: &GradeGroup, grades: Option<&[Grade]>) -> Report {
        let sample: Vec<Grade> = match grades {
            Some(g) => g.iter().map(|x| group.reduce(x).expect("grade arity")).collect(),
            None => group.elements().unwrap_or_default(),
        };
        let mut report = Report::new("commutation-factor")
            .with_window(Value::Array(sample.iter().map(|g| Value::String(g.to_string())).collect()));
        let ev = |a: &Grade, b: &Grade| self.eval(a, b);
        for (a, b, c) in triples(&sample) {
            let ids = vec![a.to_string(), b.to_string(), c.to_string()];
            let (Some(ab), Some(ba), Some(ac), Some(bc)) = (ev(&a, &b), ev(&b, &a), ev(&a, &c), ev(&b, &c)) else {
                report.fail("defined", &ids, "undefined".into(), "value".into());
                continue;
            };
            let (Some(apb_c), Some(a_bpc)) = (ev(&group.add(&a, &b), &c), ev(&a, &group.add(&b, &c))) else {
                report.fail("defined", &ids, "undefined".into(), "value".into());
                continue;
            };
            report.check("eps(a,b)eps(b,a)=1", &ids, &(ab.clone() * &ba), &F::one());
            report.check("eps(a+b,c)=eps(a,c)eps(b,c)", &ids, &apb_c, &(ac.clone() * &bc));
            report.check("eps(a,b+c)=eps(a,b)eps(a,c)", &ids, &a_bpc, &(ab * &ac));
        }
        report
    }

    pub fn to_json(&self) -> Value {
        match self {
            CommutationFactor::Trivial => json!("trivial"),
            CommutationFactor::Sign(m) => json!({"sign": m}),
            CommutationFactor::Table(t) => {
                let entries: Vec<Value> = t
                    .iter()
                    .map(|((a, b), v)| json!({"a": a.0, "b": b.0, "value": v.to_string()}))
                    .collect();
                json!({"table": entries})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let bad = |e: String| AlgebraError::Descriptor(format!("commutation factor: {e}"));
        match v {
            Value::String(s) if s == "trivial" => Ok(CommutationFactor::Trivial),
            Value::String(s) if s == "super" => Ok(Self::super_sign()),
            Value::Object(o) if o.contains_key("sign") => {
                Ok(CommutationFactor::Sign(serde_json::from_value(o["sign"].clone()).map_err(|e| bad(e.to_string()))?))
            }
            Value::Object(o) if o.contains_key("table") => {
                let entries = o["table"].as_array().ok_or_else(|| bad("table must be a list".into()))?;
                let mut t = BTreeMap::new();
                for e in entries {
                    let a: Vec<i64> = serde_json::from_value(e["a"].clone()).map_err(|e| bad(e.to_string()))?;
                    let b: Vec<i64> = serde_json::from_value(e["b"].clone()).map_err(|e| bad(e.to_string()))?;
                    let value = e["value"].as_str().ok_or_else(|| bad("value must be a string".into()))?;
                    t.insert((Grade(a), Grade(b)), parse_field(value)?);
                }
                Ok(CommutationFactor::Table(t))
            }
            other => Err(bad(format!("unrecognized {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn z2_reduction_and_elements() {
        let g = GradeGroup::z2_z2();
        assert_eq!(g.reduce(&Grade(vec![3, -1])).unwrap(), Grade(vec![1, 1]));
        assert_eq!(g.elements().unwrap().len(), 4);
        assert!(GradeGroup::new(1, vec![]).unwrap().elements().is_none());
    }

    #[test]
    fn standard_factors_satisfy_axioms() {
        let super_eps = CommutationFactor::<Rational>::super_sign();
        assert!(super_eps.check_axioms(&GradeGroup::z2(), None).passed());
        let color = CommutationFactor::<Rational>::z2_z2_sign();
        let r = color.check_axioms(&GradeGroup::z2_z2(), None);
        assert!(r.passed());
        assert_eq!(r.checked, 64 * 3);
        let ones = CommutationFactor::<Rational>::Trivial;
        assert!(ones.check_axioms(&GradeGroup::z2(), None).passed());
    }

    #[test]
    fn non_bimultiplicative_table_fails() {
        let g = GradeGroup::z2();
        let mut t = BTreeMap::new();
        for a in 0..2 {
            for b in 0..2 {
                t.insert((Grade(vec![a]), Grade(vec![b])), Rational::from_integer(if a + b == 1 { 2 } else { 1 }.into()));
            }
        }
        let eps = CommutationFactor::Table(t);
        assert!(!eps.check_axioms(&g, None).passed());
    }

    #[test]
    fn json_round_trip() {
        let eps = CommutationFactor::<Rational>::z2_z2_sign();
        assert_eq!(CommutationFactor::from_json(&eps.to_json()).unwrap(), eps);
    }
}
