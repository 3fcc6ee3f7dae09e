use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::grading::{CommutationFactor, Grade, GradeGroup};
use super::{AlgebraError, QhlAlgebra, Vector};
use crate::exact::{parse_field, Field};

/// How `omega` is evaluated on a pair of basis keys.
#[derive(Clone, Debug, PartialEq)]
pub enum OmegaRule<F: Field> {
    Constant(F),
    /// `omega(x, y) = -eps(grade x, grade y)`.
    Color(CommutationFactor<F>),
    /// Explicit values; pairs not listed lie outside the domain.
    Table(BTreeMap<(String, String), F>),
}

/// Finite-dimensional algebra given by structure constants on named basis elements.
/// `alpha` and `beta` default to the identity on keys without an entry.
#[derive(Clone, Debug, PartialEq)]
pub struct TableAlgebra<F: Field> {
    name: String,
    basis: Vec<String>,
    bracket: BTreeMap<(String, String), Vector<String, F>>,
    alpha: BTreeMap<String, Vector<String, F>>,
    beta: BTreeMap<String, Vector<String, F>>,
    omega: OmegaRule<F>,
    grading: Option<(GradeGroup, BTreeMap<String, Grade>)>,
}

pub(crate) fn vec_of<F: Field>(terms: &[(&str, i64)]) -> Vector<String, F> {
    Vector::from_terms(terms.iter().map(|(k, c)| (k.to_string(), F::from_int(*c))))
}

impl<F: Field> TableAlgebra<F> {
    /// Abelian algebra with `alpha = beta = id` and `omega = -1`.
    pub fn new(name: &str, basis: &[&str]) -> Self {
        TableAlgebra {
            name: name.to_string(),
            basis: basis.iter().map(|s| s.to_string()).collect(),
            bracket: BTreeMap::new(),
            alpha: BTreeMap::new(),
            beta: BTreeMap::new(),
            omega: OmegaRule::Constant(-F::one()),
            grading: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn keys(&self) -> &[String] {
        &self.basis
    }

    pub fn grading(&self) -> Option<&(GradeGroup, BTreeMap<String, Grade>)> {
        self.grading.as_ref()
    }

    pub fn grade(&self, x: &str) -> Option<&Grade> {
        self.grading.as_ref().and_then(|(_, g)| g.get(x))
    }

    pub fn omega_rule(&self) -> &OmegaRule<F> {
        &self.omega
    }

    pub fn set_bracket(&mut self, x: &str, y: &str, v: Vector<String, F>) {
        let key = (x.to_string(), y.to_string());
        if v.is_zero() {
            self.bracket.remove(&key);
        } else {
            self.bracket.insert(key, v);
        }
    }

    /// `<x, y> = v` and `<y, x> = -v`.
    pub fn set_skew(&mut self, x: &str, y: &str, v: Vector<String, F>) {
        self.set_bracket(y, x, -&v);
        self.set_bracket(x, y, v);
    }

    /// `<x, y> = <y, x> = v`.
    pub fn set_symmetric(&mut self, x: &str, y: &str, v: Vector<String, F>) {
        self.set_bracket(y, x, v.clone());
        self.set_bracket(x, y, v);
    }

    pub fn set_alpha(&mut self, x: &str, v: Vector<String, F>) {
        self.alpha.insert(x.to_string(), v);
    }

    pub fn set_beta(&mut self, x: &str, v: Vector<String, F>) {
        self.beta.insert(x.to_string(), v);
    }

    pub fn set_omega(&mut self, rule: OmegaRule<F>) {
        self.omega = rule;
    }

    pub fn set_grading(&mut self, group: GradeGroup, degrees: BTreeMap<String, Grade>) -> Result<(), AlgebraError> {
        let mut reduced = BTreeMap::new();
        for (k, g) in degrees {
            reduced.insert(k, group.reduce(&g)?);
        }
        for b in &self.basis {
            if !reduced.contains_key(b) {
                return Err(AlgebraError::Descriptor(format!("basis element {b} has no grade")));
            }
        }
        self.grading = Some((group, reduced));
        Ok(())
    }

    /// `<L_a, L_b>` must lie in `L_(a+b)`.
    pub fn check_grading(&self) -> Result<(), AlgebraError> {
        let Some((group, degrees)) = &self.grading else {
            return Ok(());
        };
        for ((x, y), v) in &self.bracket {
            let expected = group.add(&degrees[x], &degrees[y]);
            if v.keys().any(|k| degrees.get(k) != Some(&expected)) {
                return Err(AlgebraError::GradingViolation {
                    x: x.clone(),
                    y: y.clone(),
                    expected: expected.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut bracket = Map::new();
        for ((x, y), v) in &self.bracket {
            bracket.insert(format!("({x},{y})"), v.to_json());
        }
        let maps = |m: &BTreeMap<String, Vector<String, F>>| {
            let mut out = Map::new();
            for (k, v) in m {
                out.insert(k.clone(), v.to_json());
            }
            Value::Object(out)
        };
        let mut doc = json!({
            "name": self.name,
            "basis": self.basis,
            "bracket": bracket,
            "alpha": maps(&self.alpha),
            "beta": maps(&self.beta),
        });
        match &self.omega {
            OmegaRule::Constant(c) => doc["omega"] = json!(format!("const:{c}")),
            OmegaRule::Color(eps) => {
                doc["omega"] = json!("color");
                doc["factor"] = eps.to_json();
            }
            OmegaRule::Table(t) => {
                let mut m = Map::new();
                for ((x, y), c) in t {
                    m.insert(format!("({x},{y})"), Value::String(c.to_string()));
                }
                doc["omega"] = Value::Object(m);
            }
        }
        if let Some((group, degrees)) = &self.grading {
            let mut d = Map::new();
            for (k, g) in degrees {
                d.insert(k.clone(), json!(g.0));
            }
            doc["grading"] = json!({"group": group.to_json(), "degrees": d});
        }
        doc
    }

    /// Reads a descriptor. A bracket entry `(x,y)` without its reverse `(y,x)` is
    /// completed by `<y, x> = omega(y, x) <x, y>`.
    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let bad = |m: String| AlgebraError::Descriptor(m);
        let basis: Vec<String> = serde_json::from_value(v.get("basis").cloned().unwrap_or(Value::Null))
            .map_err(|e| bad(format!("basis: {e}")))?;
        if basis.is_empty() {
            return Err(bad("empty basis".into()));
        }
        let names: Vec<&str> = basis.iter().map(String::as_str).collect();
        let name = v.get("name").and_then(Value::as_str).unwrap_or("table");
        let mut alg = TableAlgebra::new(name, &names);
        if let Some(g) = v.get("grading") {
            let group = GradeGroup::from_json(g.get("group").unwrap_or(&Value::Null))?;
            let degrees: BTreeMap<String, Vec<i64>> =
                serde_json::from_value(g.get("degrees").cloned().unwrap_or(Value::Null))
                    .map_err(|e| bad(format!("grading degrees: {e}")))?;
            alg.set_grading(group, degrees.into_iter().map(|(k, d)| (k, Grade(d))).collect())?;
        }
        alg.omega = match v.get("omega") {
            None => OmegaRule::Constant(-F::one()),
            Some(Value::String(s)) if s == "builtin:-1" => OmegaRule::Constant(-F::one()),
            Some(Value::String(s)) if s.starts_with("const:") => OmegaRule::Constant(parse_field(&s[6..])?),
            Some(Value::String(s)) if s == "color" => {
                OmegaRule::Color(CommutationFactor::from_json(v.get("factor").unwrap_or(&Value::Null))?)
            }
            Some(Value::String(s)) if s == "color:super" => OmegaRule::Color(CommutationFactor::super_sign()),
            Some(Value::String(s)) if s == "color:z2z2" => OmegaRule::Color(CommutationFactor::z2_z2_sign()),
            Some(Value::Object(o)) => {
                let mut t = BTreeMap::new();
                for (pair, c) in o {
                    let (x, y) = parse_pair(pair)?;
                    t.insert((x, y), coeff_from_json(c)?);
                }
                OmegaRule::Table(t)
            }
            Some(other) => return Err(bad(format!("unrecognized omega {other}"))),
        };
        if matches!(alg.omega, OmegaRule::Color(_)) && alg.grading.is_none() {
            return Err(bad("color omega needs a grading".into()));
        }
        let known = |k: &str| basis.iter().any(|b| b == k);
        let read_vec = |val: &Value| -> Result<Vector<String, F>, AlgebraError> {
            let obj = val.as_object().ok_or_else(|| bad(format!("expected a coefficient map, got {val}")))?;
            let mut out = Vector::zero();
            for (k, c) in obj {
                if !known(k) {
                    return Err(bad(format!("unknown basis element {k}")));
                }
                out.add_term(k.clone(), coeff_from_json(c)?);
            }
            Ok(out)
        };
        let mut given = BTreeMap::new();
        if let Some(b) = v.get("bracket") {
            let obj = b.as_object().ok_or_else(|| bad("bracket must be an object".into()))?;
            for (pair, val) in obj {
                let (x, y) = parse_pair(pair)?;
                if !known(&x) || !known(&y) {
                    return Err(bad(format!("unknown basis element in {pair}")));
                }
                given.insert((x, y), read_vec(val)?);
            }
        }
        for ((x, y), val) in &given {
            alg.set_bracket(x, y, val.clone());
        }
        for ((x, y), val) in &given {
            if !given.contains_key(&(y.clone(), x.clone())) {
                let w = alg
                    .omega(y, x)
                    .ok_or_else(|| bad(format!("cannot complete ({y},{x}): omega undefined")))?;
                alg.set_bracket(y, x, val.scale(&w));
            }
        }
        for (field, target) in [("alpha", &mut alg.alpha), ("beta", &mut alg.beta)] {
            if let Some(m) = v.get(field) {
                let obj = m.as_object().ok_or_else(|| bad(format!("{field} must be an object")))?;
                for (k, val) in obj {
                    if !known(k) {
                        return Err(bad(format!("unknown basis element {k}")));
                    }
                    target.insert(k.clone(), read_vec(val)?);
                }
            }
        }
        alg.check_grading()?;
        Ok(alg)
    }
}

pub(crate) fn parse_pair(s: &str) -> Result<(String, String), AlgebraError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| AlgebraError::Descriptor(format!("bad pair {s}")))?;
    let mut parts = inner.split(',').map(str::trim);
    match (parts.next(), parts.next(), parts.next()) {
        (Some(x), Some(y), None) if !x.is_empty() && !y.is_empty() => Ok((x.to_string(), y.to_string())),
        _ => Err(AlgebraError::Descriptor(format!("bad pair {s}"))),
    }
}

pub(crate) fn coeff_from_json<F: Field>(v: &Value) -> Result<F, AlgebraError> {
    match v {
        Value::String(s) => Ok(parse_field(s)?),
        Value::Number(n) => Ok(parse_field(&n.to_string())?),
        other => Err(AlgebraError::Descriptor(format!("bad coefficient {other}"))),
    }
}

impl<F: Field> QhlAlgebra<F> for TableAlgebra<F> {
    type Key = String;

    fn bracket(&self, x: &String, y: &String) -> Vector<String, F> {
        self.bracket.get(&(x.clone(), y.clone())).cloned().unwrap_or_default()
    }

    fn alpha(&self, x: &String) -> Vector<String, F> {
        self.alpha.get(x).cloned().unwrap_or_else(|| Vector::basis(x.clone()))
    }

    fn beta(&self, x: &String) -> Vector<String, F> {
        self.beta.get(x).cloned().unwrap_or_else(|| Vector::basis(x.clone()))
    }

    fn omega(&self, x: &String, y: &String) -> Option<F> {
        match &self.omega {
            OmegaRule::Constant(c) => Some(c.clone()),
            OmegaRule::Color(eps) => {
                let (_, degrees) = self.grading.as_ref()?;
                Some(-eps.eval(degrees.get(x)?, degrees.get(y)?)?)
            }
            OmegaRule::Table(t) => t.get(&(x.clone(), y.clone())).cloned(),
        }
    }

    fn basis(&self) -> Option<Vec<String>> {
        Some(self.basis.clone())
    }
}

/// A color algebra: `alpha = beta = id`, `omega(x, y) = -eps(grade x, grade y)`.
/// The factor's axioms and the grading of every structure constant are validated.
pub fn make_color_algebra<F: Field>(
    name: &str,
    group: GradeGroup,
    eps: CommutationFactor<F>,
    basis: &[(&str, Grade)],
    constants: &[(&str, &str, Vector<String, F>)],
) -> Result<TableAlgebra<F>, AlgebraError> {
    let grades: Vec<Grade> = basis.iter().map(|(_, g)| g.clone()).collect();
    let axioms = if group.is_finite() {
        eps.check_axioms(&group, None)
    } else {
        eps.check_axioms(&group, Some(&grades))
    };
    if let Some(f) = axioms.failures.first() {
        return Err(AlgebraError::InvalidFactor(format!("{} at ({})", f.condition, f.indices.join(", "))));
    }
    let names: Vec<&str> = basis.iter().map(|(n, _)| *n).collect();
    let mut alg = TableAlgebra::new(name, &names);
    alg.set_grading(group, basis.iter().map(|(n, g)| (n.to_string(), g.clone())).collect())?;
    alg.set_omega(OmegaRule::Color(eps));
    for (x, y, v) in constants {
        alg.set_bracket(x, y, v.clone());
    }
    alg.check_grading()?;
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn grading_violation_names_the_pair() {
        let eps = CommutationFactor::<Rational>::super_sign();
        let err = make_color_algebra(
            "bad",
            GradeGroup::z2(),
            eps,
            &[("a", Grade(vec![0])), ("b", Grade(vec![1]))],
            &[("a", "b", vec_of(&[("a", 1)]))],
        )
        .unwrap_err();
        assert_eq!(
            err,
            AlgebraError::GradingViolation { x: "a".into(), y: "b".into(), expected: "(1)".into() }
        );
    }

    #[test]
    fn trivial_group_gives_lie_omega() {
        let alg = make_color_algebra::<Rational>(
            "ab",
            GradeGroup::trivial(),
            CommutationFactor::Trivial,
            &[("x", Grade(vec![])), ("y", Grade(vec![]))],
            &[],
        )
        .unwrap();
        assert_eq!(alg.omega(&"x".to_string(), &"y".to_string()), Some(-Rational::from_integer(1.into())));
    }

    #[test]
    fn invalid_factor_is_rejected() {
        let mut t = BTreeMap::new();
        for a in 0..2 {
            for b in 0..2 {
                t.insert((Grade(vec![a]), Grade(vec![b])), Rational::from_integer(2.into()));
            }
        }
        let err = make_color_algebra("bad", GradeGroup::z2(), CommutationFactor::Table(t), &[], &[]).unwrap_err();
        assert!(matches!(err, AlgebraError::InvalidFactor(_)));
    }

    #[test]
    fn descriptor_round_trip_and_completion() {
        let doc = json!({
            "name": "sl2",
            "basis": ["e", "f", "h"],
            "bracket": {"(h,e)": {"e": 2}, "(h,f)": {"f": "-2"}, "(e,f)": {"h": "1"}},
        });
        let alg = TableAlgebra::<Rational>::from_json(&doc).unwrap();
        assert_eq!(alg.bracket(&"f".into(), &"e".into()), vec_of(&[("h", -1)]));
        let again = TableAlgebra::<Rational>::from_json(&alg.to_json()).unwrap();
        assert_eq!(again, alg);
        assert!(TableAlgebra::<Rational>::from_json(&json!({"basis": ["a"], "bracket": {"(a,b)": {}}})).is_err());
    }
}
