//! Endomorphisms of Laurent polynomial rings and the twisted derivations built on them.
//!
//! Single variable: `sigma(t) = q t^s` and `D = eta t^(1-k) (id - sigma)/(t - q t^s)`.
//! Several variables: `sigma(z_i) = q_i z^(row i of S)` and `D = Q z^(-G) (id - sigma)`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{parse_field, ExactError, ExpVec, Exponent, Field, Laurent, LaurentPoly, MultiLaurent};
use crate::report::{Outcome, Report};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SigmaError {
    #[error("sigma scale must be nonzero")]
    ZeroScale,
    #[error("t - q t^s vanishes for s = 1, q = 1; the quotient is undefined")]
    Degenerate,
    #[error("unsupported s = {0}: the twist element needs s >= 1")]
    UnsupportedS(i64),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A twisted derivation `D` on a Laurent polynomial ring, determined by its action on
/// monomials together with the endomorphism `sigma`.
pub trait Derivation<F: Field>: Send + Sync {
    type Exp: Exponent;

    fn arity(&self) -> usize;

    /// `sigma(x^m) = c x^e`, returned as `(c, e)`.
    fn sigma_monomial(&self, m: &Self::Exp) -> (F, Self::Exp);

    fn apply_monomial(&self, m: &Self::Exp) -> LaurentPoly<Self::Exp, F>;

    /// The element `delta` with `D(sigma(a)) = delta sigma(D(a))`.
    fn delta(&self) -> Result<LaurentPoly<Self::Exp, F>, SigmaError>;

    fn params(&self) -> BTreeMap<String, String>;

    fn sigma(&self, a: &LaurentPoly<Self::Exp, F>) -> LaurentPoly<Self::Exp, F> {
        let mut out = LaurentPoly::zero(self.arity());
        for (m, c) in a.terms() {
            let (s, e) = self.sigma_monomial(m);
            out.add_term(e, s * c);
        }
        out
    }

    fn apply(&self, a: &LaurentPoly<Self::Exp, F>) -> LaurentPoly<Self::Exp, F> {
        let mut out = LaurentPoly::zero(self.arity());
        for (m, c) in a.terms() {
            for (e, d) in self.apply_monomial(m).into_terms() {
                out.add_term(e, d * c);
            }
        }
        out
    }
}

/// `sigma(t) = q t^s` on `F[t, 1/t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaEndo<F: Field> {
    q: F,
    s: i64,
}

impl<F: Field> SigmaEndo<F> {
    pub fn new(q: F, s: i64) -> Result<Self, SigmaError> {
        if q.is_zero() {
            return Err(SigmaError::ZeroScale);
        }
        Ok(SigmaEndo { q, s })
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn monomial(&self, n: i64) -> (F, i64) {
        (self.q.pow_i(n).unwrap(), self.s * n)
    }

    pub fn apply(&self, a: &Laurent<F>) -> Laurent<F> {
        let mut out = Laurent::zero(1);
        for (n, c) in a.terms() {
            let (s, e) = self.monomial(*n);
            out.add_term(e, s * c);
        }
        out
    }
}

/// `sigma(z_i) = q_i z^(S[i])`, so `sigma(z^m) = (prod q_i^m_i) z^(S^T m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSigmaEndo<F: Field> {
    scales: Vec<F>,
    matrix: Vec<Vec<i64>>,
}

impl<F: Field> MultiSigmaEndo<F> {
    pub fn new(scales: Vec<F>, matrix: Vec<Vec<i64>>) -> Result<Self, SigmaError> {
        let n = scales.len();
        if matrix.len() != n {
            return Err(SigmaError::Arity { expected: n, got: matrix.len() });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(SigmaError::Arity { expected: n, got: row.len() });
        }
        if scales.iter().any(|q| q.is_zero()) {
            return Err(SigmaError::ZeroScale);
        }
        Ok(MultiSigmaEndo { scales, matrix })
    }

    pub fn arity(&self) -> usize {
        self.scales.len()
    }

    pub fn scales(&self) -> &[F] {
        &self.scales
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `q^m = prod q_i^m_i`.
    pub fn scale_power(&self, m: &ExpVec) -> F {
        self.scales
            .iter()
            .zip(m.as_slice())
            .fold(F::one(), |acc, (q, &e)| acc * q.pow_i(e).unwrap())
    }

    /// Exponent of `sigma(z^m)`.
    pub fn exponent_image(&self, m: &ExpVec) -> ExpVec {
        let n = self.arity();
        let mut out = vec![0i64; n];
        for (i, &mi) in m.as_slice().iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += mi * self.matrix[i][j];
            }
        }
        ExpVec(out)
    }

    pub fn monomial(&self, m: &ExpVec) -> (F, ExpVec) {
        (self.scale_power(m), self.exponent_image(m))
    }

    pub fn apply(&self, a: &MultiLaurent<F>) -> MultiLaurent<F> {
        let mut out = MultiLaurent::zero(self.arity());
        for (m, c) in a.terms() {
            let (s, e) = self.monomial(m);
            out.add_term(e, s * c);
        }
        out
    }
}

/// `D = eta t^(1-k) (id - sigma)/(t - q t^s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaDerivation<F: Field> {
    sigma: SigmaEndo<F>,
    eta: F,
    k: i64,
}

impl<F: Field> SigmaDerivation<F> {
    pub fn new(sigma: SigmaEndo<F>, eta: F, k: i64) -> Result<Self, SigmaError> {
        if sigma.s == 1 && sigma.q.is_one() {
            return Err(SigmaError::Degenerate);
        }
        Ok(SigmaDerivation { sigma, eta, k })
    }

    pub fn from_params(q: F, s: i64, k: i64, eta: F) -> Result<Self, SigmaError> {
        Self::new(SigmaEndo::new(q, s)?, eta, k)
    }

    pub fn sigma_endo(&self) -> &SigmaEndo<F> {
        &self.sigma
    }

    pub fn q(&self) -> &F {
        &self.sigma.q
    }

    pub fn s(&self) -> i64 {
        self.sigma.s
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn eta(&self) -> &F {
        &self.eta
    }

    /// `D(t^n)` straight from the defining quotient, by exact division.
    pub fn apply_by_division(&self, n: i64) -> Result<Laurent<F>, SigmaError> {
        let tn = Laurent::t_pow(n);
        let numer = &tn - &self.sigma.apply(&tn);
        let mut denom = Laurent::t_pow(1);
        denom.add_term(self.sigma.s, -self.sigma.q.clone());
        let quo = numer.div_exact(&denom)?;
        Ok(quo.shift(&(1 - self.k)).scale(&self.eta))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.sigma.q.to_string(),
            "s": self.sigma.s,
            "k": self.k,
            "eta": self.eta.to_string(),
        })
    }
}

impl<F: Field> Derivation<F> for SigmaDerivation<F> {
    type Exp = i64;

    fn arity(&self) -> usize {
        1
    }

    fn sigma_monomial(&self, m: &i64) -> (F, i64) {
        self.sigma.monomial(*m)
    }

    /// `eta t^(n-k) (1 - u^n)/(1 - u)` with `u = q t^(s-1)`, expanded as a finite sum.
    fn apply_monomial(&self, n: &i64) -> Laurent<F> {
        let n = *n;
        let mut out = Laurent::zero(1);
        if self.eta.is_zero() || n == 0 {
            return out;
        }
        let step = self.sigma.s - 1;
        let (lo, hi, sign) = if n > 0 { (0, n, self.eta.clone()) } else { (n, 0, -self.eta.clone()) };
        let mut qr = self.sigma.q.pow_i(lo).unwrap();
        for r in lo..hi {
            out.add_term(n - self.k + r * step, sign.clone() * &qr);
            qr = qr * &self.sigma.q;
        }
        out
    }

    /// `q^k t^(k(s-1)) sum_(r<s) (q t^(s-1))^r`, defined for `s >= 1`.
    fn delta(&self) -> Result<Laurent<F>, SigmaError> {
        let s = self.sigma.s;
        if s <= 0 {
            return Err(SigmaError::UnsupportedS(s));
        }
        let q = &self.sigma.q;
        let qk = q.pow_i(self.k).unwrap();
        let mut out = Laurent::zero(1);
        let mut qr = F::one();
        for r in 0..s {
            out.add_term(self.k * (s - 1) + r * (s - 1), qk.clone() * &qr);
            qr = qr * q;
        }
        Ok(out)
    }

    fn params(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("q".to_string(), self.sigma.q.to_string()),
            ("s".to_string(), self.sigma.s.to_string()),
            ("k".to_string(), self.k.to_string()),
            ("eta".to_string(), self.eta.to_string()),
        ])
    }
}

/// `D(z^m) = Q z^(-G) (z^m - sigma(z^m))`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSigmaDerivation<F: Field> {
    sigma: MultiSigmaEndo<F>,
    scale: F,
    shift: ExpVec,
}

impl<F: Field> MultiSigmaDerivation<F> {
    pub fn new(sigma: MultiSigmaEndo<F>, scale: F, shift: ExpVec) -> Result<Self, SigmaError> {
        if shift.arity() != sigma.arity() {
            return Err(SigmaError::Arity { expected: sigma.arity(), got: shift.arity() });
        }
        Ok(MultiSigmaDerivation { sigma, scale, shift })
    }

    pub fn sigma_endo(&self) -> &MultiSigmaEndo<F> {
        &self.sigma
    }

    pub fn scale(&self) -> &F {
        &self.scale
    }

    pub fn shift(&self) -> &ExpVec {
        &self.shift
    }

    pub fn to_json(&self) -> Value {
        json!({
            "qs": self.sigma.scales.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "S": self.sigma.matrix,
            "G": self.shift.0,
            "Q": self.scale.to_string(),
        })
    }
}

impl<F: Field> Derivation<F> for MultiSigmaDerivation<F> {
    type Exp = ExpVec;

    fn arity(&self) -> usize {
        self.sigma.arity()
    }

    fn sigma_monomial(&self, m: &ExpVec) -> (F, ExpVec) {
        self.sigma.monomial(m)
    }

    fn apply_monomial(&self, m: &ExpVec) -> MultiLaurent<F> {
        let mut out = MultiLaurent::zero(self.arity());
        let (c, e) = self.sigma.monomial(m);
        out.add_term(m.sub(&self.shift), self.scale.clone());
        out.add_term(e.sub(&self.shift), -(self.scale.clone() * &c));
        out
    }

    /// `z^(-G)/sigma(z^(-G)) = q^G z^(S^T G - G)`.
    fn delta(&self) -> Result<MultiLaurent<F>, SigmaError> {
        let (c, e) = self.sigma.monomial(&self.shift);
        Ok(MultiLaurent::monomial(e.sub(&self.shift), c))
    }

    fn params(&self) -> BTreeMap<String, String> {
        let scales: Vec<String> = self.sigma.scales.iter().map(|q| q.to_string()).collect();
        BTreeMap::from([
            ("qs".to_string(), format!("[{}]", scales.join(", "))),
            ("S".to_string(), format!("{:?}", self.sigma.matrix)),
            ("G".to_string(), self.shift.to_string()),
            ("Q".to_string(), self.scale.to_string()),
        ])
    }
}

/// Checks `D(sigma(x^m)) = delta sigma(D(x^m))` on every monomial of the window.
pub fn check_condition_c2<F: Field, D: Derivation<F>>(
    d: &D,
    delta: &LaurentPoly<D::Exp, F>,
    window: &[D::Exp],
) -> Report {
    use rayon::prelude::*;
    let mut report = Report::new("condition-C2").with_window(window_json(window));
    report.params = d.params();
    report.params.insert("delta".to_string(), delta.to_string());
    let outcomes: Vec<Outcome> = window
        .par_iter()
        .map(|m| {
            let mono = LaurentPoly::monomial(m.clone(), F::one());
            let lhs = d.apply(&d.sigma(&mono));
            let rhs = delta * &d.sigma(&d.apply(&mono));
            let mut o = Outcome::default();
            o.check("C2", &[m.to_string()], &lhs, &rhs);
            o
        })
        .collect();
    outcomes.into_iter().for_each(|o| report.absorb(o));
    report
}

/// `sigma(Ann D) ⊆ Ann D`. The ring is a domain, so `Ann D` is `{0}` unless `D = 0`,
/// and `D = 0` exactly when it kills every variable.
pub fn check_condition_c1<F: Field, D: Derivation<F>>(d: &D) -> Report {
    let mut report = Report::new("condition-C1");
    report.params = d.params();
    let n = d.arity();
    let mut nonzero = None;
    for i in 0..n {
        let var = unit_exponent::<D::Exp>(n, i);
        let image = d.apply_monomial(&var);
        report.checked += 1;
        if !image.is_zero() {
            nonzero = Some((var, image));
            break;
        }
    }
    let one = d.apply_monomial(&D::Exp::zero(n));
    report.check("D(1) = 0", &["1".to_string()], &one, &LaurentPoly::zero(n));
    match nonzero {
        Some((var, image)) => {
            report.params.insert("annihilator".to_string(), "{0}".to_string());
            report.notes.push(format!(
                "D({}) = {} is nonzero; in a domain Ann(D) = {{0}} and sigma(0) = 0",
                var.fmt_monomial(),
                image
            ));
        }
        None => {
            report.params.insert("annihilator".to_string(), "A".to_string());
            report
                .notes
                .push("D kills every variable, so D = 0 and Ann(D) = A is sigma-stable".to_string());
        }
    }
    report
}

fn unit_exponent<E: Exponent>(n: usize, i: usize) -> E {
    let v: Value = if n == 1 {
        json!(1)
    } else {
        let mut e = vec![0i64; n];
        e[i] = 1;
        json!(e)
    };
    E::from_json(&v).expect("unit exponent")
}

pub(crate) fn window_json<E: Exponent>(window: &[E]) -> Value {
    Value::Array(window.iter().map(|e| e.to_json()).collect())
}

/// `lo..=hi` as a generator window.
pub fn window_1d(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).collect()
}

/// The box `[lo, hi]^arity`, lexicographic.
pub fn window_box(arity: usize, lo: i64, hi: i64) -> Vec<ExpVec> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut v = p.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(ExpVec).collect()
}

/// A derivation read from a JSON descriptor.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyDerivation<F: Field> {
    Single(SigmaDerivation<F>),
    Multi(MultiSigmaDerivation<F>),
}

impl<F: Field> fmt::Display for AnyDerivation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self {
            AnyDerivation::Single(d) => d.to_json(),
            AnyDerivation::Multi(d) => d.to_json(),
        };
        write!(f, "{v}")
    }
}

fn field_entry<F: Field>(v: &Value, key: &str, default: Option<&str>) -> Result<F, SigmaError> {
    match v.get(key) {
        Some(Value::String(s)) => Ok(parse_field(s)?),
        Some(Value::Number(n)) => Ok(parse_field(&n.to_string())?),
        None => match default {
            Some(d) => Ok(parse_field(d)?),
            None => Err(SigmaError::Descriptor(format!("missing \"{key}\""))),
        },
        Some(other) => Err(SigmaError::Descriptor(format!("bad \"{key}\": {other}"))),
    }
}

fn int_entry(v: &Value, key: &str, default: i64) -> Result<i64, SigmaError> {
    match v.get(key) {
        None => Ok(default),
        Some(x) => x
            .as_i64()
            .ok_or_else(|| SigmaError::Descriptor(format!("\"{key}\" must be an integer"))),
    }
}

/// Parses `{"q", "s", "k", "eta"}` or `{"qs", "S", "G", "Q"}`.
pub fn derivation_from_json<F: Field>(v: &Value) -> Result<AnyDerivation<F>, SigmaError> {
    if v.get("qs").is_some() {
        let qs = v["qs"]
            .as_array()
            .ok_or_else(|| SigmaError::Descriptor("\"qs\" must be a list".into()))?
            .iter()
            .map(|q| match q {
                Value::String(s) => Ok(parse_field::<F>(s)?),
                Value::Number(n) => Ok(parse_field::<F>(&n.to_string())?),
                other => Err(SigmaError::Descriptor(format!("bad scale {other}"))),
            })
            .collect::<Result<Vec<F>, SigmaError>>()?;
        let matrix: Vec<Vec<i64>> = serde_json::from_value(v.get("S").cloned().unwrap_or(Value::Null))
            .map_err(|e| SigmaError::Descriptor(format!("\"S\": {e}")))?;
        let shift: Vec<i64> = match v.get("G") {
            Some(g) => serde_json::from_value(g.clone())
                .map_err(|e| SigmaError::Descriptor(format!("\"G\": {e}")))?,
            None => vec![0; qs.len()],
        };
        let scale = field_entry(v, "Q", Some("1"))?;
        let sigma = MultiSigmaEndo::new(qs, matrix)?;
        return Ok(AnyDerivation::Multi(MultiSigmaDerivation::new(sigma, scale, ExpVec(shift))?));
    }
    let q = field_entry(v, "q", Some("q"))?;
    let s = int_entry(v, "s", 1)?;
    let k = int_entry(v, "k", 0)?;
    let eta = field_entry(v, "eta", Some("1"))?;
    Ok(AnyDerivation::Single(SigmaDerivation::from_params(q, s, k, eta)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Fq;

    fn fq(s: &str) -> Fq {
        parse_field(s).unwrap()
    }

    fn lp(terms: &[(i64, &str)]) -> Laurent<Fq> {
        Laurent::from_terms(1, terms.iter().map(|(e, c)| (*e, fq(c))))
    }

    fn deriv(s: i64, k: i64) -> SigmaDerivation<Fq> {
        SigmaDerivation::from_params(fq("q"), s, k, fq("1")).unwrap()
    }

    #[test]
    fn sigma_on_monomials() {
        let s1 = SigmaEndo::new(fq("q"), 1).unwrap();
        assert_eq!(s1.apply(&lp(&[(2, "1"), (-1, "1")])), lp(&[(2, "q^2"), (-1, "1/q")]));
        let s2 = SigmaEndo::new(fq("q"), 2).unwrap();
        assert_eq!(s2.apply(&lp(&[(3, "1")])), lp(&[(6, "q^3")]));
        assert_eq!(s2.apply(&Laurent::one(1)), Laurent::one(1));
        let a = lp(&[(0, "1"), (1, "1")]);
        let b = lp(&[(-2, "1")]);
        assert_eq!(s2.apply(&(&a * &b)), &s2.apply(&a) * &s2.apply(&b));
    }

    #[test]
    fn zero_scale_and_degenerate_quotient_are_rejected() {
        assert_eq!(SigmaEndo::new(fq("0"), 1), Err(SigmaError::ZeroScale));
        assert_eq!(
            SigmaDerivation::from_params(fq("1"), 1, 0, fq("1")),
            Err(SigmaError::Degenerate)
        );
    }

    #[test]
    fn derivation_examples() {
        assert_eq!(deriv(1, 0).apply(&lp(&[(3, "1")])), lp(&[(3, "1 + q + q^2")]));
        assert_eq!(deriv(2, 0).apply(&lp(&[(2, "1")])), lp(&[(2, "1"), (3, "q")]));
        for s in -2..=3 {
            assert!(deriv(s, 1).apply(&Laurent::one(1)).is_zero());
        }
    }

    #[test]
    fn negative_powers_use_reduced_q_integer() {
        // {-2}_q = -q^-2 - q^-1
        assert_eq!(deriv(1, 0).apply(&lp(&[(-2, "1")])), lp(&[(-2, "-1/q^2 - 1/q")]));
    }

    #[test]
    fn closed_form_matches_division() {
        for s in -2..=3 {
            for k in -1..=2 {
                let d = deriv(s, k);
                for n in -5..=5 {
                    assert_eq!(d.apply_monomial(&n), d.apply_by_division(n).unwrap(), "s={s} k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn delta_values() {
        assert_eq!(deriv(1, 0).delta().unwrap(), Laurent::one(1));
        assert_eq!(deriv(2, 1).delta().unwrap(), lp(&[(1, "q"), (2, "q^2")]));
        assert_eq!(deriv(1, 2).delta().unwrap(), lp(&[(0, "q^2")]));
        assert_eq!(deriv(0, 0).delta(), Err(SigmaError::UnsupportedS(0)));
        assert_eq!(deriv(-1, 0).delta(), Err(SigmaError::UnsupportedS(-1)));
    }

    #[test]
    fn condition_c2_examples() {
        let d = deriv(1, 0);
        assert!(check_condition_c2(&d, &Laurent::one(1), &window_1d(-5, 5)).passed());
        let d2 = deriv(2, 0);
        let delta = lp(&[(0, "1"), (1, "q")]);
        assert!(check_condition_c2(&d2, &delta, &window_1d(-4, 4)).passed());
        let bad = check_condition_c2(&d2, &Laurent::one(1), &window_1d(-2, 2));
        assert!(bad.failures.iter().any(|f| f.indices == vec!["2".to_string()]));
    }

    #[test]
    fn condition_c1_examples() {
        let r = check_condition_c1(&deriv(1, 0));
        assert!(r.passed());
        assert_eq!(r.params["annihilator"], "{0}");
        let zero = SigmaDerivation::from_params(fq("q"), 1, 0, fq("0")).unwrap();
        let r = check_condition_c1(&zero);
        assert!(r.passed());
        assert_eq!(r.params["annihilator"], "A");
        let sigma = MultiSigmaEndo::new(vec![fq("q"), fq("q")], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let m = MultiSigmaDerivation::new(sigma, fq("1"), ExpVec::new([0, 0])).unwrap();
        let r = check_condition_c1(&m);
        assert!(r.passed());
        assert_eq!(r.params["annihilator"], "{0}");
    }

    #[test]
    fn multivariate_delta_passes_c2() {
        let sigma = MultiSigmaEndo::new(vec![fq("q"), fq("2")], vec![vec![1, 1], vec![0, 2]]).unwrap();
        let m = MultiSigmaDerivation::new(sigma, fq("1"), ExpVec::new([1, -1])).unwrap();
        let delta = m.delta().unwrap();
        assert!(check_condition_c2(&m, &delta, &window_box(2, -2, 2)).passed());
    }

    #[test]
    fn descriptors_round_trip() {
        let v = json!({"q": "q", "s": 2, "k": 0, "eta": "1"});
        let AnyDerivation::Single(d) = derivation_from_json::<Fq>(&v).unwrap() else { panic!() };
        assert_eq!(d, deriv(2, 0));
        let back = derivation_from_json::<Fq>(&d.to_json()).unwrap();
        assert_eq!(back, AnyDerivation::Single(d));
        let mv = json!({"qs": ["q", "q"], "S": [[1, 0], [0, 1]], "G": [0, 0], "Q": "1"});
        let AnyDerivation::Multi(m) = derivation_from_json::<Fq>(&mv).unwrap() else { panic!() };
        assert_eq!(derivation_from_json::<Fq>(&m.to_json()).unwrap(), AnyDerivation::Multi(m));
        assert!(derivation_from_json::<Fq>(&json!({"qs": ["q"], "S": [[1, 0]]})).is_err());
    }
}
