//! Deformed Witt algebras `A·D` spanned by `d_n = -t^n D`.
//!
//! The bracket is always computed directly as
//! `<aD, bD> = (sigma(a) D(b) - sigma(b) D(a)) D`; closed forms are only ever compared
//! against it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{q_integer, ExactError, ExpVec, Exponent, Field, Fq, LaurentPoly, Rational};
use crate::report::{pairs, par_outcome, triples, Outcome, Report};
use crate::sigma::{window_json, Derivation, MultiSigmaDerivation, SigmaDerivation, SigmaError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WittError {
    #[error("wrong parameters: {0}")]
    WrongParameters(String),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `sum c_n d_n`, stored by its coefficients `n -> c_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittElement<E: Exponent, F: Field>(LaurentPoly<E, F>);

impl<E: Exponent, F: Field> WittElement<E, F> {
    pub fn zero(arity: usize) -> Self {
        WittElement(LaurentPoly::zero(arity))
    }

    /// The generator `d_n`.
    pub fn generator(n: E) -> Self {
        WittElement(LaurentPoly::monomial(n, F::one()))
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (E, F)>) -> Self {
        WittElement(LaurentPoly::from_terms(arity, terms))
    }

    pub fn coeffs(&self) -> &LaurentPoly<E, F> {
        &self.0
    }

    pub fn coeff(&self, n: &E) -> F {
        self.0.coeff(n)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &F)> {
        self.0.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn arity(&self) -> usize {
        self.0.arity()
    }

    pub fn add_term(&mut self, n: E, c: F) {
        self.0.add_term(n, c);
    }

    pub fn scale(&self, c: &F) -> Self {
        WittElement(self.0.scale(c))
    }

    /// The coefficient `a` in `aD`, that is `-sum c_n t^n`.
    pub fn module_element(&self) -> LaurentPoly<E, F> {
        -&self.0
    }

    /// Reads `aD` back in the `d_n` basis.
    pub fn from_module(a: &LaurentPoly<E, F>) -> Self {
        WittElement(-a)
    }

    pub fn try_map_coeffs<F2: Field>(
        &self,
        f: impl Fn(&F) -> Result<F2, ExactError>,
    ) -> Result<WittElement<E, F2>, ExactError> {
        Ok(WittElement(self.0.try_map_coeffs(f)?))
    }

    pub fn to_json(&self) -> Value {
        self.0.to_json()
    }
}

impl<E: Exponent> WittElement<E, Fq> {
    /// Substitutes a value for `q` in every coefficient.
    pub fn specialize_q(&self, value: &Rational) -> Result<WittElement<E, Rational>, ExactError> {
        self.try_map_coeffs(|c| c.eval(value))
    }
}

impl<'a, E: Exponent, F: Field> Add for &'a WittElement<E, F> {
    type Output = WittElement<E, F>;
    fn add(self, rhs: Self) -> WittElement<E, F> {
        WittElement(&self.0 + &rhs.0)
    }
}

impl<'a, E: Exponent, F: Field> Sub for &'a WittElement<E, F> {
    type Output = WittElement<E, F>;
    fn sub(self, rhs: Self) -> WittElement<E, F> {
        WittElement(&self.0 - &rhs.0)
    }
}

impl<'a, E: Exponent, F: Field> Neg for &'a WittElement<E, F> {
    type Output = WittElement<E, F>;
    fn neg(self) -> WittElement<E, F> {
        WittElement(-&self.0)
    }
}

impl<E: Exponent, F: Field> fmt::Display for WittElement<E, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (n, c) in self.terms() {
            let gen = format!("d_{n}");
            let text = c.to_string();
            let term = if c.is_one() {
                gen
            } else if text == "-1" {
                format!("-{gen}")
            } else if text.contains(' ') {
                format!("({text})*{gen}")
            } else {
                format!("{text}*{gen}")
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

/// Extra structure constant `c d_target` added to `<d_i, d_j>`, used to plant faults.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation<E: Exponent, F: Field> {
    pub left: E,
    pub right: E,
    pub target: E,
    pub amount: F,
}

/// The algebra `A·D` with its twisting data.
#[derive(Clone, Debug)]
pub struct WittAlgebra<F: Field, D: Derivation<F>> {
    derivation: D,
    delta: Option<LaurentPoly<D::Exp, F>>,
    perturbations: Vec<Perturbation<D::Exp, F>>,
}

pub type SingleWitt<F> = WittAlgebra<F, SigmaDerivation<F>>;
pub type MultiWitt<F> = WittAlgebra<F, MultiSigmaDerivation<F>>;

impl<F: Field, D: Derivation<F>> WittAlgebra<F, D> {
    /// `delta` is left unset when it is not defined (single variable with `s <= 0`).
    pub fn new(derivation: D) -> Self {
        let delta = derivation.delta().ok();
        WittAlgebra {
            derivation,
            delta,
            perturbations: Vec::new(),
        }
    }

    pub fn derivation(&self) -> &D {
        &self.derivation
    }

    pub fn delta(&self) -> Option<&LaurentPoly<D::Exp, F>> {
        self.delta.as_ref()
    }

    pub fn arity(&self) -> usize {
        self.derivation.arity()
    }

    pub fn with_perturbation(mut self, p: Perturbation<D::Exp, F>) -> Self {
        self.perturbations.push(p);
        self
    }

    pub fn perturbations(&self) -> &[Perturbation<D::Exp, F>] {
        &self.perturbations
    }

    pub fn generator(&self, n: &D::Exp) -> WittElement<D::Exp, F> {
        WittElement::generator(n.clone())
    }

    pub fn bracket(
        &self,
        x: &WittElement<D::Exp, F>,
        y: &WittElement<D::Exp, F>,
    ) -> WittElement<D::Exp, F> {
        let d = &self.derivation;
        let a = x.module_element();
        let b = y.module_element();
        let c = &(&d.sigma(&a) * &d.apply(&b)) - &(&d.sigma(&b) * &d.apply(&a));
        let mut out = WittElement::from_module(&c);
        for p in &self.perturbations {
            let w = x.coeff(&p.left) * &y.coeff(&p.right);
            if !w.is_zero() {
                out.add_term(p.target.clone(), w * &p.amount);
            }
        }
        out
    }

    pub fn bracket_generators(&self, n: &D::Exp, m: &D::Exp) -> WittElement<D::Exp, F> {
        self.bracket(&self.generator(n), &self.generator(m))
    }

    /// `sigma` acting on `aD`: `d_n -> q^n d_(sigma n)`.
    pub fn alpha(&self, x: &WittElement<D::Exp, F>) -> WittElement<D::Exp, F> {
        WittElement::from_module(&self.derivation.sigma(&x.module_element()))
    }

    /// Module scaling `delta·(aD) = (delta a)D`.
    pub fn delta_scale(&self, x: &WittElement<D::Exp, F>) -> Option<WittElement<D::Exp, F>> {
        self.delta.as_ref().map(|delta| WittElement(delta * &x.0))
    }

    /// `<alpha x, <y, z>> + delta <x, <y, z>>` summed cyclically over `(x, y, z)`.
    pub fn six_term(
        &self,
        x: &WittElement<D::Exp, F>,
        y: &WittElement<D::Exp, F>,
        z: &WittElement<D::Exp, F>,
    ) -> Option<WittElement<D::Exp, F>> {
        let mut total = WittElement::zero(self.arity());
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let inner = self.bracket(b, c);
            total = &total + &self.bracket(&self.alpha(a), &inner);
            total = &total + &self.delta_scale(&self.bracket(a, &inner))?;
        }
        Some(total)
    }

    fn base_report(&self, suite: &str, theorem: &str, pair_window: &[D::Exp], triple_window: &[D::Exp]) -> Report {
        let mut report = Report::new(suite).with_window(json!({
            "pairs": window_json(pair_window),
            "triples": window_json(triple_window),
        }));
        report.theorem = Some(theorem.to_string());
        report.params = self.derivation.params();
        if let Some(delta) = &self.delta {
            report.params.insert("delta".to_string(), delta.to_string());
        }
        if !self.perturbations.is_empty() {
            report
                .params
                .insert("perturbations".to_string(), self.perturbations.len().to_string());
        }
        report
    }

    /// `<x, y> = -<y, x>` on generator pairs.
    pub fn check_skew(&self, window: &[D::Exp]) -> Outcome {
        par_outcome(&pairs(window), |(n, m), o| {
            let lhs = self.bracket_generators(n, m);
            let rhs = -&self.bracket_generators(m, n);
            o.check("skew-symmetry", &[n.to_string(), m.to_string()], &lhs, &rhs);
        })
    }

    /// The six-term identity on generator triples.
    pub fn check_six_term(&self, window: &[D::Exp]) -> Outcome {
        let zero = WittElement::zero(self.arity());
        par_outcome(&triples(window), |(n, m, l), o| {
            let sum = self
                .six_term(&self.generator(n), &self.generator(m), &self.generator(l))
                .expect("six-term identity needs delta");
            o.check("jacobi-six-term", &[n.to_string(), m.to_string(), l.to_string()], &sum, &zero);
        })
    }

    /// `(n, m) -> <d_n, d_m>` over the window, lexicographic.
    pub fn structure_constants(&self, window: &[D::Exp]) -> Vec<StructureConstant<D::Exp, F>> {
        pairs(window)
            .into_par_iter()
            .map(|(n, m)| {
                let value = self.bracket_generators(&n, &m);
                StructureConstant { n, m, value }
            })
            .collect()
    }

    /// A single `+1` fault on a pseudo-random generator pair of the window.
    pub fn random_perturbation(&self, window: &[D::Exp], seed: u64) -> Perturbation<D::Exp, F> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let left = window.choose(&mut rng).expect("empty window").clone();
        let right = window.choose(&mut rng).expect("empty window").clone();
        let support: Vec<D::Exp> = self
            .bracket_generators(&left, &right)
            .terms()
            .map(|(e, _)| e.clone())
            .collect();
        let target = if support.is_empty() || rng.gen_bool(0.25) {
            window.choose(&mut rng).unwrap().clone()
        } else {
            support.choose(&mut rng).unwrap().clone()
        };
        Perturbation {
            left,
            right,
            target,
            amount: F::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstant<E: Exponent, F: Field> {
    pub n: E,
    pub m: E,
    pub value: WittElement<E, F>,
}

impl<E: Exponent, F: Field> StructureConstant<E, F> {
    pub fn to_json(&self) -> Value {
        json!({"n": self.n.to_json(), "m": self.m.to_json(), "bracket": self.value.to_json()})
    }
}

impl<F: Field> SingleWitt<F> {
    pub fn from_params(q: F, s: i64, k: i64, eta: F) -> Result<Self, WittError> {
        Ok(WittAlgebra::new(SigmaDerivation::from_params(q, s, k, eta)?))
    }
}

/// `eta ({n} - {m}) d_(n+m-k)`, the bracket for `s = 1`.
pub fn linear_relation<F: Field>(q: &F, k: i64, eta: &F, n: i64, m: i64) -> WittElement<i64, F> {
    let c = eta.clone() * &(q_integer(q, n) - q_integer(q, m));
    WittElement::from_terms(1, [(n + m - k, c)])
}

/// Closed form of `<d_n, d_m>` for `sigma(t) = q t^s`, split by the signs of `n` and `m`.
/// The `m >= 0 > n` case is the negated `n >= 0 > m` case with the arguments swapped.
pub fn nonlinear_relation<F: Field>(
    q: &F,
    s: i64,
    k: i64,
    eta: &F,
    n: i64,
    m: i64,
) -> WittElement<i64, F> {
    let qp = |e: i64| q.pow_i(e).expect("q must be nonzero");
    let mut out = WittElement::zero(1);
    let sign = |x: i64| F::from_int(x.signum());
    if n >= 0 && m >= 0 {
        let sg = sign(n - m);
        for l in n.min(m)..n.max(m) {
            out.add_term(s * (n + m - 1) - (k - 1) - l * (s - 1), sg.clone() * &qp(n + m - 1 - l));
        }
    } else if n >= 0 && m < 0 {
        for l in 0..(-m) {
            out.add_term((m + l) * (s - 1) + n * s + m - k, qp(n + m + l));
        }
        for l in 0..n {
            out.add_term((s - 1) * l + n + m * s - k, qp(m + l));
        }
    } else if m >= 0 && n < 0 {
        for l1 in 0..m {
            out.add_term((s - 1) * l1 + m + n * s - k, -qp(n + l1));
        }
        for l2 in 0..(-n) {
            out.add_term((n + l2) * (s - 1) + n + m * s - k, -qp(m + n + l2));
        }
    } else {
        let sg = sign(n - m);
        for l in (-n).min(-m)..(-n).max(-m) {
            out.add_term((m + n) * s + (s - 1) * l - k, sg.clone() * &qp(n + m + l));
        }
    }
    out.scale(eta)
}

/// Commutation relation, three-term deformed Jacobi identity and the six-term identity
/// for `s = 1`. With `k != 0` the Jacobi weights are `q^n + q^k`.
pub fn verify_theorem3<F: Field>(
    w: &SingleWitt<F>,
    pair_window: &[i64],
    triple_window: &[i64],
) -> Result<Report, WittError> {
    let d = w.derivation();
    if d.s() != 1 {
        return Err(WittError::WrongParameters(format!("requires s = 1, got s = {}", d.s())));
    }
    let (q, k, eta) = (d.q().clone(), d.k(), d.eta().clone());
    let mut report = w.base_report("thm3", "3", pair_window, triple_window);
    report.absorb(par_outcome(&pairs(pair_window), |(n, m), o| {
        let lhs = w.bracket_generators(n, m);
        let rhs = linear_relation(&q, k, &eta, *n, *m);
        o.check("commutation", &[n.to_string(), m.to_string()], &lhs, &rhs);
    }));
    let qk = q.pow_i(k).unwrap();
    let zero = WittElement::zero(1);
    report.absorb(par_outcome(&triples(triple_window), |(n, l, m), o| {
        let mut sum = WittElement::zero(1);
        for (a, b, c) in [(n, l, m), (l, m, n), (m, n, l)] {
            let weight = q.pow_i(*a).unwrap() + &qk;
            let inner = w.bracket_generators(b, c);
            sum = &sum + &w.bracket(&w.generator(a), &inner).scale(&weight);
        }
        o.check("jacobi-three-term", &[n.to_string(), l.to_string(), m.to_string()], &sum, &zero);
    }));
    report.absorb(w.check_six_term(triple_window));
    Ok(report)
}

/// Closed-form commutation relations, skew-symmetry and the six-term identity.
pub fn verify_theorem4<F: Field>(
    w: &SingleWitt<F>,
    pair_window: &[i64],
    triple_window: &[i64],
) -> Result<Report, WittError> {
    let d = w.derivation();
    if d.s() <= 0 {
        return Err(SigmaError::UnsupportedS(d.s()).into());
    }
    let (q, s, k, eta) = (d.q().clone(), d.s(), d.k(), d.eta().clone());
    let mut report = w.base_report("thm4", "4", pair_window, triple_window);
    report.absorb(par_outcome(&pairs(pair_window), |(n, m), o| {
        let lhs = w.bracket_generators(n, m);
        let rhs = nonlinear_relation(&q, s, k, &eta, *n, *m);
        o.check("commutation", &[n.to_string(), m.to_string()], &lhs, &rhs);
    }));
    report.absorb(w.check_skew(pair_window));
    report.absorb(w.check_six_term(triple_window));
    Ok(report)
}

/// `Q q^l d_(alpha(l)+k-G) - Q q^k d_(alpha(k)+l-G)` with `sigma(z^k) = q^k z^alpha(k)`.
pub fn multivariate_relation<F: Field>(
    d: &MultiSigmaDerivation<F>,
    kk: &ExpVec,
    ll: &ExpVec,
) -> WittElement<ExpVec, F> {
    let sigma = d.sigma_endo();
    let g = d.shift();
    let (qk, ak) = sigma.monomial(kk);
    let (ql, al) = sigma.monomial(ll);
    let mut out = WittElement::zero(kk.arity());
    out.add_term(al.add(kk).sub(g), d.scale().clone() * &ql);
    out.add_term(ak.add(ll).sub(g), -(d.scale().clone() * &qk));
    out
}

/// Skew-symmetry, the six-term identity and the generator relation in several variables.
pub fn verify_theorem5<F: Field>(
    w: &MultiWitt<F>,
    pair_window: &[ExpVec],
    triple_window: &[ExpVec],
) -> Result<Report, WittError> {
    let n = w.arity();
    if let Some(bad) = pair_window.iter().chain(triple_window).find(|e| e.arity() != n) {
        return Err(SigmaError::Arity { expected: n, got: bad.arity() }.into());
    }
    let mut report = w.base_report("thm5", "5", pair_window, triple_window);
    let d = w.derivation();
    report.absorb(par_outcome(&pairs(pair_window), |(a, b), o| {
        let lhs = w.bracket_generators(a, b);
        let rhs = multivariate_relation(d, a, b);
        o.check("commutation", &[a.to_string(), b.to_string()], &lhs, &rhs);
    }));
    report.absorb(w.check_skew(pair_window));
    report.absorb(w.check_six_term(triple_window));
    Ok(report)
}

/// Structure constants over `Q(q)` evaluated at a value of `q`.
pub fn specialize_table<E: Exponent>(
    table: &[StructureConstant<E, Fq>],
    value: &Rational,
) -> Result<Vec<StructureConstant<E, Rational>>, ExactError> {
    table
        .iter()
        .map(|c| {
            Ok(StructureConstant {
                n: c.n.clone(),
                m: c.m.clone(),
                value: c.value.specialize_q(value)?,
            })
        })
        .collect()
}

pub fn params_json<F: Field, D: Derivation<F>>(w: &WittAlgebra<F, D>) -> Value {
    let p: BTreeMap<String, String> = w.derivation().params();
    json!(p)
}
