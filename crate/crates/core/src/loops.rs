//! Deformed loop algebras `g ⊗ F[t, 1/t]` and their one-dimensional central extension.
//!
//! The extension cocycle is `g(x t^n, y t^m) = B(x, y) (D(t^n) t^m)_0` for the `s = 1`
//! sigma-derivation, which collapses to `B(x, y) eta {n}_q [n + m = k]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::algebra::{
    check_beta_twisting, check_omega_symmetry, check_qhl_jacobi, coeff_from_json, parse_pair, AlgebraError,
    BasisKey, QhlAlgebra, TableAlgebra, Vector,
};
use crate::exact::{q_integer, Field, Laurent};
use crate::extension::fixtures::central_line;
use crate::extension::{BuiltExtension, ExtKey, ExtensionData};
use crate::report::{pairs, par_outcome, triples, Report};
use crate::sigma::{Derivation, SigmaDerivation};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopKey<K> {
    pub base: K,
    pub degree: i64,
}

impl<K> LoopKey<K> {
    pub fn new(base: K, degree: i64) -> Self {
        LoopKey { base, degree }
    }
}

impl<K: fmt::Display> fmt::Display for LoopKey<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗t^{}", self.base, self.degree)
    }
}

/// Places a base vector at degree `n`.
pub fn at_degree<F: Field, K: BasisKey>(u: &Vector<K, F>, n: i64) -> Vector<LoopKey<K>, F> {
    u.map_keys(|x| LoopKey::new(x.clone(), n))
}

/// `<x t^n, y t^m> = <x, y> t^(n+m)`, with `alpha`, `beta`, `omega` acting on the base factor.
pub struct LoopAlgebra<A> {
    base: Arc<A>,
}

impl<A> Clone for LoopAlgebra<A> {
    fn clone(&self) -> Self {
        LoopAlgebra { base: self.base.clone() }
    }
}

pub fn build_loop<A>(base: A) -> LoopAlgebra<A> {
    LoopAlgebra { base: Arc::new(base) }
}

impl<A> LoopAlgebra<A> {
    pub fn from_arc(base: Arc<A>) -> Self {
        LoopAlgebra { base }
    }

    pub fn base(&self) -> &A {
        &self.base
    }

    pub fn window<K: Clone>(&self, base_keys: &[K], degrees: &[i64]) -> Vec<LoopKey<K>> {
        loop_window(base_keys, degrees)
    }
}

/// Every base key at every listed degree.
pub fn loop_window<K: Clone>(base_keys: &[K], degrees: &[i64]) -> Vec<LoopKey<K>> {
    base_keys
        .iter()
        .flat_map(|x| degrees.iter().map(move |n| LoopKey::new(x.clone(), *n)))
        .collect()
}

impl<F: Field, A: QhlAlgebra<F>> QhlAlgebra<F> for LoopAlgebra<A> {
    type Key = LoopKey<A::Key>;

    fn bracket(&self, x: &Self::Key, y: &Self::Key) -> Vector<Self::Key, F> {
        at_degree(&self.base.bracket(&x.base, &y.base), x.degree + y.degree)
    }

    fn alpha(&self, x: &Self::Key) -> Vector<Self::Key, F> {
        at_degree(&self.base.alpha(&x.base), x.degree)
    }

    fn beta(&self, x: &Self::Key) -> Vector<Self::Key, F> {
        at_degree(&self.base.beta(&x.base), x.degree)
    }

    fn omega(&self, x: &Self::Key, y: &Self::Key) -> Option<F> {
        self.base.omega(&x.base, &y.base)
    }
}

/// A bilinear form on base keys; absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<F: Field, K: BasisKey> {
    entries: BTreeMap<(K, K), F>,
}

impl<F: Field, K: BasisKey> BilinearForm<F, K> {
    pub fn zero() -> Self {
        BilinearForm { entries: BTreeMap::new() }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((K, K), F)>) -> Self {
        let mut form = Self::zero();
        for ((x, y), c) in entries {
            form.set(x, y, c);
        }
        form
    }

    pub fn set(&mut self, x: K, y: K, c: F) {
        if c.is_zero() {
            self.entries.remove(&(x, y));
        } else {
            self.entries.insert((x, y), c);
        }
    }

    pub fn get(&self, x: &K, y: &K) -> F {
        self.entries.get(&(x.clone(), y.clone())).cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, u: &Vector<K, F>, v: &Vector<K, F>) -> F {
        let mut acc = F::zero();
        for (x, a) in u.terms() {
            for (y, b) in v.terms() {
                let c = self.get(x, y);
                if !c.is_zero() {
                    acc = acc + &(c * a * b);
                }
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(K, K), &F)> {
        self.entries.iter()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for ((x, y), c) in &self.entries {
            m.insert(format!("({x},{y})"), Value::String(c.to_string()));
        }
        Value::Object(m)
    }
}

impl<F: Field> BilinearForm<F, String> {
    /// `{"(x,y)": coeff}`.
    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let obj = v
            .as_object()
            .ok_or_else(|| AlgebraError::Descriptor("bilinear form must be an object".into()))?;
        let mut form = Self::zero();
        for (pair, c) in obj {
            let (x, y) = parse_pair(pair)?;
            form.set(x, y, coeff_from_json(c)?);
        }
        Ok(form)
    }
}

/// `tr(ad x ad y)` for a finite-dimensional Lie algebra.
pub fn killing_form<F: Field, A: QhlAlgebra<F>>(base: &A) -> Result<BilinearForm<F, A::Key>, AlgebraError> {
    let basis = base
        .basis()
        .ok_or_else(|| AlgebraError::NotLie("the basis is not finite".into()))?;
    for x in &basis {
        if base.alpha(x) != Vector::basis(x.clone()) || base.beta(x) != Vector::basis(x.clone()) {
            return Err(AlgebraError::NotLie(format!("alpha or beta moves {x}")));
        }
        for y in &basis {
            if base.omega(x, y) != Some(-F::one()) {
                return Err(AlgebraError::NotLie(format!("omega({x}, {y}) is not -1")));
            }
        }
    }
    let jacobi = check_qhl_jacobi(base, &basis);
    if let Some(f) = jacobi.failures.first() {
        return Err(AlgebraError::NotLie(format!("Jacobi fails at ({})", f.indices.join(", "))));
    }
    let entries: Vec<((A::Key, A::Key), F)> = pairs(&basis)
        .into_par_iter()
        .map(|(x, y)| {
            let mut tr = F::zero();
            for z in &basis {
                let v = base.bracket_vec(&Vector::basis(x.clone()), &base.bracket(&y, z));
                tr = tr + &v.coeff(z);
            }
            ((x, y), tr)
        })
        .collect();
    Ok(BilinearForm::from_entries(entries))
}

/// Symmetry `B(x, y) = B(y, x)` and invariance `B(<x, y>, z) = B(x, <y, z>)`.
pub fn check_invariant_form<F: Field, A: QhlAlgebra<F>>(
    base: &A,
    form: &BilinearForm<F, A::Key>,
    window: &[A::Key],
) -> Report {
    let mut report = Report::new("invariant-form")
        .with_window(Value::Array(window.iter().map(|k| Value::String(k.to_string())).collect()));
    report.absorb(par_outcome(&pairs(window), |(x, y), o| {
        o.check("symmetric", &[x.to_string(), y.to_string()], &form.get(x, y), &form.get(y, x));
    }));
    report.absorb(par_outcome(&triples(window), |(x, y, z), o| {
        let lhs = form.eval(&base.bracket(x, y), &Vector::basis(z.clone()));
        let rhs = form.eval(&Vector::basis(x.clone()), &base.bracket(y, z));
        o.check("invariant", &[x.to_string(), y.to_string(), z.to_string()], &lhs, &rhs);
    }));
    report
}

/// `g(x t^n, y t^m) = B(x, y) eta {n}_q [n + m = k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopCocycle<F: Field, K: BasisKey> {
    form: BilinearForm<F, K>,
    eta: F,
    k: i64,
    q: F,
}

impl<F: Field, K: BasisKey> LoopCocycle<F, K> {
    pub fn new(form: BilinearForm<F, K>, eta: F, k: i64, q: F) -> Self {
        LoopCocycle { form, eta, k, q }
    }

    pub fn form(&self) -> &BilinearForm<F, K> {
        &self.form
    }

    pub fn eta(&self) -> &F {
        &self.eta
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    /// `eta {n}_q [n + m = k]`.
    pub fn degree_factor(&self, n: i64, m: i64) -> F {
        if n + m != self.k {
            return F::zero();
        }
        self.eta.clone() * &q_integer(&self.q, n)
    }

    /// `(D(t^n) t^m)_0`, read off the derivation itself; at `q = 1` the derivation is
    /// `eta t^(1-k) d/dt`.
    pub fn residue(&self, n: i64, m: i64) -> F {
        let image = if self.q.is_one() {
            Laurent::term(n - self.k, self.eta.clone() * &F::from_int(n))
        } else {
            SigmaDerivation::from_params(self.q.clone(), 1, self.k, self.eta.clone())
                .expect("q is nonzero and not 1")
                .apply(&Laurent::t_pow(n))
        };
        (&image * &Laurent::t_pow(m)).coeff(&0)
    }

    pub fn value(&self, x: &LoopKey<K>, y: &LoopKey<K>) -> F {
        let d = self.degree_factor(x.degree, y.degree);
        if d.is_zero() {
            return d;
        }
        self.form.get(&x.base, &y.base) * &d
    }

    pub fn eval(&self, u: &Vector<LoopKey<K>, F>, v: &Vector<LoopKey<K>, F>) -> F {
        let mut acc = F::zero();
        for (x, a) in u.terms() {
            for (y, b) in v.terms() {
                let c = self.value(x, y);
                if !c.is_zero() {
                    acc = acc + &(c * a * b);
                }
            }
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({
            "B": self.form.to_json(),
            "eta": self.eta.to_string(),
            "k": self.k,
            "q": self.q.to_string(),
        })
    }
}

pub type CentralLoop<F, A> = BuiltExtension<F, LoopAlgebra<A>, TableAlgebra<F>>;

pub type CentralLoopKey<K> = ExtKey<LoopKey<K>, String>;

/// `ĝ ⊕ F c` with `<x t^n, y t^m> = <x, y> t^(n+m) + g(x t^n, y t^m) c`; `c` is central and
/// fixed by `alpha` and `beta`.
pub fn build_central_loop<F, A>(lp: LoopAlgebra<A>, cocycle: LoopCocycle<F, A::Key>) -> CentralLoop<F, A>
where
    F: Field,
    A: QhlAlgebra<F> + 'static,
{
    let g = Arc::new(move |x: &LoopKey<A::Key>, y: &LoopKey<A::Key>| {
        Vector::term("c".to_string(), cocycle.value(x, y))
    });
    let data = ExtensionData::from_arcs(Arc::new(lp), Arc::new(central_line::<F>())).with_cocycle(g);
    BuiltExtension::assemble(data)
}

/// Re-runs the checks the construction guarantees: `omega`-symmetry, `beta`-twisting and
/// centrality of `c`.
pub fn check_central_loop<F, A>(ext: &CentralLoop<F, A>, base_keys: &[A::Key], degrees: &[i64]) -> Report
where
    F: Field,
    A: QhlAlgebra<F>,
{
    let l_window = loop_window(base_keys, degrees);
    let window = ext.window(&l_window);
    let mut report = Report::new("central-loop").with_window(json!({
        "base": base_keys.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        "degrees": degrees,
    }));
    report.merge(check_omega_symmetry(ext, &window));
    report.merge(check_beta_twisting(ext, &window));
    report.merge(ext.check_centrality(&window));
    let c = ExtKey::A("c".to_string());
    report.check("alpha-fixes-c", &["c".to_string()], &ext.alpha(&c), &Vector::basis(c.clone()));
    report.check("beta-fixes-c", &["c".to_string()], &ext.beta(&c), &Vector::basis(c.clone()));
    report
}

/// One evaluated cyclic sum `↻ g((alpha + id) x t^n, <y, z> t^(m+l))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual<F, K> {
    pub base: [K; 3],
    pub degrees: [i64; 3],
    pub value: F,
}

/// Cyclic sums over every base triple and every degree triple.
pub fn loop_residuals<F, A>(
    base: &A,
    cocycle: &LoopCocycle<F, A::Key>,
    base_keys: &[A::Key],
    degrees: &[i64],
) -> Vec<Residual<F, A::Key>>
where
    F: Field,
    A: QhlAlgebra<F>,
{
    let items: Vec<_> = triples(base_keys)
        .into_iter()
        .flat_map(|b| triples(degrees).into_iter().map(move |d| (b.clone(), d)))
        .collect();
    let term = |x: &A::Key, y: &A::Key, z: &A::Key, n: i64, m: i64, l: i64| {
        let ax = &base.alpha(x) + &Vector::basis(x.clone());
        cocycle.eval(&at_degree(&ax, n), &at_degree(&base.bracket(y, z), m + l))
    };
    items
        .par_iter()
        .map(|((x, y, z), (n, m, l))| {
            let value = term(x, y, z, *n, *m, *l) + term(y, z, x, *m, *l, *n) + term(z, x, y, *l, *n, *m);
            Residual { base: [x.clone(), y.clone(), z.clone()], degrees: [*n, *m, *l], value }
        })
        .collect()
}

/// Residual report: a failure for every nonzero cyclic sum, with counts in the notes.
pub fn check_loop_cocycle<F, A>(
    base: &A,
    cocycle: &LoopCocycle<F, A::Key>,
    base_keys: &[A::Key],
    degrees: &[i64],
) -> Report
where
    F: Field,
    A: QhlAlgebra<F>,
{
    let mut report = Report::new("loop-cocycle")
        .with_param("eta", cocycle.eta())
        .with_param("k", cocycle.k())
        .with_param("q", cocycle.q())
        .with_window(json!({
            "base": base_keys.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "degrees": degrees,
        }));
    let residuals = loop_residuals(base, cocycle, base_keys, degrees);
    let mut max_degree: Option<i64> = None;
    for r in &residuals {
        let idx: Vec<String> = r
            .base
            .iter()
            .map(|k| k.to_string())
            .chain(r.degrees.iter().map(|d| d.to_string()))
            .collect();
        if !report.check("loop-cocycle", &idx, &r.value, &F::zero()) {
            let d = r.degrees.iter().map(|d| d.abs()).sum::<i64>();
            max_degree = Some(max_degree.map_or(d, |m| m.max(d)));
        }
    }
    report.notes.push(format!("nonzero residuals: {} of {}", report.failures.len(), residuals.len()));
    if let Some(d) = max_degree {
        report.notes.push(format!("largest |n|+|m|+|l| with a nonzero residual: {d}"));
    }
    report
}
