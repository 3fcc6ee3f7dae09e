//! Central extensions `0 -> a -> E -> L -> 0` of a qhl-algebra `L` by an abelian `a`.
//!
//! `E = L + a` lives on keys `ExtKey::L(x)` and `ExtKey::A(a)` with
//! `<(x,0),(y,0)> = (<x,y>, g(x,y))`, `alpha_E(x,a) = (alpha x, f(x,a))` and
//! `beta_E(x,a) = (beta x, h(x,a))`. `f` and `h` are stored as their restrictions to `L`
//! plus an optional restriction to `a`; a missing one means `alpha_a` (resp. `beta_a`).

mod equivalence;
pub mod fixtures;
mod necessary;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{check_qhl_axioms, AlgebraError, BasisKey, QhlAlgebra, Vector};
use crate::exact::Field;
use crate::report::{pairs, par_outcome, triples, Report};

pub use equivalence::{check_equivalence, phi_map, psi_map, transform_cocycle};
pub use necessary::{
    check_color_reduction, check_hom_lie_reduction, check_necessary_conditions, random_shift, Extraction, Section,
};

/// Bilinear map given on pairs of basis keys.
pub type Bilinear<F, K, AK> = Arc<dyn Fn(&K, &K) -> Vector<AK, F> + Send + Sync>;
/// Linear map given on basis keys.
pub type Linear<F, K, AK> = Arc<dyn Fn(&K) -> Vector<AK, F> + Send + Sync>;

pub fn zero_bilinear<F: Field, K: BasisKey, AK: BasisKey>() -> Bilinear<F, K, AK> {
    Arc::new(|_, _| Vector::zero())
}

pub fn zero_linear<F: Field, K: BasisKey, AK: BasisKey>() -> Linear<F, K, AK> {
    Arc::new(|_| Vector::zero())
}

/// Missing pairs map to zero.
pub fn table_bilinear<F: Field, K: BasisKey, AK: BasisKey>(
    entries: BTreeMap<(K, K), Vector<AK, F>>,
) -> Bilinear<F, K, AK> {
    Arc::new(move |x, y| entries.get(&(x.clone(), y.clone())).cloned().unwrap_or_default())
}

/// Missing keys map to zero.
pub fn table_linear<F: Field, K: BasisKey, AK: BasisKey>(entries: BTreeMap<K, Vector<AK, F>>) -> Linear<F, K, AK> {
    Arc::new(move |x| entries.get(x).cloned().unwrap_or_default())
}

pub fn apply_linear<F: Field, K: BasisKey, AK: BasisKey>(m: &Linear<F, K, AK>, u: &Vector<K, F>) -> Vector<AK, F> {
    u.map_linear(|x| m(x))
}

pub fn apply_bilinear<F: Field, K: BasisKey, AK: BasisKey>(
    m: &Bilinear<F, K, AK>,
    u: &Vector<K, F>,
    v: &Vector<K, F>,
) -> Vector<AK, F> {
    u.bilinear(v, |x, y| m(x, y))
}

/// Basis key of `L + a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtKey<K, AK> {
    L(K),
    A(AK),
}

impl<K: fmt::Display, AK: fmt::Display> fmt::Display for ExtKey<K, AK> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtKey::L(x) => write!(f, "{x}"),
            ExtKey::A(a) => write!(f, "{a}"),
        }
    }
}

pub fn lift_l<F: Field, K: BasisKey, AK: BasisKey>(u: &Vector<K, F>) -> Vector<ExtKey<K, AK>, F> {
    u.map_keys(|k| ExtKey::L(k.clone()))
}

pub fn lift_a<F: Field, K: BasisKey, AK: BasisKey>(u: &Vector<AK, F>) -> Vector<ExtKey<K, AK>, F> {
    u.map_keys(|k| ExtKey::A(k.clone()))
}

/// The `L`- and `a`-components of a vector of `L + a`.
pub fn split<F: Field, K: BasisKey, AK: BasisKey>(u: &Vector<ExtKey<K, AK>, F>) -> (Vector<K, F>, Vector<AK, F>) {
    let mut l = Vector::zero();
    let mut a = Vector::zero();
    for (k, c) in u.terms() {
        match k {
            ExtKey::L(x) => l.add_term(x.clone(), c.clone()),
            ExtKey::A(b) => a.add_term(b.clone(), c.clone()),
        }
    }
    (l, a)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtensionError {
    #[error("condition {condition} fails at ({indices}): {lhs} vs {rhs}")]
    Precondition { condition: String, indices: String, lhs: String, rhs: String },
    #[error("section does not split at {key}: pr(s({key})) = {image}")]
    NotSplitting { key: String, image: String },
    #[error("extensions do not share {0}")]
    Mismatch(String),
    #[error("{0}")]
    Descriptor(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Data A, B and C: `g: L x L -> a`, `f, h: L + a -> a`.
pub struct ExtensionData<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>> {
    l: Arc<L>,
    a: Arc<A>,
    g: Bilinear<F, L::Key, A::Key>,
    f_l: Linear<F, L::Key, A::Key>,
    h_l: Linear<F, L::Key, A::Key>,
    f_a: Option<Linear<F, A::Key, A::Key>>,
    h_a: Option<Linear<F, A::Key, A::Key>>,
}

impl<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>> Clone for ExtensionData<F, L, A> {
    fn clone(&self) -> Self {
        ExtensionData {
            l: self.l.clone(),
            a: self.a.clone(),
            g: self.g.clone(),
            f_l: self.f_l.clone(),
            h_l: self.h_l.clone(),
            f_a: self.f_a.clone(),
            h_a: self.h_a.clone(),
        }
    }
}

impl<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>> ExtensionData<F, L, A> {
    /// Trivial data: `g = 0`, `f(l, a) = alpha_a(a)`, `h(l, a) = beta_a(a)`.
    pub fn new(l: L, a: A) -> Self {
        Self::from_arcs(Arc::new(l), Arc::new(a))
    }

    pub fn from_arcs(l: Arc<L>, a: Arc<A>) -> Self {
        ExtensionData {
            l,
            a,
            g: zero_bilinear(),
            f_l: zero_linear(),
            h_l: zero_linear(),
            f_a: None,
            h_a: None,
        }
    }

    pub fn with_cocycle(mut self, g: Bilinear<F, L::Key, A::Key>) -> Self {
        self.g = g;
        self
    }

    /// `f(l, 0)`.
    pub fn with_f(mut self, f: Linear<F, L::Key, A::Key>) -> Self {
        self.f_l = f;
        self
    }

    /// `h(l, 0)`.
    pub fn with_h(mut self, h: Linear<F, L::Key, A::Key>) -> Self {
        self.h_l = h;
        self
    }

    /// `f(0, a)`, replacing the default `alpha_a`.
    pub fn with_f_on_a(mut self, f: Linear<F, A::Key, A::Key>) -> Self {
        self.f_a = Some(f);
        self
    }

    /// `h(0, a)`, replacing the default `beta_a`.
    pub fn with_h_on_a(mut self, h: Linear<F, A::Key, A::Key>) -> Self {
        self.h_a = Some(h);
        self
    }

    pub fn l(&self) -> &L {
        &self.l
    }

    pub fn a(&self) -> &A {
        &self.a
    }

    pub fn l_arc(&self) -> Arc<L> {
        self.l.clone()
    }

    pub fn a_arc(&self) -> Arc<A> {
        self.a.clone()
    }

    pub fn cocycle(&self) -> &Bilinear<F, L::Key, A::Key> {
        &self.g
    }

    pub fn f_on_l(&self) -> &Linear<F, L::Key, A::Key> {
        &self.f_l
    }

    pub fn h_on_l(&self) -> &Linear<F, L::Key, A::Key> {
        &self.h_l
    }

    pub fn g(&self, x: &L::Key, y: &L::Key) -> Vector<A::Key, F> {
        (self.g)(x, y)
    }

    pub fn g_vec(&self, u: &Vector<L::Key, F>, v: &Vector<L::Key, F>) -> Vector<A::Key, F> {
        apply_bilinear(&self.g, u, v)
    }

    pub fn f(&self, e: &ExtKey<L::Key, A::Key>) -> Vector<A::Key, F> {
        match e {
            ExtKey::L(x) => (self.f_l)(x),
            ExtKey::A(b) => match &self.f_a {
                Some(m) => m(b),
                None => self.a.alpha(b),
            },
        }
    }

    pub fn h(&self, e: &ExtKey<L::Key, A::Key>) -> Vector<A::Key, F> {
        match e {
            ExtKey::L(x) => (self.h_l)(x),
            ExtKey::A(b) => match &self.h_a {
                Some(m) => m(b),
                None => self.a.beta(b),
            },
        }
    }

    pub fn f_vec(&self, u: &Vector<ExtKey<L::Key, A::Key>, F>) -> Vector<A::Key, F> {
        u.map_linear(|e| self.f(e))
    }

    pub fn h_vec(&self, u: &Vector<ExtKey<L::Key, A::Key>, F>) -> Vector<A::Key, F> {
        u.map_linear(|e| self.h(e))
    }

    /// `omega_L(z,x)(g(alpha x, <y,z>) + h(<x,<y,z>>, g(x,<y,z>)))` summed cyclically;
    /// `None` when some weight is undefined.
    pub fn cocycle_sum(&self, x: &L::Key, y: &L::Key, z: &L::Key) -> Option<Vector<A::Key, F>> {
        let l = self.l();
        let mut sum = Vector::zero();
        for (p, r, t) in [(x, y, z), (y, z, x), (z, x, y)] {
            let w = l.omega(t, p)?;
            let inner = l.bracket(r, t);
            let xp = Vector::basis(p.clone());
            let mut term = self.g_vec(&l.alpha(p), &inner);
            let outer = lift_l::<F, L::Key, A::Key>(&l.bracket_vec(&xp, &inner));
            let e = &outer + &lift_a(&self.g_vec(&xp, &inner));
            term.add_scaled(&self.h_vec(&e), &F::one());
            sum.add_scaled(&term, &w);
        }
        Some(sum)
    }
}

fn window_json<K: ToString>(window: &[K]) -> Value {
    Value::Array(window.iter().map(|k| Value::String(k.to_string())).collect())
}

fn idx<K: ToString>(keys: &[&K]) -> Vec<String> {
    keys.iter().map(|k| k.to_string()).collect()
}

/// Data A, B, C on the window: `a` abelian, `f(0,a) = alpha_a(a)`, `h(0,a) = beta_a(a)`,
/// `g` omega-alternating, the twisting relation on pairs and the cocycle condition on
/// triples.
pub fn check_data_abc<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>>(
    d: &ExtensionData<F, L, A>,
    window: &[L::Key],
) -> Report {
    let (l, a) = (d.l(), d.a());
    let mut report = Report::new("extension-data").with_window(window_json(window));
    match a.basis() {
        Some(ab) => {
            report.absorb(par_outcome(&pairs(&ab), |(x, y), o| {
                o.check("a-abelian", &idx(&[x, y]), &a.bracket(x, y), &Vector::zero());
            }));
            for b in &ab {
                let e = ExtKey::A(b.clone());
                report.check("f-on-a", &idx(&[b]), &d.f(&e), &a.alpha(b));
                report.check("h-on-a", &idx(&[b]), &d.h(&e), &a.beta(b));
            }
        }
        None => report.notes.push("a has no finite basis; conditions on a were not checked".into()),
    }
    report.absorb(par_outcome(&pairs(window), |(x, y), o| {
        if let Some(w) = l.omega(x, y) {
            o.check("omega-alternating", &idx(&[x, y]), &d.g(x, y), &d.g(y, x).scale(&w));
        }
        let lhs = d.g_vec(&l.alpha(x), &l.alpha(y));
        let br = l.bracket(x, y);
        let inner = &lift_l(&br) + &lift_a(&d.g(x, y));
        let arg = &lift_l(&l.alpha_vec(&br)) + &lift_a(&d.f_vec(&inner));
        o.check("twisting", &idx(&[x, y]), &lhs, &d.h_vec(&arg));
    }));
    report.absorb(par_outcome(&triples(window), |(x, y, z), o| {
        if let Some(sum) = d.cocycle_sum(x, y, z) {
            o.check("cocycle", &idx(&[x, y, z]), &sum, &Vector::zero());
        }
    }));
    report
}

fn first_failure(report: &Report) -> Option<ExtensionError> {
    report.failures.first().map(|f| ExtensionError::Precondition {
        condition: f.condition.clone(),
        indices: f.indices.join(", "),
        lhs: f.lhs.clone(),
        rhs: f.rhs.clone(),
    })
}

/// Builds `E = L + a` after checking the data on the window.
pub fn build_extension<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>>(
    d: ExtensionData<F, L, A>,
    window: &[L::Key],
) -> Result<BuiltExtension<F, L, A>, ExtensionError> {
    let report = check_data_abc(&d, window);
    match first_failure(&report) {
        Some(e) => Err(e),
        None => Ok(BuiltExtension::assemble(d)),
    }
}

/// `L + a` with the bracket and twisting maps induced by the data.
pub struct BuiltExtension<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>> {
    data: ExtensionData<F, L, A>,
}

impl<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>> Clone for BuiltExtension<F, L, A> {
    fn clone(&self) -> Self {
        BuiltExtension { data: self.data.clone() }
    }
}

type EKey<F, L, A> = ExtKey<<L as QhlAlgebra<F>>::Key, <A as QhlAlgebra<F>>::Key>;

impl<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>> BuiltExtension<F, L, A> {
    /// No checks; see [`build_extension`].
    pub fn assemble(data: ExtensionData<F, L, A>) -> Self {
        BuiltExtension { data }
    }

    pub fn data(&self) -> &ExtensionData<F, L, A> {
        &self.data
    }

    pub fn l(&self) -> &L {
        self.data.l()
    }

    pub fn a(&self) -> &A {
        self.data.a()
    }

    /// The given `L`-keys followed by the basis of `a`.
    pub fn window(&self, l_window: &[L::Key]) -> Vec<EKey<F, L, A>> {
        let mut w: Vec<EKey<F, L, A>> = l_window.iter().map(|x| ExtKey::L(x.clone())).collect();
        w.extend(self.a().basis().unwrap_or_default().into_iter().map(ExtKey::A));
        w
    }

    /// `s(x) = (x, 0)`, `iota(a) = (0, a)`, `pr(x, a) = x`, retraction `(x, a) -> a`.
    pub fn canonical_section(&self) -> Section<F, L::Key, A::Key, EKey<F, L, A>> {
        Section::canonical()
    }

    /// `<iota(a), e> = <e, iota(a)> = 0`.
    pub fn check_centrality(&self, window: &[EKey<F, L, A>]) -> Report {
        let mut report = Report::new("centrality").with_window(window_json(window));
        let central = self.window(&[]);
        let items: Vec<(EKey<F, L, A>, EKey<F, L, A>)> = central
            .iter()
            .flat_map(|c| window.iter().map(move |e| (c.clone(), e.clone())))
            .collect();
        report.absorb(par_outcome(&items, |(c, e), o| {
            o.check("central", &idx(&[c, e]), &self.bracket(c, e), &Vector::zero());
            o.check("central", &idx(&[e, c]), &self.bracket(e, c), &Vector::zero());
        }));
        report
    }

    /// Commutativity of the squares: `pr alpha_E = alpha_L pr`, `alpha_E iota = iota alpha_a`,
    /// and the same for `beta`.
    pub fn check_boxes(&self, window: &[EKey<F, L, A>]) -> Report {
        let (l, a) = (self.l(), self.a());
        let mut report = Report::new("exact-sequence").with_window(window_json(window));
        report.absorb(par_outcome(window, |e, o| {
            let (al, _) = split(&self.alpha(e));
            let (bl, _) = split(&self.beta(e));
            let (pl, _) = split(&Vector::basis(e.clone()));
            o.check("box-alpha-pr", &idx(&[e]), &al, &l.alpha_vec(&pl));
            o.check("box-beta-pr", &idx(&[e]), &bl, &l.beta_vec(&pl));
            if let ExtKey::A(b) = e {
                o.check("box-alpha-iota", &idx(&[e]), &self.alpha(e), &lift_a(&a.alpha(b)));
                o.check("box-beta-iota", &idx(&[e]), &self.beta(e), &lift_a(&a.beta(b)));
            }
        }));
        report
    }

    /// Axioms of `E`, centrality, the squares and the extracted conditions for the
    /// canonical section.
    pub fn verify(&self, l_window: &[L::Key]) -> Report {
        let window = self.window(l_window);
        let mut report = Report::new("extension").with_window(window_json(&window));
        report.merge(check_qhl_axioms(self, &window));
        report.merge(self.check_centrality(&window));
        report.merge(self.check_boxes(&window));
        match check_necessary_conditions(self, self.l(), self.a(), &self.canonical_section(), l_window) {
            Ok(r) => report.merge(r),
            Err(e) => report.fail("splitting", &[], e.to_string(), "pr s = id".into()),
        }
        report
    }

    /// Table descriptor of `E` (finite bases only), with an explicit `omega` table.
    pub fn to_descriptor(&self, name: &str) -> Result<Value, ExtensionError> {
        let basis = self
            .basis()
            .ok_or_else(|| ExtensionError::Descriptor("only finite-dimensional extensions have descriptors".into()))?;
        let names: Vec<String> = basis.iter().map(|k| k.to_string()).collect();
        let mut seen = names.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != names.len() {
            return Err(ExtensionError::Descriptor("basis names of L and a collide".into()));
        }
        let mut bracket = Map::new();
        let mut omega = Map::new();
        for x in &basis {
            for y in &basis {
                let v = self.bracket(x, y);
                if !v.is_zero() {
                    bracket.insert(format!("({x},{y})"), v.to_json());
                }
                if let Some(w) = self.omega(x, y) {
                    omega.insert(format!("({x},{y})"), Value::String(w.to_string()));
                }
            }
        }
        let maps = |m: &dyn Fn(&EKey<F, L, A>) -> Vector<EKey<F, L, A>, F>| {
            let mut out = Map::new();
            for x in &basis {
                let v = m(x);
                if v != Vector::basis(x.clone()) {
                    out.insert(x.to_string(), v.to_json());
                }
            }
            Value::Object(out)
        };
        Ok(json!({
            "name": name,
            "basis": names,
            "bracket": bracket,
            "alpha": maps(&|x| self.alpha(x)),
            "beta": maps(&|x| self.beta(x)),
            "omega": omega,
        }))
    }
}

impl<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>> QhlAlgebra<F> for BuiltExtension<F, L, A> {
    type Key = EKey<F, L, A>;

    fn bracket(&self, x: &Self::Key, y: &Self::Key) -> Vector<Self::Key, F> {
        match (x, y) {
            (ExtKey::L(x), ExtKey::L(y)) => &lift_l(&self.l().bracket(x, y)) + &lift_a(&self.data.g(x, y)),
            _ => Vector::zero(),
        }
    }

    fn alpha(&self, x: &Self::Key) -> Vector<Self::Key, F> {
        let base = match x {
            ExtKey::L(y) => lift_l(&self.l().alpha(y)),
            ExtKey::A(_) => Vector::zero(),
        };
        &base + &lift_a(&self.data.f(x))
    }

    fn beta(&self, x: &Self::Key) -> Vector<Self::Key, F> {
        let base = match x {
            ExtKey::L(y) => lift_l(&self.l().beta(y)),
            ExtKey::A(_) => Vector::zero(),
        };
        &base + &lift_a(&self.data.h(x))
    }

    /// `omega_L` on `s(L)`, `omega_a` on `iota(a)`; mixed pairs lie outside the domain.
    fn omega(&self, x: &Self::Key, y: &Self::Key) -> Option<F> {
        match (x, y) {
            (ExtKey::L(x), ExtKey::L(y)) => self.l().omega(x, y),
            (ExtKey::A(a), ExtKey::A(b)) => self.a().omega(a, b),
            _ => None,
        }
    }

    fn basis(&self) -> Option<Vec<Self::Key>> {
        let mut out: Vec<Self::Key> = self.l().basis()?.into_iter().map(ExtKey::L).collect();
        out.extend(self.a().basis()?.into_iter().map(ExtKey::A));
        Some(out)
    }

    /// Blockwise: the pair of `L`-components and the pair of `a`-components each give a
    /// value when both components are nonzero; they must agree.
    fn omega_vec(&self, u: &Vector<Self::Key, F>, v: &Vector<Self::Key, F>) -> Option<F> {
        let (ul, ua) = split(u);
        let (vl, va) = split(v);
        let mut value: Option<F> = None;
        let blocks = [
            (!ul.is_zero() && !vl.is_zero()).then(|| self.l().omega_vec(&ul, &vl)),
            (!ua.is_zero() && !va.is_zero()).then(|| self.a().omega_vec(&ua, &va)),
        ];
        for w in blocks.into_iter().flatten() {
            let w = w?;
            match &value {
                Some(prev) if *prev != w => return None,
                _ => value = Some(w),
            }
        }
        value
    }
}
