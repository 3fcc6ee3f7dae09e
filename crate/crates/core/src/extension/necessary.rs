use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_linear, idx, table_linear, window_json, ExtKey, ExtensionError, Linear};
use crate::algebra::{BasisKey, QhlAlgebra, Vector};
use crate::exact::Field;
use crate::report::{pairs, par_outcome, triples, Report};

/// A splitting of `0 -> a -> E -> L -> 0` presented by four linear maps on basis keys:
/// the section `s`, the injection `iota`, the projection `pr` and a retraction `r` with
/// `r iota = id`. The `a`-component of `e` is `r(e - s pr e)`.
pub struct Section<F: Field, K: BasisKey, AK: BasisKey, EK: BasisKey> {
    section: Linear<F, K, EK>,
    injection: Linear<F, AK, EK>,
    projection: Linear<F, EK, K>,
    retraction: Linear<F, EK, AK>,
}

impl<F: Field, K: BasisKey, AK: BasisKey, EK: BasisKey> Clone for Section<F, K, AK, EK> {
    fn clone(&self) -> Self {
        Section {
            section: self.section.clone(),
            injection: self.injection.clone(),
            projection: self.projection.clone(),
            retraction: self.retraction.clone(),
        }
    }
}

impl<F: Field, K: BasisKey, AK: BasisKey, EK: BasisKey> Section<F, K, AK, EK> {
    pub fn new(
        section: Linear<F, K, EK>,
        injection: Linear<F, AK, EK>,
        projection: Linear<F, EK, K>,
        retraction: Linear<F, EK, AK>,
    ) -> Self {
        Section { section, injection, projection, retraction }
    }

    pub fn s(&self, u: &Vector<K, F>) -> Vector<EK, F> {
        apply_linear(&self.section, u)
    }

    pub fn iota(&self, u: &Vector<AK, F>) -> Vector<EK, F> {
        apply_linear(&self.injection, u)
    }

    pub fn pr(&self, u: &Vector<EK, F>) -> Vector<K, F> {
        apply_linear(&self.projection, u)
    }

    pub fn retract(&self, u: &Vector<EK, F>) -> Vector<AK, F> {
        apply_linear(&self.retraction, u)
    }
}

impl<F: Field, K: BasisKey, AK: BasisKey> Section<F, K, AK, ExtKey<K, AK>> {
    /// `s(x) = (x, 0)` on `L + a`.
    pub fn canonical() -> Self {
        Self::shifted(Arc::new(|_| Vector::zero()))
    }

    /// `s(x) = (x, k(x))`.
    pub fn shifted(k: Linear<F, K, AK>) -> Self {
        Section {
            section: Arc::new(move |x| {
                let mut v = k(x).map_keys(|b| ExtKey::A(b.clone()));
                v.add_term(ExtKey::L(x.clone()), F::one());
                v
            }),
            injection: Arc::new(|b| Vector::basis(ExtKey::A(b.clone()))),
            projection: Arc::new(|e| match e {
                ExtKey::L(x) => Vector::basis(x.clone()),
                ExtKey::A(_) => Vector::zero(),
            }),
            retraction: Arc::new(|e| match e {
                ExtKey::L(_) => Vector::zero(),
                ExtKey::A(b) => Vector::basis(b.clone()),
            }),
        }
    }
}

/// Pseudo-random `k: L -> a` with entries in `-3..=3`, zero on keys that are not admissible.
pub fn random_shift<F: Field, K: BasisKey, AK: BasisKey>(
    keys: &[K],
    a_basis: &[AK],
    seed: u64,
    admissible: impl Fn(&K) -> bool,
) -> Linear<F, K, AK> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = BTreeMap::new();
    for x in keys {
        let mut v = Vector::zero();
        for b in a_basis {
            let c: i64 = rng.gen_range(-3..=3);
            if admissible(x) {
                v.add_term(b.clone(), F::from_int(c));
            }
        }
        table.insert(x.clone(), v);
    }
    table_linear(table)
}

/// `g`, `f` and `h` read off an extension through a section:
/// `<s x, s y> = s<x, y> + iota g(x, y)`, `alpha_E = s alpha_L pr + iota f`,
/// `beta_E = s beta_L pr + iota h`.
pub struct Extraction<'a, F: Field, E: QhlAlgebra<F>, L: QhlAlgebra<F>, A: QhlAlgebra<F>> {
    e: &'a E,
    l: &'a L,
    a: &'a A,
    sec: &'a Section<F, L::Key, A::Key, E::Key>,
}

impl<'a, F: Field, E: QhlAlgebra<F>, L: QhlAlgebra<F>, A: QhlAlgebra<F>> Extraction<'a, F, E, L, A> {
    /// Fails unless `pr s = id` on the window.
    pub fn new(
        e: &'a E,
        l: &'a L,
        a: &'a A,
        sec: &'a Section<F, L::Key, A::Key, E::Key>,
        window: &[L::Key],
    ) -> Result<Self, ExtensionError> {
        for x in window {
            let image = sec.pr(&sec.s(&Vector::basis(x.clone())));
            if image != Vector::basis(x.clone()) {
                return Err(ExtensionError::NotSplitting { key: x.to_string(), image: image.to_string() });
            }
        }
        Ok(Extraction { e, l, a, sec })
    }

    pub fn l(&self) -> &L {
        self.l
    }

    pub fn a(&self) -> &A {
        self.a
    }

    fn sx(&self, x: &L::Key) -> Vector<E::Key, F> {
        self.sec.s(&Vector::basis(x.clone()))
    }

    /// `<s x, s y>_E - s<x, y>_L`.
    pub fn defect(&self, x: &L::Key, y: &L::Key) -> Vector<E::Key, F> {
        let br = self.e.bracket_vec(&self.sx(x), &self.sx(y));
        &br - &self.sec.s(&self.l.bracket(x, y))
    }

    pub fn g(&self, x: &L::Key, y: &L::Key) -> Vector<A::Key, F> {
        self.sec.retract(&self.defect(x, y))
    }

    pub fn g_vec(&self, u: &Vector<L::Key, F>, v: &Vector<L::Key, F>) -> Vector<A::Key, F> {
        u.bilinear(v, |x, y| self.g(x, y))
    }

    pub fn f(&self, k: &E::Key) -> Vector<A::Key, F> {
        let ek = Vector::basis(k.clone());
        let diff = &self.e.alpha(k) - &self.sec.s(&self.l.alpha_vec(&self.sec.pr(&ek)));
        self.sec.retract(&diff)
    }

    pub fn h(&self, k: &E::Key) -> Vector<A::Key, F> {
        let ek = Vector::basis(k.clone());
        let diff = &self.e.beta(k) - &self.sec.s(&self.l.beta_vec(&self.sec.pr(&ek)));
        self.sec.retract(&diff)
    }

    pub fn f_vec(&self, u: &Vector<E::Key, F>) -> Vector<A::Key, F> {
        u.map_linear(|k| self.f(k))
    }

    pub fn h_vec(&self, u: &Vector<E::Key, F>) -> Vector<A::Key, F> {
        u.map_linear(|k| self.h(k))
    }

    /// `g(alpha x, <y, z>) + h(s<x, <y, z>> + iota g(x, <y, z>))`.
    pub fn inner(&self, x: &L::Key, y: &L::Key, z: &L::Key) -> Vector<A::Key, F> {
        let w = self.l.bracket(y, z);
        let xv = Vector::basis(x.clone());
        let mut out = self.g_vec(&self.l.alpha(x), &w);
        let e = &self.sec.s(&self.l.bracket_vec(&xv, &w)) + &self.sec.iota(&self.g_vec(&xv, &w));
        out.add_scaled(&self.h_vec(&e), &F::one());
        out
    }

    /// The three weighted terms of the cyclic condition, weights `omega_L(z, x)`.
    pub fn cyclic_terms(&self, x: &L::Key, y: &L::Key, z: &L::Key) -> Option<Vec<Vector<A::Key, F>>> {
        [(x, y, z), (y, z, x), (z, x, y)]
            .into_iter()
            .map(|(p, r, t)| Some(self.inner(p, r, t).scale(&self.l.omega(t, p)?)))
            .collect()
    }

    pub fn cyclic_sum(&self, x: &L::Key, y: &L::Key, z: &L::Key) -> Option<Vector<A::Key, F>> {
        let mut sum = Vector::zero();
        for t in self.cyclic_terms(x, y, z)? {
            sum.add_scaled(&t, &F::one());
        }
        Some(sum)
    }
}

fn omega_text<F: Field>(w: Option<F>) -> String {
    w.map_or_else(|| "undefined".to_string(), |w| w.to_string())
}

/// Extracts `g, f, h` through the section and checks the intertwining of `omega`,
/// `f iota = alpha_a`, `h iota = beta_a`, omega-alternation of `g`, the twisting relation
/// and the cyclic condition on the window. The cyclic weights are `omega_L(z, x)`, which
/// is what `omega_E(s z, s x)` acts by on `iota(a)` once the section intertwines.
pub fn check_necessary_conditions<F: Field, E: QhlAlgebra<F>, L: QhlAlgebra<F>, A: QhlAlgebra<F>>(
    e: &E,
    l: &L,
    a: &A,
    sec: &Section<F, L::Key, A::Key, E::Key>,
    window: &[L::Key],
) -> Result<Report, ExtensionError> {
    let ext = Extraction::new(e, l, a, sec, window)?;
    let mut report = Report::new("necessary-conditions").with_window(window_json(window));
    match a.basis() {
        Some(ab) => {
            for b in &ab {
                let bv = Vector::basis(b.clone());
                let ib = sec.iota(&bv);
                report.check("pr-iota", &idx(&[b]), &sec.pr(&ib), &Vector::zero());
                report.check("retraction", &idx(&[b]), &sec.retract(&ib), &bv);
                report.check("f-iota", &idx(&[b]), &ext.f_vec(&ib), &a.alpha(b));
                report.check("h-iota", &idx(&[b]), &ext.h_vec(&ib), &a.beta(b));
                report.absorb(par_outcome(window, |x, o| {
                    let sx = ext.sx(x);
                    o.check("central", &[b.to_string(), x.to_string()], &e.bracket_vec(&ib, &sx), &Vector::zero());
                    o.check("central", &[x.to_string(), b.to_string()], &e.bracket_vec(&sx, &ib), &Vector::zero());
                }));
            }
        }
        None => report.notes.push("a has no finite basis; conditions on iota(a) were not checked".into()),
    }
    report.absorb(par_outcome(window, |x, o| {
        let sx = ext.sx(x);
        o.check("box-alpha", &idx(&[x]), &sec.pr(&e.alpha_vec(&sx)), &l.alpha(x));
        o.check("box-beta", &idx(&[x]), &sec.pr(&e.beta_vec(&sx)), &l.beta(x));
    }));
    report.absorb(par_outcome(&pairs(window), |(x, y), o| {
        let ids = idx(&[x, y]);
        let wl = l.omega(x, y);
        if wl.is_some() {
            let we = e.omega_vec(&ext.sx(x), &ext.sx(y));
            o.check("omega-intertwining", &ids, &omega_text(we), &omega_text(wl.clone()));
        }
        let defect = ext.defect(x, y);
        let g = sec.retract(&defect);
        o.check("defect-in-a", &ids, &defect, &sec.iota(&g));
        if let Some(w) = wl {
            o.check("omega-alternating", &ids, &g, &ext.g(y, x).scale(&w));
        }
        let lhs = ext.g_vec(&l.alpha(x), &l.alpha(y));
        let sxy = e.bracket_vec(&ext.sx(x), &ext.sx(y));
        let arg = &sec.s(&l.alpha_vec(&l.bracket(x, y))) + &sec.iota(&ext.f_vec(&sxy));
        o.check("twisting", &ids, &lhs, &ext.h_vec(&arg));
    }));
    report.absorb(par_outcome(&triples(window), |(x, y, z), o| {
        if let Some(sum) = ext.cyclic_sum(x, y, z) {
            o.check("cyclic", &idx(&[x, y, z]), &sum, &Vector::zero());
        }
    }));
    Ok(report)
}

/// With `beta = id` and `h` the projection onto `a`, each cyclic term must equal
/// `g((id + alpha) x, <y, z>)` and the weighted sum must be minus the sum of those.
pub fn check_hom_lie_reduction<F: Field, E: QhlAlgebra<F>, L: QhlAlgebra<F>, A: QhlAlgebra<F>>(
    ext: &Extraction<'_, F, E, L, A>,
    window: &[L::Key],
) -> Report {
    let l = ext.l;
    let mut report = Report::new("hom-lie-reduction").with_window(window_json(window));
    report.absorb(par_outcome(&triples(window), |(x, y, z), o| {
        let Some(sum) = ext.cyclic_sum(x, y, z) else { return };
        let mut reduced = Vector::zero();
        for (p, r, t) in [(x, y, z), (y, z, x), (z, x, y)] {
            let arg = &Vector::basis(p.clone()) + &l.alpha(p);
            let red = ext.g_vec(&arg, &l.bracket(r, t));
            o.check("term", &idx(&[p, r, t]), &ext.inner(p, r, t), &red);
            reduced.add_scaled(&red, &F::one());
        }
        o.check("sum", &idx(&[x, y, z]), &sum, &-&reduced);
    }));
    report
}

/// With `alpha = beta = id`, `h` the projection and `omega = -eps`, each weighted cyclic
/// term must be `-2 eps(z, x) g(x, <y, z>)`; the sum is `-2` times the graded cocycle sum.
pub fn check_color_reduction<F: Field, E: QhlAlgebra<F>, L: QhlAlgebra<F>, A: QhlAlgebra<F>>(
    ext: &Extraction<'_, F, E, L, A>,
    eps: impl Fn(&L::Key, &L::Key) -> Option<F> + Sync + Send,
    window: &[L::Key],
) -> Report {
    let l = ext.l;
    let two = F::from_int(-2);
    let mut report = Report::new("color-reduction").with_window(window_json(window));
    report.absorb(par_outcome(&triples(window), |(x, y, z), o| {
        let Some(terms) = ext.cyclic_terms(x, y, z) else { return };
        let mut sum = Vector::zero();
        let mut graded = Vector::zero();
        for ((p, r, t), term) in [(x, y, z), (y, z, x), (z, x, y)].into_iter().zip(&terms) {
            let Some(e) = eps(t, p) else { return };
            let g = ext.g_vec(&Vector::basis(p.clone()), &l.bracket(r, t)).scale(&e);
            o.check("term", &idx(&[p, r, t]), term, &g.scale(&two));
            sum.add_scaled(term, &F::one());
            graded.add_scaled(&g, &F::one());
        }
        o.check("sum", &idx(&[x, y, z]), &sum, &graded.scale(&two));
    }));
    report
}
