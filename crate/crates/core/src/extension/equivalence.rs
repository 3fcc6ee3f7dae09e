use std::sync::Arc;

use super::{
    apply_linear, idx, lift_a, window_json, Bilinear, BuiltExtension, ExtKey, ExtensionData, ExtensionError, Linear,
};
use crate::algebra::{check_morphism, BasisKey, MorphismMode, QhlAlgebra, Vector};
use crate::exact::Field;
use crate::report::{par_outcome, Report};

/// `g'(x, y) = g(x, y) - xi(<x, y>)`.
pub fn transform_cocycle<F: Field, L: QhlAlgebra<F> + 'static, AK: BasisKey>(
    l: Arc<L>,
    g: Bilinear<F, L::Key, AK>,
    xi: Linear<F, L::Key, AK>,
) -> Bilinear<F, L::Key, AK> {
    Arc::new(move |x, y| &g(x, y) - &apply_linear(&xi, &l.bracket(x, y)))
}

impl<F: Field, L: QhlAlgebra<F> + 'static, A: QhlAlgebra<F> + 'static> ExtensionData<F, L, A> {
    /// Same `f` and `h`, cocycle `g - xi <.,.>`.
    pub fn transformed(&self, xi: Linear<F, L::Key, A::Key>) -> Self {
        let g = transform_cocycle(self.l_arc(), self.cocycle().clone(), xi);
        self.clone().with_cocycle(g)
    }

    /// The data carried over by `phi(s l + iota a) = s l + iota(a - xi l)`: besides `g`,
    /// `f(l) + f(iota xi l) - xi(alpha l)` and likewise for `h`.
    pub fn transported(&self, xi: Linear<F, L::Key, A::Key>) -> Self {
        let base = self.clone();
        let (d1, x1) = (base.clone(), xi.clone());
        let f: Linear<F, L::Key, A::Key> = Arc::new(move |x| {
            let moved = d1.f_vec(&lift_a(&x1(x)));
            &(&(d1.f_on_l())(x) + &moved) - &apply_linear(&x1, &d1.l().alpha(x))
        });
        let (d2, x2) = (base.clone(), xi.clone());
        let h: Linear<F, L::Key, A::Key> = Arc::new(move |x| {
            let moved = d2.h_vec(&lift_a(&x2(x)));
            &(&(d2.h_on_l())(x) + &moved) - &apply_linear(&x2, &d2.l().beta(x))
        });
        self.transformed(xi).with_f(f).with_h(h)
    }
}

/// `phi(x) = x - iota xi(x)` on `L`-keys, identity on `a`.
pub fn phi_map<F: Field, K: BasisKey, AK: BasisKey>(
    xi: Linear<F, K, AK>,
) -> impl Fn(&ExtKey<K, AK>) -> Vector<ExtKey<K, AK>, F> + Send + Sync {
    move |k| match k {
        ExtKey::L(x) => &Vector::basis(k.clone()) - &lift_a(&xi(x)),
        ExtKey::A(_) => Vector::basis(k.clone()),
    }
}

/// The inverse of [`phi_map`].
pub fn psi_map<F: Field, K: BasisKey, AK: BasisKey>(
    xi: Linear<F, K, AK>,
) -> impl Fn(&ExtKey<K, AK>) -> Vector<ExtKey<K, AK>, F> + Send + Sync {
    move |k| match k {
        ExtKey::L(x) => &Vector::basis(k.clone()) + &lift_a(&xi(x)),
        ExtKey::A(_) => Vector::basis(k.clone()),
    }
}

/// Checks that `phi` built from `xi` is a bijective morphism `E -> E'` (weak mode) and,
/// in strong mode, also an intertwiner of `alpha` and `beta` together with the sufficient
/// conditions `alpha_a xi = xi alpha_L`, `f s = f' s'` and their `beta` analogues.
pub fn check_equivalence<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>>(
    e: &BuiltExtension<F, L, A>,
    e2: &BuiltExtension<F, L, A>,
    xi: Linear<F, L::Key, A::Key>,
    mode: MorphismMode,
    l_window: &[L::Key],
) -> Result<Report, ExtensionError> {
    if e.l().basis() != e2.l().basis() {
        return Err(ExtensionError::Mismatch("the basis of L".into()));
    }
    if e.a().basis() != e2.a().basis() {
        return Err(ExtensionError::Mismatch("the basis of a".into()));
    }
    let window = e.window(l_window);
    let phi = phi_map(xi.clone());
    let psi = psi_map(xi.clone());
    let mut report = Report::new("equivalence").with_window(window_json(&window));
    report.params.insert(
        "mode".into(),
        match mode {
            MorphismMode::Weak => "weak",
            MorphismMode::Strong => "strong",
        }
        .into(),
    );
    report.merge(check_morphism(&phi, e, e2, mode, &window));
    report.absorb(par_outcome(&window, |k, o| {
        let id = Vector::basis(k.clone());
        o.check("bijective", &idx(&[k]), &phi(k).map_linear(&psi), &id);
        o.check("bijective", &idx(&[k]), &psi(k).map_linear(&phi), &id);
    }));
    if mode == MorphismMode::Strong {
        let (l, a) = (e.l(), e.a());
        let (d, d2) = (e.data(), e2.data());
        report.absorb(par_outcome(l_window, |x, o| {
            let ids = idx(&[x]);
            let lx = ExtKey::L(x.clone());
            o.check("S1-alpha", &ids, &a.alpha_vec(&xi(x)), &apply_linear(&xi, &l.alpha(x)));
            o.check("S2-alpha", &ids, &d.f(&lx), &d2.f(&lx));
            o.check("S1-beta", &ids, &a.beta_vec(&xi(x)), &apply_linear(&xi, &l.beta(x)));
            o.check("S2-beta", &ids, &d.h(&lx), &d2.h(&lx));
        }));
    }
    Ok(report)
}
