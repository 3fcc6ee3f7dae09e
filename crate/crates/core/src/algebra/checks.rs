use serde_json::Value;

use super::{QhlAlgebra, Vector};
use crate::exact::Field;
use crate::report::{pairs, par_outcome, triples, Report};

fn window_json<K: ToString>(window: &[K]) -> Value {
    Value::Array(window.iter().map(|k| Value::String(k.to_string())).collect())
}

fn idx<K: ToString>(keys: &[&K]) -> Vec<String> {
    keys.iter().map(|k| k.to_string()).collect()
}

/// `<alpha x, alpha y> = beta(alpha <x, y>)` on window pairs.
pub fn check_beta_twisting<F: Field, A: QhlAlgebra<F>>(alg: &A, window: &[A::Key]) -> Report {
    let mut report = Report::new("beta-twisting").with_window(window_json(window));
    report.absorb(par_outcome(&pairs(window), |(x, y), o| {
        let lhs = alg.bracket_vec(&alg.alpha(x), &alg.alpha(y));
        let rhs = alg.beta_vec(&alg.alpha_vec(&alg.bracket(x, y)));
        o.check("beta-twisting", &idx(&[x, y]), &lhs, &rhs);
    }));
    report
}

/// `<x, y> = omega(x, y) <y, x>` on window pairs inside the domain of `omega`.
pub fn check_omega_symmetry<F: Field, A: QhlAlgebra<F>>(alg: &A, window: &[A::Key]) -> Report {
    let mut report = Report::new("omega-symmetry").with_window(window_json(window));
    report.absorb(par_outcome(&pairs(window), |(x, y), o| {
        if let Some(w) = alg.omega(x, y) {
            let lhs = alg.bracket(x, y);
            let rhs = alg.bracket(y, x).scale(&w);
            o.check("omega-symmetry", &idx(&[x, y]), &lhs, &rhs);
        }
    }));
    report
}

/// `omega(z, x)(<alpha x, <y, z>> + beta <x, <y, z>>)` summed cyclically must vanish.
pub fn check_qhl_jacobi<F: Field, A: QhlAlgebra<F>>(alg: &A, window: &[A::Key]) -> Report {
    let mut report = Report::new("qhl-jacobi").with_window(window_json(window));
    report.absorb(par_outcome(&triples(window), |(x, y, z), o| {
        if let Some(sum) = jacobi_sum(alg, x, y, z) {
            o.check("qhl-jacobi", &idx(&[x, y, z]), &sum, &Vector::zero());
        }
    }));
    report
}

pub(crate) fn jacobi_sum<F: Field, A: QhlAlgebra<F>>(
    alg: &A,
    x: &A::Key,
    y: &A::Key,
    z: &A::Key,
) -> Option<Vector<A::Key, F>> {
    let mut sum = Vector::zero();
    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
        let w = alg.omega(c, a)?;
        let inner = alg.bracket(b, c);
        let mut term = alg.bracket_vec(&alg.alpha(a), &inner);
        term.add_scaled(&alg.beta_vec(&alg.bracket_vec(&Vector::basis(a.clone()), &inner)), &F::one());
        sum.add_scaled(&term, &w);
    }
    Some(sum)
}

/// All three axioms of a qhl-algebra.
pub fn check_qhl_axioms<F: Field, A: QhlAlgebra<F>>(alg: &A, window: &[A::Key]) -> Report {
    let mut report = Report::new("qhl-axioms").with_window(window_json(window));
    report.merge(check_beta_twisting(alg, window));
    report.merge(check_omega_symmetry(alg, window));
    report.merge(check_qhl_jacobi(alg, window));
    report
}

/// If `alpha` is the identity on the window, `beta` must fix every bracket value there.
pub fn check_remark1<F: Field, A: QhlAlgebra<F>>(alg: &A, window: &[A::Key]) -> Report {
    let mut report = Report::new("remark1").with_window(window_json(window));
    if window.iter().any(|x| alg.alpha(x) != Vector::basis(x.clone())) {
        report.notes.push("alpha is not the identity on the window; nothing to check".to_string());
        return report;
    }
    report.absorb(par_outcome(&pairs(window), |(x, y), o| {
        let v = alg.bracket(x, y);
        o.check("beta-fixes-brackets", &idx(&[x, y]), &alg.beta_vec(&v), &v);
    }));
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismMode {
    /// Bracket compatibility only.
    Weak,
    /// Bracket compatibility and both intertwining conditions.
    Strong,
}

/// Checks a linear map given on basis keys against the morphism conditions; in both
/// modes also checks `omega'(phi x, phi y) phi(v) = phi(omega(x, y) v)` for bracket
/// values `v` of the window.
pub fn check_morphism<F, A, B, P>(
    phi: P,
    source: &A,
    target: &B,
    mode: MorphismMode,
    window: &[A::Key],
) -> Report
where
    F: Field,
    A: QhlAlgebra<F>,
    B: QhlAlgebra<F>,
    P: Fn(&A::Key) -> Vector<B::Key, F> + Sync + Send,
{
    let mode_name = match mode {
        MorphismMode::Weak => "weak",
        MorphismMode::Strong => "strong",
    };
    let mut report = Report::new("morphism")
        .with_param("mode", mode_name)
        .with_window(window_json(window));
    let phi_vec = |v: &Vector<A::Key, F>| v.map_linear(&phi);
    let window_pairs = pairs(window);
    report.absorb(par_outcome(&window_pairs, |(x, y), o| {
        let lhs = phi_vec(&source.bracket(x, y));
        let rhs = target.bracket_vec(&phi(x), &phi(y));
        o.check("M1", &idx(&[x, y]), &lhs, &rhs);
    }));
    if mode == MorphismMode::Strong {
        report.absorb(par_outcome(window, |x, o| {
            let lhs = phi_vec(&source.alpha(x));
            let rhs = target.alpha_vec(&phi(x));
            o.check("M2", &idx(&[x]), &lhs, &rhs);
            let lhs = phi_vec(&source.beta(x));
            let rhs = target.beta_vec(&phi(x));
            o.check("M3", &idx(&[x]), &lhs, &rhs);
        }));
    }
    let mut values: Vec<Vector<A::Key, F>> = Vec::new();
    for (x, y) in &window_pairs {
        let v = source.bracket(x, y);
        if !v.is_zero() && !values.contains(&v) {
            values.push(v);
        }
    }
    report.absorb(par_outcome(&window_pairs, |(x, y), o| {
        let (Some(w), Some(w2)) = (source.omega(x, y), target.omega_vec(&phi(x), &phi(y))) else {
            return;
        };
        for (i, v) in values.iter().enumerate() {
            let lhs = phi_vec(v).scale(&w2);
            let rhs = phi_vec(&v.scale(&w));
            let mut indices = idx(&[x, y]);
            indices.push(format!("value {i}"));
            o.check("omega-intertwining", &indices, &lhs, &rhs);
        }
    }));
    report
}
