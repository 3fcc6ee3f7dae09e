//! Stock algebras used by tests, the acceptance suite and the command line.

use super::grading::{CommutationFactor, Grade, GradeGroup};
use super::table::{make_color_algebra, vec_of, TableAlgebra};
use super::WittQhl;
use crate::exact::Field;
use crate::sigma::SigmaDerivation;
use crate::witt::WittAlgebra;

/// `sl2`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2<F: Field>() -> TableAlgebra<F> {
    let mut a = TableAlgebra::new("sl2", &["e", "f", "h"]);
    a.set_skew("h", "e", vec_of(&[("e", 2)]));
    a.set_skew("h", "f", vec_of(&[("f", -2)]));
    a.set_skew("e", "f", vec_of(&[("h", 1)]));
    a
}

/// The Lie superalgebra `osp(1|2)`: even `H, E, F`, odd `x, y`.
pub fn osp12<F: Field>() -> TableAlgebra<F> {
    let even = Grade(vec![0]);
    let odd = Grade(vec![1]);
    let basis = [("E", even.clone()), ("F", even.clone()), ("H", even), ("x", odd.clone()), ("y", odd)];
    let mut constants = Vec::new();
    let mut skew = |x: &'static str, y: &'static str, v: &[(&str, i64)]| {
        constants.push((x, y, vec_of::<F>(v)));
        constants.push((y, x, -&vec_of::<F>(v)));
    };
    skew("H", "E", &[("E", 2)]);
    skew("H", "F", &[("F", -2)]);
    skew("E", "F", &[("H", 1)]);
    skew("H", "x", &[("x", 1)]);
    skew("H", "y", &[("y", -1)]);
    skew("E", "y", &[("x", -1)]);
    skew("F", "x", &[("y", -1)]);
    constants.push(("x", "x", vec_of(&[("E", 2)])));
    constants.push(("y", "y", vec_of(&[("F", -2)])));
    constants.push(("x", "y", vec_of(&[("H", 1)])));
    constants.push(("y", "x", vec_of(&[("H", 1)])));
    make_color_algebra("osp(1|2)", GradeGroup::z2(), CommutationFactor::super_sign(), &basis, &constants)
        .expect("osp(1|2) is consistently graded")
}

/// A `Z/2 x Z/2` color algebra with `eps(a, b) = (-1)^(a1 b2 + a2 b1)` on
/// `x (1,0)`, `y (0,1)`, `z (1,1)` and symmetric brackets `<x,y> = z`, `<y,z> = x`,
/// `<z,x> = y`.
pub fn color_z2z2<F: Field>() -> TableAlgebra<F> {
    let basis = [("x", Grade(vec![1, 0])), ("y", Grade(vec![0, 1])), ("z", Grade(vec![1, 1]))];
    let mut constants = Vec::new();
    for (a, b, c) in [("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")] {
        constants.push((a, b, vec_of::<F>(&[(c, 1)])));
        constants.push((b, a, vec_of::<F>(&[(c, 1)])));
    }
    make_color_algebra("color-z2z2", GradeGroup::z2_z2(), CommutationFactor::z2_z2_sign(), &basis, &constants)
        .expect("color fixture is consistently graded")
}

/// Abelian Lie algebra on the given basis.
pub fn abelian<F: Field>(name: &str, basis: &[&str]) -> TableAlgebra<F> {
    TableAlgebra::new(name, basis)
}

/// Built-in table algebras by name.
pub fn by_name<F: Field>(name: &str) -> Option<TableAlgebra<F>> {
    match name {
        "sl2" => Some(sl2()),
        "osp12" | "osp(1|2)" => Some(osp12()),
        "color-z2z2" => Some(color_z2z2()),
        "plane" => Some(abelian("plane", &["x", "y"])),
        _ => None,
    }
}

/// The algebra with `<d_n, d_m> = ({n} - {m}) d_(n+m)` viewed as hom-Lie:
/// `alpha(d_n) = q^n d_n`, `beta = id`, `omega = -1`.
pub fn q_witt_hom_lie<F: Field>(q: F) -> WittQhl<F, SigmaDerivation<F>> {
    let d = SigmaDerivation::from_params(q, 1, 0, F::one()).expect("q must differ from 0 and 1");
    WittQhl::new(WittAlgebra::new(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_qhl_axioms, random_mutation, QhlAlgebra};
    use crate::exact::{parse_field, Fq, Rational};

    fn keys(a: &TableAlgebra<Rational>) -> Vec<String> {
        a.basis().unwrap()
    }

    #[test]
    fn stock_tables_pass() {
        for alg in [sl2::<Rational>(), osp12(), color_z2z2()] {
            let r = check_qhl_axioms(&alg, &keys(&alg));
            assert!(r.passed(), "{}: {r}", alg.name());
        }
    }

    #[test]
    fn super_odd_brackets_are_symmetric() {
        let a = osp12::<Rational>();
        let (x, y) = ("x".to_string(), "y".to_string());
        assert_eq!(a.omega(&x, &y), Some(Rational::from_integer(1.into())));
        assert_eq!(a.bracket(&x, &y), a.bracket(&y, &x));
    }

    #[test]
    fn q_witt_passes_and_wrong_beta_fails() {
        let q: Fq = parse_field("q").unwrap();
        let w = q_witt_hom_lie(q.clone());
        let window: Vec<i64> = (-2..=2).collect();
        assert!(check_qhl_axioms(&w, &window).passed());
        let bad = q_witt_hom_lie(q).with_beta_scale(parse_field("2").unwrap());
        let r = crate::algebra::check_beta_twisting(&bad, &window);
        assert!(!r.passed());
    }

    #[test]
    fn mutations_are_detected() {
        for alg in [sl2::<Rational>(), osp12(), color_z2z2()] {
            let window = keys(&alg);
            for seed in 0..20 {
                let m = random_mutation(alg.clone(), &window, seed);
                assert!(!check_qhl_axioms(&m, &window).passed(), "{} seed {seed}: {}", alg.name(), m.describe());
            }
        }
    }
}
