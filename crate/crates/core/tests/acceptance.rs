use std::io::Write;
use std::time::{Duration, Instant};

use qhl::algebra::fixtures::{color_z2z2, osp12, q_witt_hom_lie, sl2};
use qhl::algebra::{check_qhl_axioms, random_mutation, MorphismMode, QhlAlgebra, TableAlgebra, Vector};
use qhl::exact::{parse_field, ExpVec, Field, Fq, Fq1q2, FqEta, Laurent, Rational};
use qhl::extension::fixtures::{self, dual, TableExtension, WittExtension};
use qhl::extension::{
    apply_linear, check_color_reduction, check_data_abc, check_equivalence, check_hom_lie_reduction,
    check_necessary_conditions, random_shift, BuiltExtension, ExtKey, ExtensionData, Extraction, Linear, Section,
};
use qhl::loops::{build_loop, check_loop_cocycle, killing_form, loop_window, LoopCocycle};
use qhl::report::Report;
use qhl::sigma::{window_box, MultiSigmaDerivation, MultiSigmaEndo};
use num_traits::One;
use qhl::witt::{specialize_table, verify_theorem4, verify_theorem5, SingleWitt, WittAlgebra, WittElement};

type Outcome = Result<String, String>;

fn criterion(n: u32, title: &str, budget_secs: u64, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let result = match result {
        Ok(detail) if elapsed > Duration::from_secs(budget_secs) => {
            Err(format!("{detail}; took {} ms, budget {budget_secs} s", elapsed.as_millis()))
        }
        other => other,
    };
    let line = match &result {
        Ok(detail) => format!("criterion {n:>2}: PASS  {title}: {detail} ({} ms)", elapsed.as_millis()),
        Err(why) => format!("criterion {n:>2}: FAIL  {title}: {why}"),
    };
    // written past the test harness's capture so every run shows the verdict
    let _ = writeln!(std::io::stderr(), "{line}");
    if let Err(why) = result {
        panic!("criterion {n} failed: {why}");
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn passes(r: &Report) -> Result<(), String> {
    ensure(r.passed(), || r.to_string())
}

fn fq(s: &str) -> Fq {
    parse_field(s).unwrap()
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `(1 - q^n)/(1 - q)`.
fn q_int<F: Field>(q: &F, n: i64) -> F {
    (F::one() - q.pow_i(n).unwrap()) * (F::one() - q.clone()).inv().unwrap()
}

fn window(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).collect()
}

fn keys<F: Field>(a: &TableAlgebra<F>) -> Vec<String> {
    a.basis().unwrap()
}

fn witt_q() -> SingleWitt<Fq> {
    SingleWitt::from_params(fq("q"), 1, 0, Fq::one()).unwrap()
}

#[test]
fn criterion_01_witt_brackets() {
    criterion(1, "q-Witt brackets, formal q, pairs in [-6,6]^2", 5, || {
        let w = witt_q();
        let q = fq("q");
        let mut checked = 0;
        for n in -6..=6 {
            for m in -6..=6 {
                let want = WittElement::from_terms(1, [(n + m, q_int(&q, n) - q_int(&q, m))]);
                let got = w.bracket_generators(&n, &m);
                ensure(got == want, || format!("<d_{n}, d_{m}> = {got}, expected {want}"))?;
                checked += 1;
            }
        }
        Ok(format!("{checked} pairs equal ({{n}} - {{m}}) d_(n+m)"))
    });
}

#[test]
fn criterion_02_witt_hom_jacobi() {
    criterion(2, "q-Witt hom-Jacobi identity, triples in [-4,4]^3", 30, || {
        let w = witt_q();
        let q = fq("q");
        let mut checked = 0;
        for n in -4..=4 {
            for l in -4..=4 {
                for m in -4..=4 {
                    let mut sum = WittElement::zero(1);
                    for (a, b, c) in [(n, l, m), (l, m, n), (m, n, l)] {
                        let inner = w.bracket_generators(&b, &c);
                        let term = w.bracket(&w.generator(&a), &inner).scale(&(q.pow_i(a).unwrap() + Fq::one()));
                        sum = &sum + &term;
                    }
                    ensure(sum.is_zero(), || format!("triple ({n}, {l}, {m}) leaves {sum}"))?;
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} triples vanish"))
    });
}

#[test]
fn criterion_03_higher_s_closed_forms() {
    criterion(3, "closed forms and six-term identity for s > 1, (s,k) in {2,3}x{0,1,2}", 120, || {
        let q: FqEta = parse_field("q").unwrap();
        let eta: FqEta = parse_field("eta").unwrap();
        let mut checked = 0;
        for s in [2, 3] {
            for k in [0, 1, 2] {
                let w = SingleWitt::from_params(q.clone(), s, k, eta.clone()).unwrap();
                let mut delta = Laurent::zero(1);
                for j in 0..s {
                    delta.add_term(k * (s - 1) + j * (s - 1), q.pow_i(k + j).unwrap());
                }
                let got = w.delta().cloned().unwrap_or_else(|| Laurent::zero(1));
                ensure(got == delta, || format!("s={s} k={k}: delta = {got}, expected {delta}"))?;
                let report = verify_theorem4(&w, &window(-4, 4), &window(-3, 3)).unwrap();
                passes(&report)?;
                let signs: std::collections::BTreeSet<(bool, bool)> =
                    window(-4, 4).iter().flat_map(|n| window(-4, 4).into_iter().map(move |m| (*n >= 0, m >= 0))).collect();
                ensure(signs.len() == 4, || "window misses a sign case".into())?;
                checked += report.checked;
            }
        }
        Ok(format!("{checked} identities over six parameter pairs"))
    });
}

#[test]
fn criterion_04_classical_limit() {
    criterion(4, "q = 1 specialization gives (n - m) d_(n+m)", 5, || {
        let table = witt_q().structure_constants(&window(-6, 6));
        let special = specialize_table(&table, &r(1)).map_err(|e| e.to_string())?;
        for c in &special {
            let want = WittElement::from_terms(1, [(c.n + c.m, r(c.n - c.m))]);
            ensure(c.value == want, || format!("<d_{}, d_{}> = {}, expected {want}", c.n, c.m, c.value))?;
        }
        Ok(format!("{} pairs", special.len()))
    });
}

#[test]
fn criterion_05_multivariate_witt() {
    criterion(5, "two-variable Witt algebra, S = I, G = 0, Q = 1, formal q1, q2", 120, || {
        let q1: Fq1q2 = parse_field("q1").unwrap();
        let q2: Fq1q2 = parse_field("q2").unwrap();
        let sigma = MultiSigmaEndo::new(vec![q1.clone(), q2.clone()], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let d = MultiSigmaDerivation::new(sigma, Fq1q2::one(), ExpVec::new([0, 0])).unwrap();
        let w = WittAlgebra::new(d);
        let win = window_box(2, -2, 2);
        let report = verify_theorem5(&w, &win, &win).unwrap();
        passes(&report)?;
        let qpow = |k: &ExpVec| q1.pow_i(k.as_slice()[0]).unwrap() * q2.pow_i(k.as_slice()[1]).unwrap();
        for a in &win {
            for b in &win {
                let sum = ExpVec::new([a.as_slice()[0] + b.as_slice()[0], a.as_slice()[1] + b.as_slice()[1]]);
                let want = WittElement::from_terms(2, [(sum, qpow(b) - qpow(a))]);
                let got = w.bracket_generators(a, b);
                ensure(got == want, || format!("<d_{a}, d_{b}> = {got}, expected {want}"))?;
            }
        }
        Ok(format!("{} identities plus {} displayed relations", report.checked, win.len() * win.len()))
    });
}

fn mutation_sensitivity<A: QhlAlgebra<F> + Clone, F: Field>(alg: A, window: &[A::Key], name: &str) -> Result<(), String> {
    passes(&check_qhl_axioms(&alg, window))?;
    for seed in 0..20 {
        let m = random_mutation(alg.clone(), window, seed);
        ensure(!check_qhl_axioms(&m, window).passed(), || format!("{name}: mutation {} undetected", m.describe()))?;
    }
    Ok(())
}

#[test]
fn criterion_06_qhl_checkers() {
    criterion(6, "qhl checkers on sl2, osp(1|2), Z2xZ2 color, q-Witt; 20 mutations each", 60, || {
        for alg in [sl2::<Rational>(), osp12(), color_z2z2()] {
            mutation_sensitivity(&alg, &keys(&alg), alg.name())?;
        }
        let w = q_witt_hom_lie(fq("q"));
        let win = window(-3, 3);
        for n in &win {
            let alpha = w.alpha(n);
            ensure(alpha == Vector::term(*n, fq("q").pow_i(*n).unwrap()), || format!("alpha(d_{n}) = {alpha}"))?;
        }
        mutation_sensitivity(&w, &win, "q-Witt")?;
        Ok("4 fixtures pass, 80 mutations caught".into())
    });
}

fn table_fixtures() -> Vec<(String, TableExtension<Rational>)> {
    fixtures::NAMES
        .iter()
        .map(|n| (n.to_string(), fixtures::by_name(n).unwrap()))
        .collect()
}

fn witt_fixtures() -> Vec<(String, WittExtension<Fq>)> {
    vec![
        ("q-witt-trivial".to_string(), fixtures::q_witt_trivial(fq("q"))),
        ("q-witt-coboundary".to_string(), fixtures::q_witt_coboundary(fq("q"), 1)),
    ]
}

fn round_trip<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>>(
    name: &str,
    data: ExtensionData<F, L, A>,
    w: &[L::Key],
) -> Result<bool, String> {
    if !check_data_abc(&data, w).passed() {
        return Ok(false);
    }
    let e = BuiltExtension::assemble(data);
    let ew = e.window(w);
    let axioms = check_qhl_axioms(&e, &ew);
    let central = e.check_centrality(&ew);
    let nec = check_necessary_conditions(&e, e.l(), e.a(), &e.canonical_section(), w).map_err(|x| x.to_string())?;
    for rep in [&axioms, &central, &nec] {
        ensure(rep.passed(), || format!("{name}: {rep}"))?;
    }
    Ok(true)
}

#[test]
fn criterion_07_extension_round_trip() {
    criterion(7, "built extensions pass qhl checks, centrality and the necessary conditions", 60, || {
        let mut built = Vec::new();
        for (name, d) in table_fixtures() {
            let w = keys(d.l());
            if round_trip(&name, d, &w)? {
                built.push(name);
            }
        }
        ensure(built.contains(&"heisenberg".to_string()), || "Heisenberg data rejected".into())?;
        ensure(!built.contains(&"symmetric".to_string()), || "symmetric cocycle accepted".into())?;
        for (name, d) in witt_fixtures() {
            ensure(round_trip(&name, d, &window(-3, 3))?, || format!("{name} rejected"))?;
            built.push(name);
        }
        Ok(format!("built and verified: {}", built.join(", ")))
    });
}

/// `eps(a, b) = (-1)^(|a||b|)` for the super grading of `osp(1|2)`.
fn super_eps(a: &String, b: &String) -> Option<Rational> {
    let odd = |x: &String| x == "x" || x == "y";
    Some(if odd(a) && odd(b) { r(-1) } else { r(1) })
}

/// `eps(a, b) = (-1)^(a1 b2 + a2 b1)` on `x (1,0)`, `y (0,1)`, `z (1,1)`.
fn z2z2_eps(a: &String, b: &String) -> Option<Rational> {
    let deg = |x: &String| match x.as_str() {
        "x" => (1, 0),
        "y" => (0, 1),
        _ => (1, 1),
    };
    let (a, b) = (deg(a), deg(b));
    Some(if (a.0 * b.1 + a.1 * b.0) % 2 == 1 { r(-1) } else { r(1) })
}

#[test]
fn criterion_08_reductions() {
    criterion(8, "hom-Lie and color reductions of the cyclic condition", 60, || {
        let mut checked = 0;
        for name in ["heisenberg", "sl2-coboundary", "trivial"] {
            let d = fixtures::by_name::<Rational>(name).unwrap();
            let w = keys(d.l());
            let e = BuiltExtension::assemble(d);
            let sec = e.canonical_section();
            let ext = Extraction::new(&e, e.l(), e.a(), &sec, &w).map_err(|x| x.to_string())?;
            let rep = check_hom_lie_reduction(&ext, &w);
            passes(&rep)?;
            checked += rep.checked;
        }
        for (_, d) in witt_fixtures() {
            let w = window(-3, 3);
            let e = BuiltExtension::assemble(d);
            let sec = e.canonical_section();
            let ext = Extraction::new(&e, e.l(), e.a(), &sec, &w).map_err(|x| x.to_string())?;
            let rep = check_hom_lie_reduction(&ext, &w);
            passes(&rep)?;
            checked += rep.checked;
        }
        let e = BuiltExtension::assemble(fixtures::osp12_coboundary::<Rational>());
        let w = keys(e.l());
        let sec = e.canonical_section();
        let ext = Extraction::new(&e, e.l(), e.a(), &sec, &w).map_err(|x| x.to_string())?;
        let rep = check_color_reduction(&ext, super_eps, &w);
        passes(&rep)?;
        checked += rep.checked;
        let e = BuiltExtension::assemble(fixtures::trivial(color_z2z2::<Rational>()));
        let w = keys(e.l());
        let sec = e.canonical_section();
        let ext = Extraction::new(&e, e.l(), e.a(), &sec, &w).map_err(|x| x.to_string())?;
        let rep = check_color_reduction(&ext, z2z2_eps, &w);
        passes(&rep)?;
        checked += rep.checked;
        Ok(format!("{checked} term and sum comparisons"))
    });
}

/// Whether S1 and S2 hold for `xi` between `d` and `d2`, computed straight from the data.
fn strong_predicted<F: Field, L: QhlAlgebra<F>>(
    d: &ExtensionData<F, L, TableAlgebra<F>>,
    d2: &ExtensionData<F, L, TableAlgebra<F>>,
    xi: &Linear<F, L::Key, String>,
    w: &[L::Key],
) -> bool {
    w.iter().all(|x| {
        let xv = xi(x);
        let s1a = d.a().alpha_vec(&xv) == apply_linear(xi, &d.l().alpha(x));
        let s1b = d.a().beta_vec(&xv) == apply_linear(xi, &d.l().beta(x));
        let k = ExtKey::L(x.clone());
        s1a && s1b && d.f(&k) == d2.f(&k) && d.h(&k) == d2.h(&k)
    })
}

fn equivalence_case<F: Field, L: QhlAlgebra<F> + 'static>(
    d: &ExtensionData<F, L, TableAlgebra<F>>,
    d2: ExtensionData<F, L, TableAlgebra<F>>,
    xi: Linear<F, L::Key, String>,
    w: &[L::Key],
    tally: &mut (usize, usize),
) -> Result<(), String> {
    let e = BuiltExtension::assemble(d.clone());
    let predicted = strong_predicted(d, &d2, &xi, w);
    let e2 = BuiltExtension::assemble(d2);
    let weak = check_equivalence(&e, &e2, xi.clone(), MorphismMode::Weak, w).map_err(|x| x.to_string())?;
    passes(&weak)?;
    let strong = check_equivalence(&e, &e2, xi, MorphismMode::Strong, w).map_err(|x| x.to_string())?;
    ensure(strong.passed() == predicted, || format!("strong verdict {} but S1/S2 predict {predicted}: {strong}", strong.passed()))?;
    if predicted {
        tally.0 += 1;
    } else {
        tally.1 += 1;
    }
    Ok(())
}

#[test]
fn criterion_09_equivalence() {
    criterion(9, "equivalence for xi over a basis of Hom(L, a)", 60, || {
        let mut tally = (0, 0);
        for name in ["heisenberg", "sl2-coboundary", "heisenberg-shifted-f"] {
            let d = fixtures::by_name::<Rational>(name).unwrap();
            let w = keys(d.l());
            for key in &w {
                let xi = dual::<Rational, String>(key.clone());
                equivalence_case(&d, d.transformed(xi.clone()), xi.clone(), &w, &mut tally)?;
                equivalence_case(&d, d.transported(xi.clone()), xi, &w, &mut tally)?;
            }
        }
        // degree-zero part of Hom(L, a) for the super fixture
        let d = fixtures::osp12_coboundary::<Rational>();
        let w = keys(d.l());
        for key in ["E", "F", "H"] {
            let xi = dual::<Rational, String>(key.to_string());
            equivalence_case(&d, d.transformed(xi.clone()), xi, &w, &mut tally)?;
        }
        // changing f alone: weakly but not strongly equivalent
        let zero: Linear<Rational, String, String> = std::sync::Arc::new(|_| Vector::zero());
        let plain = fixtures::heisenberg::<Rational>();
        equivalence_case(&plain, fixtures::heisenberg_shifted_f(), zero, &keys(plain.l()), &mut tally)?;
        let d = fixtures::q_witt_trivial(fq("q"));
        let w = window(-2, 2);
        for n in -2..=2 {
            let xi = dual::<Fq, i64>(n);
            equivalence_case(&d, d.transformed(xi.clone()), xi.clone(), &w, &mut tally)?;
            equivalence_case(&d, d.transported(xi.clone()), xi, &w, &mut tally)?;
        }
        ensure(tally.0 > 0 && tally.1 > 0, || format!("need positive and negative strong cases, got {tally:?}"))?;
        Ok(format!("{} strongly equivalent and {} weakly only, all as predicted", tally.0, tally.1))
    });
}

#[test]
fn criterion_10_loop_algebras() {
    criterion(10, "loop algebras over sl2 and osp(1|2), degrees [-3,3]", 60, || {
        let mut checked = 0;
        for g in [sl2::<Rational>(), osp12()] {
            let w = loop_window(&keys(&g), &window(-3, 3));
            let rep = check_qhl_axioms(&build_loop(g.clone()), &w);
            passes(&rep)?;
            checked += rep.checked;
        }
        Ok(format!("{checked} identities"))
    });
}

// [h,e] = 2e, [h,f] = -2f, [e,f] = h on the ordered basis (e, f, h)
fn sl2_ad(x: usize) -> [[i64; 3]; 3] {
    let mut m = [[0; 3]; 3];
    match x {
        0 => {
            m[2][1] = 1;
            m[0][2] = -2;
        }
        1 => {
            m[2][0] = -1;
            m[1][2] = 2;
        }
        _ => {
            m[0][0] = 2;
            m[1][1] = -2;
        }
    }
    m
}

#[test]
fn criterion_11_classical_recovery() {
    criterion(11, "Kac-Moody recovery at q = 1 and residual report for formal q", 60, || {
        let g = sl2::<Fq>();
        let b = killing_form(&g).map_err(|e| e.to_string())?;
        let names = ["e", "f", "h"];
        for i in 0..3 {
            for j in 0..3 {
                let (a, c) = (sl2_ad(i), sl2_ad(j));
                let tr: i64 = (0..3).map(|x| (0..3).map(|y| a[x][y] * c[y][x]).sum::<i64>()).sum();
                let got = b.get(&names[i].to_string(), &names[j].to_string());
                ensure(got == Fq::from_int(tr), || format!("B({}, {}) = {got}, trace gives {tr}", names[i], names[j]))?;
            }
        }
        ensure(b.get(&"e".into(), &"f".into()) == Fq::from_int(4) && b.get(&"h".into(), &"h".into()) == Fq::from_int(8), || {
            "B(e,f) = 4 and B(h,h) = 8 expected".into()
        })?;
        let classical = LoopCocycle::new(b.clone(), Fq::one(), 0, Fq::one());
        let rep = check_loop_cocycle(&g, &classical, &keys(&g), &window(-3, 3));
        passes(&rep)?;
        let formal = LoopCocycle::new(b, Fq::one(), 0, fq("q"));
        let rep_q = check_loop_cocycle(&g, &formal, &keys(&g), &window(-3, 3));
        ensure(!rep_q.failures.is_empty(), || "formal q produced no nonzero residual".into())?;
        ensure(rep_q.failures.iter().all(|f| {
            let d: i64 = f.indices[3..].iter().map(|s| s.parse::<i64>().unwrap()).sum();
            d == 0
        }), || "a residual off n+m+l = 0".into())?;
        Ok(format!(
            "{} classical residuals vanish; formal q reports {} nonzero residuals",
            rep.checked,
            rep_q.failures.len()
        ))
    });
}

fn shift_verdicts<F: Field, L: QhlAlgebra<F>>(
    name: &str,
    e: &BuiltExtension<F, L, TableAlgebra<F>>,
    w: &[L::Key],
    admissible: impl Fn(&L::Key) -> bool + Copy,
) -> Result<(), String> {
    let cyclic_ok = |sec: &Section<F, L::Key, String, ExtKey<L::Key, String>>| -> Result<bool, String> {
        let rep = check_necessary_conditions(e, e.l(), e.a(), sec, w).map_err(|x| x.to_string())?;
        let clean = rep.failures_for("cyclic").next().is_none();
        Ok(clean)
    };
    let base = cyclic_ok(&e.canonical_section())?;
    for seed in 0..10 {
        let k = random_shift::<F, _, _>(w, &["c".to_string()], seed, admissible);
        let v = cyclic_ok(&Section::shifted(k))?;
        ensure(v == base, || format!("{name}: shift {seed} changes the cyclic verdict from {base} to {v}"))?;
    }
    Ok(())
}

#[test]
fn criterion_12_section_independence() {
    criterion(12, "cyclic-condition verdict unchanged under 10 random section shifts", 60, || {
        let mut count = 0;
        for (name, d) in table_fixtures() {
            let w = keys(d.l());
            let e = BuiltExtension::assemble(d);
            let l = e.l().clone();
            let even = move |x: &String| l.grade(x).map_or(true, |g| g.0.iter().all(|&c| c == 0));
            shift_verdicts(&name, &e, &w, &even)?;
            count += 1;
        }
        for (name, d) in witt_fixtures() {
            let e = BuiltExtension::assemble(d);
            shift_verdicts(&name, &e, &window(-2, 2), |_| true)?;
            count += 1;
        }
        Ok(format!("{count} fixtures x 10 shifts"))
    });
}
