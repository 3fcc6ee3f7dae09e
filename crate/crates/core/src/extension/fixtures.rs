//! Extension data used by tests, the acceptance suite and the command line.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::Value;

use super::{table_bilinear, table_linear, ExtensionData, ExtensionError, Linear};
use crate::algebra::fixtures::{abelian, by_name as algebra_by_name, osp12, q_witt_hom_lie, sl2};
use crate::algebra::{coeff_from_json, parse_pair, vec_of, BasisKey, QhlAlgebra, TableAlgebra, Vector, WittQhl};
use crate::exact::Field;
use crate::sigma::SigmaDerivation;

pub type TableExtension<F> = ExtensionData<F, TableAlgebra<F>, TableAlgebra<F>>;
pub type WittExtension<F> = ExtensionData<F, WittQhl<F, SigmaDerivation<F>>, TableAlgebra<F>>;

/// The one-dimensional abelian algebra on `c`.
pub fn central_line<F: Field>() -> TableAlgebra<F> {
    abelian("k", &["c"])
}

fn c<F: Field>(x: i64) -> Vector<String, F> {
    vec_of(&[("c", x)])
}

/// `xi(key) = c`, zero on every other key.
pub fn dual<F: Field, K: BasisKey>(key: K) -> Linear<F, K, String> {
    Arc::new(move |x| if *x == key { c(1) } else { Vector::zero() })
}

pub fn trivial<F: Field, L: QhlAlgebra<F>>(l: L) -> ExtensionData<F, L, TableAlgebra<F>> {
    ExtensionData::new(l, central_line())
}

fn plane<F: Field>() -> TableAlgebra<F> {
    abelian("plane", &["x", "y"])
}

/// `L = span{x, y}` abelian, `g(x, y) = c = -g(y, x)`.
pub fn heisenberg<F: Field>() -> TableExtension<F> {
    let mut g = BTreeMap::new();
    g.insert(("x".to_string(), "y".to_string()), c(1));
    g.insert(("y".to_string(), "x".to_string()), c(-1));
    trivial(plane()).with_cocycle(table_bilinear(g))
}

/// `g(x, y) = g(y, x) = c` while `omega = -1`.
pub fn symmetric_cocycle<F: Field>() -> TableExtension<F> {
    let mut g = BTreeMap::new();
    g.insert(("x".to_string(), "y".to_string()), c(1));
    g.insert(("y".to_string(), "x".to_string()), c(1));
    trivial(plane()).with_cocycle(table_bilinear(g))
}

/// Heisenberg data with `f(x, 0) = c`.
pub fn heisenberg_shifted_f<F: Field>() -> TableExtension<F> {
    heisenberg().with_f(dual("x".to_string()))
}

/// `g = -xi <.,.>` on `sl2`.
pub fn sl2_coboundary<F: Field>(xi: Linear<F, String, String>) -> TableExtension<F> {
    trivial(sl2()).transformed(xi)
}

/// `g = -xi <.,.>` on `osp(1|2)` with `xi(H) = c`, homogeneous of degree zero.
pub fn osp12_coboundary<F: Field>() -> TableExtension<F> {
    trivial(osp12()).transformed(dual("H".to_string()))
}

pub fn q_witt_trivial<F: Field>(q: F) -> WittExtension<F> {
    trivial(q_witt_hom_lie(q))
}

/// The trivial extension carried along `xi(d_n) = c`: `g = -xi <.,.>` and
/// `f(d_m) = xi(d_m) - xi(alpha d_m)`.
pub fn q_witt_coboundary<F: Field>(q: F, n: i64) -> WittExtension<F> {
    q_witt_trivial(q).transported(dual(n))
}

/// Built-in table extensions by name.
pub fn by_name<F: Field>(name: &str) -> Option<TableExtension<F>> {
    match name {
        "trivial" | "trivial-sl2" => Some(trivial(sl2())),
        "heisenberg" => Some(heisenberg()),
        "symmetric" => Some(symmetric_cocycle()),
        "heisenberg-shifted-f" => Some(heisenberg_shifted_f()),
        "sl2-coboundary" => Some(sl2_coboundary(dual("h".to_string()))),
        "osp12-coboundary" => Some(osp12_coboundary()),
        _ => None,
    }
}

pub const NAMES: &[&str] =
    &["trivial", "heisenberg", "symmetric", "heisenberg-shifted-f", "sl2-coboundary", "osp12-coboundary"];

fn bad(m: impl Into<String>) -> ExtensionError {
    ExtensionError::Descriptor(m.into())
}

fn algebra_from<F: Field>(v: Option<&Value>, default: TableAlgebra<F>) -> Result<TableAlgebra<F>, ExtensionError> {
    match v {
        None => Ok(default),
        Some(Value::String(s)) => algebra_by_name(s).ok_or_else(|| bad(format!("unknown algebra {s}"))),
        Some(doc) => Ok(TableAlgebra::from_json(doc)?),
    }
}

fn a_vector<F: Field>(v: &Value, a: &TableAlgebra<F>) -> Result<Vector<String, F>, ExtensionError> {
    let obj = v.as_object().ok_or_else(|| bad(format!("expected a coefficient map, got {v}")))?;
    let mut out = Vector::zero();
    for (k, c) in obj {
        if !a.keys().contains(k) {
            return Err(bad(format!("unknown element {k} of a")));
        }
        out.add_term(k.clone(), coeff_from_json(c)?);
    }
    Ok(out)
}

/// Reads a map from basis names of `domain` into `a`.
pub fn linear_from_json<F: Field>(
    v: Option<&Value>,
    domain: &[String],
    a: &TableAlgebra<F>,
) -> Result<BTreeMap<String, Vector<String, F>>, ExtensionError> {
    let mut out = BTreeMap::new();
    let Some(v) = v else { return Ok(out) };
    let obj = v.as_object().ok_or_else(|| bad("linear map must be an object"))?;
    for (k, val) in obj {
        if !domain.contains(k) {
            return Err(bad(format!("unknown basis element {k}")));
        }
        out.insert(k.clone(), a_vector(val, a)?);
    }
    Ok(out)
}

/// `{"L": name | descriptor, "a": descriptor (default: the line on c), "g": {"(x,y)": {..}},
/// "f": {..}, "h": {..}}`. Entries of `f` and `h` keyed by elements of `a` replace
/// `alpha_a` and `beta_a`. A missing `g(y, x)` is completed as `omega_L(y, x) g(x, y)`.
pub fn from_json<F: Field>(v: &Value) -> Result<TableExtension<F>, ExtensionError> {
    let l = algebra_from(v.get("L"), plane())?;
    let a = algebra_from(v.get("a"), central_line())?;
    let mut given = BTreeMap::new();
    if let Some(gv) = v.get("g") {
        let obj = gv.as_object().ok_or_else(|| bad("g must be an object"))?;
        for (pair, val) in obj {
            let (x, y) = parse_pair(pair)?;
            if !l.keys().contains(&x) || !l.keys().contains(&y) {
                return Err(bad(format!("unknown basis element in {pair}")));
            }
            given.insert((x, y), a_vector(val, &a)?);
        }
    }
    let mut g = given.clone();
    for ((x, y), val) in &given {
        if !given.contains_key(&(y.clone(), x.clone())) {
            let w = l.omega(y, x).ok_or_else(|| bad(format!("cannot complete g({y},{x}): omega undefined")))?;
            g.insert((y.clone(), x.clone()), val.scale(&w));
        }
    }
    let split = |name: &str| -> Result<_, ExtensionError> {
        let mut all = l.keys().to_vec();
        all.extend(a.keys().iter().cloned());
        let map = linear_from_json(v.get(name), &all, &a)?;
        let (on_l, on_a): (BTreeMap<_, _>, BTreeMap<_, _>) = map.into_iter().partition(|(k, _)| l.keys().contains(k));
        Ok((on_l, on_a))
    };
    let (f_l, f_a) = split("f")?;
    let (h_l, h_a) = split("h")?;
    if l.keys().iter().any(|k| a.keys().contains(k)) {
        return Err(bad("basis names of L and a collide"));
    }
    let mut d = ExtensionData::new(l, a).with_cocycle(table_bilinear(g)).with_f(table_linear(f_l)).with_h(table_linear(h_l));
    if !f_a.is_empty() {
        let a2 = d.a_arc();
        d = d.with_f_on_a(Arc::new(move |b| f_a.get(b).cloned().unwrap_or_else(|| a2.alpha(b))));
    }
    if !h_a.is_empty() {
        let a2 = d.a_arc();
        d = d.with_h_on_a(Arc::new(move |b| h_a.get(b).cloned().unwrap_or_else(|| a2.beta(b))));
    }
    Ok(d)
}
