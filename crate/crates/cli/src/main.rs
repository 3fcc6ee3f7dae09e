//! `qhl`: tables, verification suites, central extensions and loop algebras from the
//! command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.

mod emit;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qhl::algebra::fixtures as algebras;
use qhl::algebra::{check_qhl_axioms, random_mutation, MorphismMode, QhlAlgebra, TableAlgebra, WittQhl};
use qhl::exact::{parse_field, ExpVec, Field, Fq, Fq1q2, Rational};
use qhl::extension::fixtures::{self as extensions, TableExtension};
use qhl::extension::{check_data_abc, check_equivalence, table_linear, BuiltExtension, ExtensionData};
use qhl::loops::{
    build_central_loop, build_loop, check_central_loop, check_loop_cocycle, killing_form, loop_window,
    BilinearForm, LoopCocycle,
};
use qhl::report::Report;
use qhl::sigma::{window_box, MultiSigmaDerivation, MultiSigmaEndo};
use qhl::witt::{specialize_table, verify_theorem3, verify_theorem4, verify_theorem5, SingleWitt, WittAlgebra};

use emit::{Emit, Format};

#[derive(Parser)]
#[command(name = "qhl", version, about = "Exact verification of quasi-hom-Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure constants <d_n, d_m> of the deformed Witt algebra.
    Table(TableArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Build a central extension from extension data.
    Extend(ExtendArgs),
    /// Build the central extension of a deformed loop algebra and report its cocycle.
    Loop(LoopArgs),
}

#[derive(Args, Clone)]
struct Deform {
    /// `formal`, a rational value such as `2/3`, or an expression in `q`.
    #[arg(long, default_value = "formal", allow_hyphen_values = true)]
    q: String,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    s: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    eta: String,
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add the elapsed time to the output.
    #[arg(long)]
    timing: bool,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    deform: Deform,
    /// Inclusive index window `lo..hi`.
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
    window: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Thm3,
    Thm4,
    Thm5,
    QhlAxioms,
    Extension,
    Loop,
    LoopCocycle,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[command(flatten)]
    deform: Deform,
    /// Inclusive window `lo..hi`: generator indices, or loop degrees.
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
    window: String,
    /// Window for identities in three variables (defaults to --window).
    #[arg(long, allow_hyphen_values = true)]
    triple_window: Option<String>,
    /// Plant this many random faults before checking.
    #[arg(long, default_value_t = 0)]
    mutate: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixture name (sl2, osp12, color-z2z2, plane, q-witt), a descriptor file or inline JSON.
    #[arg(long, default_value = "sl2")]
    base: String,
    /// Generator window of a q-witt base.
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    base_window: String,
    /// `killing`, a form file or inline JSON `{"(x,y)": c}`.
    #[arg(long = "B", default_value = "killing")]
    form: String,
    /// Extension fixture, or q-witt-trivial / q-witt-coboundary.
    #[arg(long, default_value = "heisenberg")]
    fixture: String,
    /// Extension descriptor file (overrides --fixture).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Comma-separated scales q_1, ..., q_n for thm5.
    #[arg(long, default_value = "q1,q2", allow_hyphen_values = true)]
    qs: String,
    /// Exponent matrix for thm5, rows separated by `;` (default: identity).
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    /// Shift vector G for thm5 (default: zero).
    #[arg(long, allow_hyphen_values = true)]
    shift: Option<String>,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Weak,
    Strong,
}

#[derive(Args)]
struct ExtendArgs {
    #[arg(long, default_value = "heisenberg")]
    fixture: String,
    /// Extension descriptor file (overrides --fixture).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Name recorded in the output descriptor.
    #[arg(long, default_value = "E")]
    name: String,
    /// A map xi: L -> a (file or inline JSON); the output then includes the equivalence check.
    #[arg(long)]
    xi: Option<String>,
    /// Also conjugate f and h by xi instead of changing g only.
    #[arg(long)]
    transport: bool,
    #[arg(long, value_enum, default_value_t = Mode::Weak)]
    mode: Mode,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct LoopArgs {
    #[arg(long, default_value = "sl2")]
    base: String,
    #[arg(long = "B", default_value = "killing")]
    form: String,
    #[command(flatten)]
    deform: Deform,
    /// Inclusive degree window `lo..hi`.
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
    window: String,
    #[command(flatten)]
    out: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("QHL_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().with_context(|| format!("QHL_THREADS={v}"))?;
    if n == 0 {
        bail!("QHL_THREADS must be at least 1");
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let start = Instant::now();
    let (emit, out) = match cli.command {
        Command::Table(a) => (cmd_table(&a)?, a.out),
        Command::Verify(a) => (cmd_verify(&a)?, a.out),
        Command::Extend(a) => match cmd_extend(&a)? {
            Ok(e) => (e, a.out),
            Err((e, msg)) => {
                write_out(&e, &a.out, start)?;
                eprintln!("{msg}");
                return Ok(false);
            }
        },
        Command::Loop(a) => (cmd_loop(&a)?, a.out),
    };
    write_out(&emit, &out, start)?;
    Ok(emit.passed)
}

fn write_out(emit: &Emit, out: &Output, start: Instant) -> Result<()> {
    let elapsed = out.timing.then(|| start.elapsed().as_millis());
    let text = emit.render(out.format, elapsed)?;
    if out.format == Format::Csv {
        if let Some(ms) = elapsed {
            eprintln!("elapsed: {ms} ms");
        }
    }
    match &out.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_window(s: &str) -> Result<Vec<i64>> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let lo: i64 = lo.parse().with_context(|| format!("bad window {s}"))?;
    let hi: i64 = hi.parse().with_context(|| format!("bad window {s}"))?;
    if lo > hi {
        bail!("empty window {s}");
    }
    Ok((lo..=hi).collect())
}

fn bounds(w: &[i64]) -> (i64, i64) {
    (w[0], w[w.len() - 1])
}

enum QMode {
    Formal(Fq),
    Value(Rational),
}

fn q_mode(s: &str) -> Result<QMode> {
    if s == "formal" {
        return Ok(QMode::Formal(Fq::variable("q").expect("q is the variable of Fq")));
    }
    if let Ok(r) = parse_field::<Rational>(s) {
        return Ok(QMode::Value(r));
    }
    parse_field::<Fq>(s)
        .map(QMode::Formal)
        .map_err(|e| anyhow!("--q must be `formal`, a rational value or an expression in q: {e}"))
}

fn scalar<F: Field>(s: &str, what: &str) -> Result<F> {
    parse_field::<F>(s).map_err(|e| anyhow!("bad {what} `{s}`: {e}"))
}

fn read_json(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing JSON from {arg}"))
}

fn cmd_table(a: &TableArgs) -> Result<Emit> {
    let d = &a.deform;
    if d.s < 1 {
        bail!("unsupported s: {} (the table needs s >= 1)", d.s);
    }
    let window = parse_window(&a.window)?;
    let q = Fq::variable("q").expect("q is the variable of Fq");
    let eta: Fq = scalar(&d.eta, "eta")?;
    let w = SingleWitt::from_params(q, d.s, d.k, eta)?;
    let formal = w.structure_constants(&window);
    let rows: Vec<(i64, i64, String)> = match q_mode(&d.q)? {
        QMode::Formal(e) if e == Fq::variable("q").unwrap() => {
            formal.iter().map(|c| (c.n, c.m, c.value.to_string())).collect()
        }
        QMode::Formal(_) => bail!("the table takes --q formal or a rational value"),
        QMode::Value(v) => specialize_table(&formal, &v)
            .with_context(|| format!("specializing at q = {v}"))?
            .iter()
            .map(|c| (c.n, c.m, c.value.to_string()))
            .collect(),
    };
    let (lo, hi) = bounds(&window);
    let params = json!({"q": d.q, "s": d.s, "k": d.k, "eta": d.eta});
    let json_rows: Vec<Value> = rows.iter().map(|(n, m, b)| json!({"n": n, "m": m, "bracket": b})).collect();
    let pretty: Vec<String> = rows.iter().map(|(n, m, b)| format!("<d_{n}, d_{m}> = {b}")).collect();
    Ok(Emit {
        json: json!({"table": "structure-constants", "params": params, "window": {"lo": lo, "hi": hi}, "rows": json_rows}),
        pretty: pretty.join("\n"),
        header: vec!["n".into(), "m".into(), "bracket".into()],
        rows: rows.into_iter().map(|(n, m, b)| vec![n.to_string(), m.to_string(), b]).collect(),
        passed: true,
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Emit> {
    let report = match a.suite {
        Suite::Thm5 => verify_thm5(a)?,
        _ => match q_mode(&a.deform.q)? {
            QMode::Formal(q) => verify_with::<Fq>(a, q)?,
            QMode::Value(q) => verify_with::<Rational>(a, q)?,
        },
    };
    Ok(Emit::report(&report))
}

fn verify_with<F: Field>(a: &VerifyArgs, q: F) -> Result<Report> {
    let pair_window = parse_window(&a.window)?;
    let triple_window = match &a.triple_window {
        Some(t) => parse_window(t)?,
        None => pair_window.clone(),
    };
    let d = &a.deform;
    let eta: F = scalar(&d.eta, "eta")?;
    match a.suite {
        Suite::Thm3 => {
            if d.s != 1 {
                bail!("unsupported s: {} (thm3 needs s = 1)", d.s);
            }
            let (w, notes) = mutate_witt(SingleWitt::from_params(q, 1, d.k, eta)?, &pair_window, a)?;
            let mut r = verify_theorem3(&w, &pair_window, &triple_window)?;
            r.notes.extend(notes);
            Ok(r)
        }
        Suite::Thm4 => {
            if d.s < 1 {
                bail!("unsupported s: {} (thm4 needs s >= 1)", d.s);
            }
            let (w, notes) = mutate_witt(SingleWitt::from_params(q, d.s, d.k, eta)?, &pair_window, a)?;
            let mut r = verify_theorem4(&w, &pair_window, &triple_window)?;
            r.notes.extend(notes);
            Ok(r)
        }
        Suite::QhlAxioms => match base_of::<F>(&a.base)? {
            Some(t) => {
                let (t, notes) = mutate_table(t, a);
                let mut r = check_qhl_axioms(&t, &t.keys().to_vec());
                r.params.insert("base".into(), a.base.clone());
                r.notes.extend(notes);
                Ok(r)
            }
            None => {
                let (w, notes) = mutate_witt(SingleWitt::from_params(q, d.s, d.k, eta)?, &pair_window, a)?;
                let mut r = check_qhl_axioms(&WittQhl::new(w), &pair_window);
                r.params.insert("base".into(), a.base.clone());
                r.notes.extend(notes);
                Ok(r)
            }
        },
        Suite::Loop => {
            let mut r = match base_of::<F>(&a.base)? {
                Some(t) => {
                    let (t, notes) = mutate_table(t, a);
                    let keys = t.keys().to_vec();
                    let mut r = check_qhl_axioms(&build_loop(t), &loop_window(&keys, &pair_window));
                    r.notes.extend(notes);
                    r
                }
                None => {
                    let base_window = parse_window(&a.base_window)?;
                    let (w, notes) = mutate_witt(SingleWitt::from_params(q, d.s, d.k, eta)?, &base_window, a)?;
                    let mut r =
                        check_qhl_axioms(&build_loop(WittQhl::new(w)), &loop_window(&base_window, &pair_window));
                    r.notes.extend(notes);
                    r
                }
            };
            r.suite = "loop".into();
            r.params.insert("base".into(), a.base.clone());
            Ok(r)
        }
        Suite::LoopCocycle => {
            if a.mutate > 0 {
                bail!("--mutate is not supported for loop-cocycle");
            }
            if d.s != 1 {
                bail!("unsupported s: {} (the loop cocycle needs s = 1)", d.s);
            }
            let base = base_of::<F>(&a.base)?.ok_or_else(|| anyhow!("loop-cocycle needs a finite base"))?;
            let form = form_of(&a.form, &base)?;
            let cocycle = LoopCocycle::new(form, eta, d.k, q);
            let mut r = check_loop_cocycle(&base, &cocycle, &base.keys().to_vec(), &pair_window);
            r.params.insert("base".into(), a.base.clone());
            r.params.insert("B".into(), a.form.clone());
            Ok(r)
        }
        Suite::Extension => {
            let mut r = match a.fixture.as_str() {
                "q-witt-trivial" | "q-witt-coboundary" if a.input.is_none() => {
                    if q.is_one() {
                        bail!("the q-Witt fixtures need q != 1");
                    }
                    let data = if a.fixture == "q-witt-trivial" {
                        extensions::q_witt_trivial(q)
                    } else {
                        extensions::q_witt_coboundary(q, 1)
                    };
                    verify_extension(data, &pair_window)
                }
                _ => {
                    let data = table_extension::<F>(&a.fixture, a.input.as_ref())?;
                    let keys = data.l().keys().to_vec();
                    verify_extension(data, &keys)
                }
            };
            let name = match &a.input {
                Some(p) => p.display().to_string(),
                None => a.fixture.clone(),
            };
            r.params.insert("fixture".into(), name);
            Ok(r)
        }
        Suite::Thm5 => unreachable!("handled by verify_thm5"),
    }
}

fn verify_extension<F: Field, L: QhlAlgebra<F>, A: QhlAlgebra<F>>(
    data: ExtensionData<F, L, A>,
    l_window: &[L::Key],
) -> Report {
    let abc = check_data_abc(&data, l_window);
    if !abc.passed() {
        let mut r = Report::new("extension");
        r.window = abc.window.clone();
        r.merge(abc);
        r.notes.push("data conditions fail; the extension was not built".into());
        return r;
    }
    let mut r = Report::new("extension");
    r.merge(abc);
    let e = BuiltExtension::assemble(data);
    let v = e.verify(l_window);
    r.window = v.window.clone();
    r.merge(v);
    r
}

fn table_extension<F: Field>(fixture: &str, input: Option<&PathBuf>) -> Result<TableExtension<F>> {
    if let Some(path) = input {
        let v = read_json(&path.display().to_string())?;
        return Ok(extensions::from_json(&v)?);
    }
    extensions::by_name(fixture)
        .ok_or_else(|| anyhow!("unknown extension fixture {fixture} (known: {})", extensions::NAMES.join(", ")))
}

/// `None` for the q-Witt base.
fn base_of<F: Field>(name: &str) -> Result<Option<TableAlgebra<F>>> {
    if name == "q-witt" {
        return Ok(None);
    }
    if let Some(t) = algebras::by_name(name) {
        return Ok(Some(t));
    }
    if name.trim_start().starts_with('{') || std::path::Path::new(name).exists() {
        return Ok(Some(TableAlgebra::from_json(&read_json(name)?)?));
    }
    bail!("unknown base {name} (use sl2, osp12, color-z2z2, plane, q-witt or a descriptor)")
}

fn form_of<F: Field>(arg: &str, base: &TableAlgebra<F>) -> Result<BilinearForm<F, String>> {
    if arg == "killing" {
        return Ok(killing_form(base)?);
    }
    Ok(BilinearForm::from_json(&read_json(arg)?)?)
}

fn mutate_table<F: Field>(mut alg: TableAlgebra<F>, a: &VerifyArgs) -> (TableAlgebra<F>, Vec<String>) {
    let window = alg.keys().to_vec();
    let mut notes = Vec::new();
    for i in 0..a.mutate {
        let m = random_mutation(alg.clone(), &window, a.seed + i);
        let (l, r) = {
            let (l, r, _, _) = m.planted();
            (l.clone(), r.clone())
        };
        notes.push(format!("planted {}", m.describe()));
        let v = m.bracket(&l, &r);
        alg.set_bracket(&l, &r, v);
    }
    (alg, notes)
}

fn mutate_witt<F: Field>(
    mut w: SingleWitt<F>,
    window: &[i64],
    a: &VerifyArgs,
) -> Result<(SingleWitt<F>, Vec<String>)> {
    let mut notes = Vec::new();
    for i in 0..a.mutate {
        let p = w.random_perturbation(window, a.seed + i);
        notes.push(format!("planted <d_{}, d_{}> += ({})*d_{}", p.left, p.right, p.amount, p.target));
        w = w.with_perturbation(p);
    }
    Ok((w, notes))
}

fn verify_thm5(a: &VerifyArgs) -> Result<Report> {
    let parts: Vec<&str> = a.qs.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        bail!("bad --qs {}", a.qs);
    }
    if let Ok(qs) = parts.iter().map(|p| parse_field::<Rational>(p)).collect::<Result<Vec<_>, _>>() {
        return thm5_with(a, qs);
    }
    if let Ok(qs) = parts.iter().map(|p| parse_field::<Fq>(p)).collect::<Result<Vec<_>, _>>() {
        return thm5_with(a, qs);
    }
    if let Ok(qs) = parts.iter().map(|p| parse_field::<Fq1q2>(p)).collect::<Result<Vec<_>, _>>() {
        return thm5_with(a, qs);
    }
    bail!("--qs must be rational values, expressions in q, or expressions in q1, q2")
}

fn int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad integer list {s}")))
        .collect()
}

fn thm5_with<F: Field>(a: &VerifyArgs, qs: Vec<F>) -> Result<Report> {
    let n = qs.len();
    let matrix: Vec<Vec<i64>> = match &a.matrix {
        Some(m) => m.split(';').map(int_list).collect::<Result<_>>()?,
        None => (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
    };
    let shift = match &a.shift {
        Some(g) => int_list(g)?,
        None => vec![0; n],
    };
    if shift.len() != n {
        bail!("--shift needs {n} entries");
    }
    let scale: F = scalar(&a.deform.eta, "eta")?;
    let sigma = MultiSigmaEndo::new(qs, matrix)?;
    let d = MultiSigmaDerivation::new(sigma, scale, ExpVec::new(shift))?;
    let pw = parse_window(&a.window)?;
    let tw = match &a.triple_window {
        Some(t) => parse_window(t)?,
        None => pw.clone(),
    };
    let (plo, phi) = bounds(&pw);
    let (tlo, thi) = bounds(&tw);
    if a.mutate > 0 {
        bail!("--mutate is not supported for thm5");
    }
    let w = WittAlgebra::new(d);
    Ok(verify_theorem5(&w, &window_box(n, plo, phi), &window_box(n, tlo, thi))?)
}

fn cmd_extend(a: &ExtendArgs) -> Result<std::result::Result<Emit, (Emit, String)>> {
    let data = table_extension::<Fq>(&a.fixture, a.input.as_ref())?;
    let l_window = data.l().keys().to_vec();
    let abc = check_data_abc(&data, &l_window);
    if let Some(f) = abc.failures.first() {
        let msg = format!("data condition failed: {} at ({})", f.condition, f.indices.join(", "));
        return Ok(Err((Emit::report(&abc), msg)));
    }
    let e = BuiltExtension::assemble(data.clone());
    let descriptor = e.to_descriptor(&a.name)?;
    let mut reports = vec![e.verify(&l_window)];
    let mut head = json!({"descriptor": descriptor});
    if let Some(xi_arg) = &a.xi {
        let v = read_json(xi_arg)?;
        let entries = extensions::linear_from_json(Some(&v), &l_window, data.a())?;
        let xi = table_linear(entries);
        let data2 = if a.transport { data.transported(xi.clone()) } else { data.transformed(xi.clone()) };
        let e2 = BuiltExtension::assemble(data2);
        let mode = match a.mode {
            Mode::Weak => MorphismMode::Weak,
            Mode::Strong => MorphismMode::Strong,
        };
        reports.push(check_equivalence(&e, &e2, xi, mode, &l_window)?);
        head["equivalent"] = e2.to_descriptor(&format!("{}'", a.name))?;
    }
    let pretty = serde_json::to_string_pretty(&head)?;
    Ok(Ok(Emit::with_reports(head, pretty, &reports)))
}

fn cmd_loop(a: &LoopArgs) -> Result<Emit> {
    match q_mode(&a.deform.q)? {
        QMode::Formal(q) => loop_with::<Fq>(a, q),
        QMode::Value(q) => loop_with::<Rational>(a, q),
    }
}

fn loop_with<F: Field>(a: &LoopArgs, q: F) -> Result<Emit> {
    let d = &a.deform;
    if d.s != 1 {
        bail!("unsupported s: {} (the loop cocycle needs s = 1)", d.s);
    }
    let degrees = parse_window(&a.window)?;
    let base = base_of::<F>(&a.base)?.ok_or_else(|| anyhow!("the loop command needs a finite base"))?;
    let form = form_of(&a.form, &base)?;
    let eta: F = scalar(&d.eta, "eta")?;
    let cocycle = LoopCocycle::new(form, eta, d.k, q);
    let keys = base.keys().to_vec();
    let window = loop_window(&keys, &degrees);
    let mut values = Vec::new();
    for u in &window {
        for v in &window {
            let c = cocycle.value(u, v);
            if !c.is_zero() {
                values.push(json!({"u": u.to_string(), "v": v.to_string(), "value": c.to_string()}));
            }
        }
    }
    let residual = check_loop_cocycle(&base, &cocycle, &keys, &degrees);
    let ext = build_central_loop(build_loop(base), cocycle.clone());
    let central = check_central_loop(&ext, &keys, &degrees);
    let (lo, hi) = bounds(&degrees);
    let head = json!({
        "base": a.base,
        "cocycle": cocycle.to_json(),
        "degrees": {"lo": lo, "hi": hi},
        "values": values,
    });
    let pretty_values: Vec<String> = values
        .iter()
        .map(|v| format!("g({}, {}) = {}", v["u"].as_str().unwrap(), v["v"].as_str().unwrap(), v["value"].as_str().unwrap()))
        .collect();
    Ok(Emit::with_reports(head, pretty_values.join("\n"), &[central, residual]))
}
