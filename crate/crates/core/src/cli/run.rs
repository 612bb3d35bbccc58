use std::ffi::OsString;
use std::fmt::{self, Display};

use clap::Parser;
use num_complex::Complex64;
use serde_json::{json, Value};

use super::args::{Check, Cli, Command, FamilyArgs, FamilyKind, Format, Global, Mode, RepAction};
use super::parse::{parse_complex, parse_element, parse_expr, parse_scalar, Expr};
use crate::analysis::{
    canonical_params, classify_params, equivalent_params, find_intertwiner, spectrum_i, Canonical, ClassLabel,
};
use crate::error::{Error, Result};
use crate::freealg::{
    broken_iso2_system, casimir_from_definition, casimir_pbw, iso2_system, m2hat_system, Algebra, Element,
    Iso2Element, Iso2Gen, M2Gen, WordComb,
};
use crate::morphism::{build_psi, psi_apply};
use crate::repmod::{
    casimir_of, check_iso2_relations, check_m2_relations, decompose_degenerate, pi_rs_eval, pi_rs_matrix,
    r_rs_matrix, reconstruct_from_seed, Iso2Matrices, Params, RepParams, Signs, Window, WindowedOperator,
};
use crate::scalars::{Coeff, Scalar};

/// Exit status and rendered standard output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Whether an error stems from malformed input rather than a failed computation.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. } | Error::InvalidArgument(_) | Error::MixedAlgebra(_) | Error::AsymmetricWindow { .. }
    )
}

pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome {
            code: if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS },
            stdout: e.to_string(),
        },
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: if is_usage_error(&e) { EXIT_USAGE } else { EXIT_FAIL },
            stdout: format!("error: {e}\n"),
        },
    }
}

/// A named check with its verdict and supporting data.
#[derive(Clone, Debug)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    pub witness: Value,
}

impl Report {
    fn new(check: &str, pass: bool, witness: Value) -> Self {
        Self {
            check: check.into(),
            pass,
            witness,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "status": if self.pass { "pass" } else { "fail" },
            "witness": self.witness,
        })
    }
}

fn render_reports(reports: &[Report], format: Format) -> Outcome {
    let pass = reports.iter().all(|r| r.pass);
    let stdout = match format {
        Format::Json => {
            let v = if reports.len() == 1 {
                reports[0].to_json()
            } else {
                Value::Array(reports.iter().map(Report::to_json).collect())
            };
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => {
            let mut s = String::from("check,status\n");
            for r in reports {
                s += &format!("{},{}\n", r.check, if r.pass { "pass" } else { "fail" });
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s += &format!("{} {}: {}\n", if r.pass { "PASS" } else { "FAIL" }, r.check, r.witness);
            }
            s
        }
    };
    Outcome {
        code: if pass { EXIT_PASS } else { EXIT_FAIL },
        stdout,
    }
}

fn ok(stdout: String) -> Result<Outcome> {
    Ok(Outcome { code: EXIT_PASS, stdout })
}

fn emit(g: &Global, text: String, v: Value) -> Result<Outcome> {
    match g.format {
        Format::Json => ok(format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))),
        _ => ok(text),
    }
}

fn exact_params(g: &Global) -> Result<Params<Scalar>> {
    let s = parse_scalar(g.s.as_deref().unwrap_or("s"))?;
    let r = parse_scalar(g.r.as_deref().unwrap_or("r"))?;
    Ok(Params::exact(s, r))
}

fn numeric_params(g: &Global) -> Result<Params<Complex64>> {
    let q = parse_complex(&g.q, None)?;
    let s = parse_complex(g.s.as_deref().unwrap_or("0.8+0.3i"), Some(q))?;
    let r = parse_complex(g.r.as_deref().unwrap_or("2.1"), Some(q))?;
    Ok(Params::numeric(q, s, r).with_tol(g.tol))
}

/// Values that the generic commands print and parse.
trait Val: Canonical + Display {
    fn parse(src: &str, g: &Global) -> Result<Self>;
}

impl Val for Scalar {
    fn parse(src: &str, _g: &Global) -> Result<Self> {
        parse_scalar(src)
    }
}

impl Val for Complex64 {
    fn parse(src: &str, g: &Global) -> Result<Self> {
        parse_complex(src, Some(parse_complex(&g.q, None)?))
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Nf { expr } => cmd_nf(g, expr),
        Command::Confluence { m2, broken, k_max } => cmd_confluence(g, *m2, *broken, *k_max),
        Command::Psi { expr, twisted } => cmd_psi(g, expr.as_deref(), *twisted),
        Command::Verify { check } => cmd_verify(g, *check),
        Command::Rep { family, action } => match g.mode {
            Mode::Exact => cmd_rep(g, &exact_params(g)?, family, action),
            Mode::Numeric => cmd_rep(g, &numeric_params(g)?, family, action),
        },
        Command::Classify => match g.mode {
            Mode::Exact => cmd_classify(g, &exact_params(g)?),
            Mode::Numeric => cmd_classify(g, &numeric_params(g)?),
        },
        Command::Equiv { a, b } => match g.mode {
            Mode::Exact => cmd_equiv(g, &exact_params(g)?, a, b),
            Mode::Numeric => cmd_equiv(g, &numeric_params(g)?, a, b),
        },
        Command::Canon { p } => match g.mode {
            Mode::Exact => cmd_canon(g, &exact_params(g)?, p),
            Mode::Numeric => cmd_canon(g, &numeric_params(g)?, p),
        },
        Command::Intertwine { a, b } => cmd_intertwine(g, a, b),
    }
}

fn cmd_nf(g: &Global, expr: &str) -> Result<Outcome> {
    let x = parse_element(expr, g.algebra.map(Into::into))?;
    let s = format_element(&x);
    emit(g, format!("{s}\n"), json!({"input": expr, "algebra": x.algebra(), "nf": s}))
}

/// Text form of an element; parsing it back yields the same element.
pub fn format_element(x: &Element) -> String {
    x.to_string()
}

fn cmd_confluence(g: &Global, m2: bool, broken: bool, k_max: i32) -> Result<Outcome> {
    let (name, overlaps): (&str, Vec<String>) = if m2 {
        let sys = m2hat_system(k_max);
        ("m2hat", sys.check_confluence().iter().map(|o| o.to_string()).collect())
    } else {
        let sys = if broken { broken_iso2_system() } else { iso2_system() };
        let name = if broken { "iso2-broken" } else { "iso2" };
        (name, sys.check_confluence().iter().map(|o| o.to_string()).collect())
    };
    let r = Report::new(
        &format!("confluence {name}"),
        overlaps.is_empty(),
        json!({"failing_overlaps": overlaps}),
    );
    Ok(render_reports(&[r], g.format))
}

fn cmd_psi(g: &Global, expr: Option<&str>, twisted: bool) -> Result<Outcome> {
    let mut psi = build_psi()?;
    if twisted {
        psi = psi.twisted();
    }
    match expr {
        Some(src) => {
            let x = match parse_expr(src)? {
                Expr::M2(_) => return Err(Error::MixedAlgebra("psi takes an iso2 expression".into())),
                e => match e.normalize(Some(Algebra::Iso2))? {
                    Element::Iso2(x) => x,
                    Element::M2(_) => unreachable!("forced to iso2"),
                },
            };
            let y = psi_apply(&x, &psi);
            emit(g, format!("{y}\n"), json!({"input": src, "image": y.to_string()}))
        }
        None => {
            let rows: Vec<(String, String)> = [Iso2Gen::I, Iso2Gen::T1, Iso2Gen::T2]
                .iter()
                .map(|gen| (gen.to_string(), psi.image(*gen).to_string()))
                .collect();
            let text = rows.iter().map(|(a, b)| format!("psi({a}) = {b}\n")).collect::<String>()
                + &format!("binding: {}\n", psi.binding);
            let v = json!({
                "binding": psi.binding.to_string(),
                "images": rows.iter().map(|(a, b)| json!({"generator": a, "image": b})).collect::<Vec<_>>(),
            });
            emit(g, text, v)
        }
    }
}

fn cmd_verify(g: &Global, check: Check) -> Result<Outcome> {
    let p = exact_params(g)?;
    let w = g.window;
    let checks = match check {
        Check::All => vec![Check::Relations, Check::Psi, Check::Casimir, Check::Decompose, Check::Reconstruct],
        c => vec![c],
    };
    let mut reports = Vec::new();
    for c in checks {
        reports.push(match c {
            Check::Relations => verify_relations(&p, w)?,
            Check::Psi => verify_psi(&p, w)?,
            Check::Casimir => verify_casimir(&p, w)?,
            Check::Decompose => verify_decompose(&p)?,
            Check::Reconstruct => verify_reconstruct(&p)?,
            Check::All => unreachable!("expanded above"),
        });
    }
    Ok(render_reports(&reports, g.format))
}

fn verify_relations(p: &Params<Scalar>, w: Window) -> Result<Report> {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut note = |label: &str, holds: bool, what: &str| {
        checked += 1;
        if !holds {
            failures.push(format!("{label}: {what}"));
        }
    };
    for o in iso2_system().check_confluence() {
        note("iso2 overlap", false, &o.to_string());
    }
    for o in m2hat_system(2).check_confluence() {
        note("m2hat overlap", false, &o.to_string());
    }
    for r in check_iso2_relations(&Iso2Matrices::classical(p, w)?, p)? {
        note("R_rs", r.holds, &r.relation);
    }
    for (e, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let m = Iso2Matrices::nonclassical(p, Signs::new(e, e2)?, 5)?;
        for r in check_iso2_relations(&m, p)? {
            note(&format!("R^({e},{e2})"), r.holds, &r.relation);
        }
    }
    for r in check_m2_relations(p, w, 1)? {
        note("pi_rs", r.holds, &r.relation);
    }
    Ok(Report::new(
        "relations",
        failures.is_empty(),
        json!({"checked": checked, "window": w.to_string(), "failures": failures}),
    ))
}

fn verify_psi(p: &Params<Scalar>, w: Window) -> Result<Report> {
    let psi = build_psi()?;
    let rel: Vec<Value> = psi
        .verify()
        .iter()
        .map(|c| json!({"relation": c.relation, "holds": c.holds, "residual": c.residual}))
        .collect();
    let rel_ok = psi.verify().iter().all(|c| c.holds);
    let tw = psi.twisted();
    let mut factor_ok = true;
    for gen in [Iso2Gen::I, Iso2Gen::T1, Iso2Gen::T2] {
        let direct = r_rs_matrix(gen, p, w)?;
        let via = pi_rs_eval(tw.image(gen), p, w)?
            .ok_or_else(|| Error::Consistency("pi_rs o psi leaves the window".into()))?;
        factor_ok &= direct.restrict(via.domain()).is_some_and(|d| d.entries() == via.entries());
    }
    Ok(Report::new(
        "psi",
        rel_ok && factor_ok,
        json!({
            "binding": psi.binding.to_string(),
            "relations": rel,
            "r_rs_equals_pi_rs_theta_psi": factor_ok,
        }),
    ))
}

fn verify_casimir(p: &Params<Scalar>, w: Window) -> Result<Report> {
    let c = casimir_pbw();
    let def_ok = casimir_from_definition() == c;
    let central: Vec<bool> = [Iso2Element::i_gen(), Iso2Element::t1(), Iso2Element::t2()]
        .iter()
        .map(|x| Iso2Element::commutator(&c, x).is_zero())
        .collect();
    let rep = casimir_of(&Iso2Matrices::classical(p, w)?, p)?;
    let r2 = p.r.clone() * p.r.clone();
    let value_ok = rep.scalar.as_ref() == Some(&r2);
    Ok(Report::new(
        "casimir",
        def_ok && central.iter().all(|b| *b) && value_ok,
        json!({
            "pbw": c.to_string(),
            "definition_matches_pbw": def_ok,
            "commutes_with_I_T1_T2": central,
            "value_on_R_rs": rep.scalar.map(|x| x.to_string()),
        }),
    ))
}

fn verify_decompose(p: &Params<Scalar>) -> Result<Report> {
    let mut cases = Vec::new();
    let mut pass = true;
    for (m, eps) in [(0, 1), (0, -1), (1, 1), (-1, -1)] {
        let w = Window::new(-m - 4, 3 - m)?;
        let d = decompose_degenerate(p, m, eps, w)?;
        let good = d.is_block_diagonal() && d.matches_nonclassical();
        pass &= good;
        cases.push(json!({"m": m, "eps": eps, "window": w.to_string(), "s": d.s.to_string(), "ok": good}));
    }
    Ok(Report::new("decompose", pass, json!({"cases": cases})))
}

fn verify_reconstruct(p: &Params<Scalar>) -> Result<Report> {
    let c = p.r.clone() * p.r.clone();
    let rec = reconstruct_from_seed(p, c.clone(), 4)?;
    let steps: Vec<Value> = rec
        .realized
        .iter()
        .map(|s| json!({"name": s.name, "holds": s.holds(), "failures": s.failures}))
        .collect();
    let derived_ok = rec.realized.iter().filter(|s| !s.name.contains("printed")).all(|s| s.holds());
    let pass = derived_ok && rec.abstract_ok() && rec.matches();
    Ok(Report::new(
        "reconstruct",
        pass,
        json!({
            "casimir": c.to_string(),
            "steps": steps,
            "abstract_module_ok": rec.abstract_ok(),
            "matches_R_rs": rec.matches(),
            "rescaling": rec.rescaling.iter().map(|(j, x)| json!([j, x.to_string()])).collect::<Vec<_>>(),
        }),
    ))
}

fn family_params<T: Coeff>(p: &Params<T>, f: &FamilyArgs) -> Result<RepParams<T>> {
    Ok(match f.family {
        FamilyKind::Pi => RepParams::ClassicalM2 { r: p.r.clone(), s: p.s.clone() },
        FamilyKind::Classical => RepParams::ClassicalIso2 { r: p.r.clone(), s: p.s.clone() },
        FamilyKind::Nonclassical => RepParams::Nonclassical {
            r: p.r.clone(),
            signs: Signs::new(f.eps, f.eps2)?,
        },
    })
}

fn parse_generator(name: &str) -> Result<Expr> {
    match parse_expr(name)? {
        e @ (Expr::Iso2(_) | Expr::M2(_)) => Ok(e),
        Expr::Scalar(_) => Err(Error::InvalidArgument(format!("'{name}' is not a generator"))),
    }
}

fn single_letter<L: Clone + crate::freealg::Letter>(w: &WordComb<L>) -> Option<L> {
    let mut it = w.terms();
    let (word, c) = it.next()?;
    (it.next().is_none() && word.len() == 1 && num_traits::One::is_one(c)).then(|| word[0].clone())
}

fn cmd_rep<T: Val>(g: &Global, p: &Params<T>, f: &FamilyArgs, action: &RepAction) -> Result<Outcome> {
    let rep = family_params(p, f)?;
    let w = g.window;
    match action {
        RepAction::Matrix { gen } => {
            let op = match parse_generator(gen)? {
                Expr::Iso2(x) => {
                    let gen = single_letter(&x)
                        .ok_or_else(|| Error::InvalidArgument(format!("'{gen}' is not a single generator")))?;
                    if f.family == FamilyKind::Pi {
                        return Err(Error::MixedAlgebra("the pi family represents U^_q(m2)".into()));
                    }
                    rep.iso2_matrices(p, w)?.get(gen).clone()
                }
                Expr::M2(x) => {
                    let gen: M2Gen = single_letter(&x)
                        .ok_or_else(|| Error::InvalidArgument(format!("'{gen}' is not a single generator")))?;
                    if f.family != FamilyKind::Pi {
                        return Err(Error::MixedAlgebra("use --family pi for U^_q(m2) generators".into()));
                    }
                    pi_rs_matrix(gen, p, w)?
                }
                Expr::Scalar(_) => unreachable!("rejected by parse_generator"),
            };
            ok(render_matrix(gen, &op, g.format))
        }
        RepAction::Spectrum => {
            let sp = spectrum_i(&rep, p, w)?;
            let text = sp
                .eigenvalues
                .iter()
                .map(|(j, v)| format!("{j}: {v}\n"))
                .collect::<String>()
                + &format!("degenerate pairs: {:?}\n", sp.degenerate_pairs);
            let v = json!({
                "eigenvalues": sp.eigenvalues.iter().map(|(j, v)| json!([j, v.to_string()])).collect::<Vec<_>>(),
                "multiplicities": sp.multiplicities.iter().map(|(v, idx)| json!({"value": v.to_string(), "indices": idx})).collect::<Vec<_>>(),
                "degenerate_pairs": sp.degenerate_pairs,
            });
            emit(g, text, v)
        }
        RepAction::Casimir => {
            let c = casimir_of(&rep.iso2_matrices(p, w)?, p)?;
            let s = c.scalar.as_ref().map(|x| x.to_string());
            let text = match &s {
                Some(x) => format!("{x}\n"),
                None => "not a scalar on this window\n".into(),
            };
            let r = emit(g, text, json!({"scalar": s}))?;
            Ok(Outcome {
                code: if s.is_some() { EXIT_PASS } else { EXIT_FAIL },
                ..r
            })
        }
        RepAction::Decompose { m } => {
            let d = decompose_degenerate(p, *m, f.eps, w)?;
            let blocks: Vec<Value> = d
                .generators
                .iter()
                .map(|b| {
                    json!({
                        "generator": b.gen.to_string(),
                        "off_diagonal_zero": b.off_diagonal_zero,
                        "matches_nonclassical": b.matches_nonclassical,
                    })
                })
                .collect();
            let r = Report::new(
                "decompose",
                d.is_block_diagonal() && d.matches_nonclassical(),
                json!({"s": d.s.to_string(), "m": d.m, "eps": d.eps, "window": w.to_string(), "generators": blocks}),
            );
            Ok(render_reports(&[r], g.format))
        }
        RepAction::Reconstruct { steps, c } => {
            let c = match c {
                Some(src) => T::parse(src, g)?,
                None => p.r.clone() * p.r.clone(),
            };
            let rec = reconstruct_from_seed(p, c.clone(), *steps)?;
            let r = Report::new(
                "reconstruct",
                rec.abstract_ok(),
                json!({
                    "casimir": c.to_string(),
                    "steps": rec.realized.iter().map(|s| json!({"name": s.name, "holds": s.holds(), "failures": s.failures})).collect::<Vec<_>>(),
                    "abstract_module_ok": rec.abstract_ok(),
                    "abstract_casimir": rec.abstract_casimir.as_ref().map(|x| x.to_string()),
                    "matches_R_rs": rec.matches(),
                    "degeneracy": rec.degeneracy.as_ref().map(|d| json!({"half_exponent": d.half_exponent, "eps": d.eps, "hint": d.hint})),
                }),
            );
            Ok(render_reports(&[r], g.format))
        }
    }
}

/// Matrix of one generator as text, CSV (`row,col,value`) or JSON.
pub fn render_matrix<T: Coeff + Display>(name: &str, op: &WindowedOperator<T>, format: Format) -> String {
    let entries = op.entries();
    match format {
        Format::Json => {
            let v = json!({
                "generator": name,
                "domain": op.domain().to_string(),
                "codomain": op.codomain().to_string(),
                "entries": entries.iter().map(|(i, j, v)| json!({"row": i, "col": j, "value": v.to_string()})).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => {
            let mut s = String::from("row,col,value\n");
            for (i, j, v) in entries {
                s += &format!("{i},{j},\"{v}\"\n");
            }
            s
        }
        Format::Text => {
            let mut s = format!("{name} on {} -> {}\n", op.domain(), op.codomain());
            for (i, j, v) in entries {
                s += &format!("[{i},{j}] {v}\n");
            }
            s
        }
    }
}

fn cmd_classify<T: Val>(g: &Global, p: &Params<T>) -> Result<Outcome> {
    let label = classify_params(&p.r, &p.s, p)?;
    let sp = match label {
        ClassLabel::NotExtendable { .. } | ClassLabel::DegenerateReducible { .. } | ClassLabel::ClassicalIrreducible => {
            spectrum_i(&RepParams::ClassicalIso2 { r: p.r.clone(), s: p.s.clone() }, p, g.window).ok()
        }
        ClassLabel::OneDimensional => None,
    };
    let pairs = sp.map(|s| s.degenerate_pairs).unwrap_or_default();
    emit(
        g,
        format!("{label}\n"),
        json!({"s": p.s.to_string(), "r": p.r.to_string(), "label": label, "degenerate_pairs": pairs}),
    )
}

/// Representation given as `family:key=value,...`.
///
/// Families: `pi` (r, s), `classical` (r, s), `nonclassical` (r, eps, eps2),
/// `onedim` (c), `onedim-m2` (sigma). Missing `r`, `s` fall back to the
/// global flags.
pub fn parse_rep<T: Coeff>(src: &str, p: &Params<T>, value: impl Fn(&str) -> Result<T>) -> Result<RepParams<T>> {
    let (kind, rest) = src.split_once(':').unwrap_or((src, ""));
    let mut r = p.r.clone();
    let mut s = p.s.clone();
    let (mut eps, mut eps2) = (1i8, 1i8);
    let mut c = None;
    for kv in rest.split(',').filter(|x| !x.trim().is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got '{kv}'")))?;
        let sign = |v: &str| -> Result<i8> {
            match v.trim() {
                "1" | "+1" | "+" => Ok(1),
                "-1" | "-" => Ok(-1),
                x => Err(Error::InvalidArgument(format!("sign must be +1 or -1, got '{x}'"))),
            }
        };
        match k.trim() {
            "r" => r = value(v)?,
            "s" => s = value(v)?,
            "c" | "sigma" => c = Some(value(v)?),
            "eps" => eps = sign(v)?,
            "eps2" => eps2 = sign(v)?,
            other => return Err(Error::InvalidArgument(format!("unknown key '{other}'"))),
        }
    }
    let need_c = |c: Option<T>| c.ok_or_else(|| Error::InvalidArgument(format!("'{kind}' needs a value")));
    Ok(match kind.trim() {
        "pi" => RepParams::ClassicalM2 { r, s },
        "classical" | "R" => RepParams::ClassicalIso2 { r, s },
        "nonclassical" | "nc" => RepParams::Nonclassical { r, signs: Signs::new(eps, eps2)? },
        "onedim" => RepParams::OneDimIso2 { c: need_c(c)? },
        "onedim-m2" => RepParams::OneDimM2 { sigma: need_c(c)? },
        other => return Err(Error::InvalidArgument(format!("unknown family '{other}'"))),
    })
}

/// Inverse of [`parse_rep`].
pub fn format_rep<T: Coeff + Display>(p: &RepParams<T>) -> String {
    match p {
        RepParams::ClassicalM2 { r, s } => format!("pi:r={r},s={s}"),
        RepParams::ClassicalIso2 { r, s } => format!("classical:r={r},s={s}"),
        RepParams::Nonclassical { r, signs } => format!("nonclassical:r={r},eps={},eps2={}", signs.eps, signs.eps2),
        RepParams::OneDimIso2 { c } => format!("onedim:c={c}"),
        RepParams::OneDimM2 { sigma } => format!("onedim-m2:sigma={sigma}"),
    }
}

fn cmd_equiv<T: Val>(g: &Global, p: &Params<T>, a: &str, b: &str) -> Result<Outcome> {
    let pa = parse_rep(a, p, |v| T::parse(v, g))?;
    let pb = parse_rep(b, p, |v| T::parse(v, g))?;
    let eq = equivalent_params(&pa, &pb, p)?;
    emit(
        g,
        format!("{}\n", if eq { "equivalent" } else { "not equivalent" }),
        json!({"a": format_rep(&pa), "b": format_rep(&pb), "equivalent": eq}),
    )
}

fn cmd_canon<T: Val>(g: &Global, p: &Params<T>, src: &str) -> Result<Outcome> {
    let rp = parse_rep(src, p, |v| T::parse(v, g))?;
    let c = canonical_params(&rp, p)?;
    let s = format_rep(&c);
    emit(g, format!("{s}\n"), json!({"input": format_rep(&rp), "canonical": s}))
}

fn cmd_intertwine(g: &Global, a: &str, b: &str) -> Result<Outcome> {
    let p = numeric_params(g)?;
    let value = |v: &str| Complex64::parse(v, g);
    let pa = parse_rep(a, &p, value)?;
    let pb = parse_rep(b, &p, value)?;
    let x = find_intertwiner(&pa, &pb, &p, g.window, 1e-8)?;
    let found = x.found();
    let v = json!({
        "a": format_rep(&pa),
        "b": format_rep(&pb),
        "window": g.window.to_string(),
        "found": found,
        "residual": x.residual,
        "unknowns": x.unknowns,
        "constraints": x.constraints,
    });
    let text = format!(
        "{} (residual {:.3e}, {} unknowns, {} constraints)\n",
        if found { "intertwiner found" } else { "no intertwiner" },
        x.residual,
        x.unknowns,
        x.constraints
    );
    let out = emit(g, text, v)?;
    Ok(Outcome {
        code: if found { EXIT_PASS } else { EXIT_FAIL },
        ..out
    })
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.stdout)
    }
}
