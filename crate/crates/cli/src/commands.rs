//! One handler per subcommand. Each returns a JSON body and an ASCII rendering.

use std::fmt::Write as _;

use hocaset::fusion::{check_fusion, default_window};
use hocaset::hoca::{evolve as evolve_rows, parse_rule, HocaError, HocaRule, InitialCondition};
use hocaset::mobility::{classify as classify_m, MobilityClass, MobilityError};
use hocaset::oracle::{
    min_torus_size, mobility_bruteforce, torus_code, verify_symmetry_slab, window_margin,
    OracleError,
};
use hocaset::pauli::{
    decompose_pq, stabilizers_from, synthesize_circuit, PauliError, PauliVector,
};
use hocaset::polyring::parse;
use hocaset::random::{random_initial, random_poly, random_rule, rng, RuleShape};
use hocaset::render::{render_ascii, render_ascii_with_legend};
use hocaset::worked::run_examples;
use hocaset::{Execution, LaurentPoly, PolyError};
use serde_json::{json, Value};

use crate::{ClassifyArgs, EvolveArgs, FuseArgs, GsdArgs, RuleArgs, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    /// Bad or missing input: exit 2.
    Usage { kind: &'static str, message: String },
    /// The engine rejected the input: exit 1.
    Domain { kind: &'static str, message: String },
}

impl CliError {
    fn usage(kind: &'static str, message: impl Into<String>) -> Self {
        CliError::Usage { kind, message: message.into() }
    }

    fn domain(kind: &'static str, message: impl ToString) -> Self {
        CliError::Domain { kind, message: message.to_string() }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage { kind, .. } | CliError::Domain { kind, .. } => kind,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage { message, .. } | CliError::Domain { message, .. } => message,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage { .. } => 2,
            CliError::Domain { .. } => 1,
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::domain("parse", e)
    }
}

impl From<HocaError> for CliError {
    fn from(e: HocaError) -> Self {
        match e {
            HocaError::Poly(p) => p.into(),
            e => CliError::domain("rule", e),
        }
    }
}

impl From<PauliError> for CliError {
    fn from(e: PauliError) -> Self {
        match e {
            PauliError::Hoca(h) => h.into(),
            e => CliError::domain("decomposition", e),
        }
    }
}

impl From<MobilityError> for CliError {
    fn from(e: MobilityError) -> Self {
        match e {
            MobilityError::Vacuum => vacuum(),
            e => CliError::domain("mobility", e),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Vacuum => vacuum(),
            OracleError::Hoca(h) => h.into(),
            OracleError::Pauli(p) => p.into(),
            OracleError::Poly(p) => p.into(),
            e => CliError::domain("oracle", e),
        }
    }
}

fn vacuum() -> CliError {
    CliError::usage("vacuum", "the pattern is zero (the vacuum); give a nonzero pattern")
}

pub struct Report {
    pub json: Value,
    pub ascii: String,
    /// False when a check ran but failed.
    pub ok: bool,
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    value
        .as_deref()
        .ok_or_else(|| CliError::usage("missing_argument", format!("--{flag} is required")))
}

fn rule_of(value: &Option<String>) -> Result<HocaRule, CliError> {
    Ok(parse_rule(required(value, "rule")?)?)
}

fn pattern_of(value: &Option<String>, flag: &str) -> Result<LaurentPoly, CliError> {
    let m = parse(required(value, flag)?)?;
    if m.is_zero() {
        return Err(vacuum());
    }
    Ok(m)
}

fn pauli_text(v: &PauliVector) -> String {
    let [x1, x2, x3] = &v.x;
    let [z1, z2, z3] = &v.z;
    format!("({x1}, {x2}, {x3} | {z1}, {z2}, {z3})")
}

fn class_json(class: &MobilityClass) -> Value {
    let mut v = serde_json::to_value(class).expect("serializable");
    v["label"] = class.label().into();
    v
}

pub fn classify(a: &ClassifyArgs) -> Result<Report, CliError> {
    let rule = rule_of(&a.rule)?;
    let m = pattern_of(&a.m, "m")?;
    let c = classify_m(&rule, &m)?;
    let g = c.g.as_ref().map(LaurentPoly::to_string);
    let moves: Vec<[i32; 2]> = c
        .polynomial
        .truncate(a.shift_bound.max(0))
        .into_iter()
        .map(|(i, j)| [i, j])
        .collect();
    let mut json = class_json(&c.class);
    json["rule"] = rule.poly().to_string().into();
    json["m"] = m.to_string().into();
    json["g"] = g.clone().into();
    json["mobility"] = serde_json::to_value(c.polynomial).expect("serializable");
    json["moves"] = json!(moves);
    let ascii = format!(
        "{}\nclass: {} ({})\ng = {}",
        render_ascii_with_legend(&m),
        c.class.label(),
        c.class,
        g.unwrap_or_default()
    );
    Ok(Report { json, ascii, ok: true })
}

pub fn fuse(a: &FuseArgs, exec: Execution) -> Result<Report, CliError> {
    let rule = rule_of(&a.rule)?;
    let m1 = pattern_of(&a.m1, "m1")?;
    let m2 = pattern_of(&a.m2, "m2")?;
    let window = a.window.unwrap_or_else(|| default_window(rule.poly(), &m1, &m2));
    if window < 0 {
        return Err(CliError::usage("bad_argument", "--window must be nonnegative"));
    }
    let report = check_fusion(&rule, &m1, &m2, window, exec)?;
    let mut ascii = format!(
        "{} x {} (window {window})\nallowed: {}\n",
        report.left.label(),
        report.right.label(),
        report.allowed
    );
    if report.observed.includes_vacuum() {
        let _ = writeln!(ascii, "  vacuum at {} placements", report.observed.vacuum.len());
    }
    for ch in &report.observed.channels {
        let _ = writeln!(ascii, "  {} at {} placements", ch.class.label(), ch.witnesses.len());
    }
    let _ = write!(ascii, "{}", if report.pass { "PASS" } else { "FAIL" });
    let ok = report.pass;
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["rule"] = rule.poly().to_string().into();
    json["m1"] = m1.to_string().into();
    json["m2"] = m2.to_string().into();
    Ok(Report { json, ascii, ok })
}

pub fn decompose(a: &RuleArgs) -> Result<Report, CliError> {
    let rule = rule_of(&a.rule)?;
    let d = decompose_pq(&rule)?;
    let recombined = d.recombine();
    let s = stabilizers_from(&rule, d.p, d.q);
    let named = [("A", &s.a), ("B", &s.b), ("C", &s.c), ("D", &s.d)];
    let json = json!({
        "rule": rule.poly().to_string(),
        "p": s.p.to_string(),
        "q": s.q.to_string(),
        "recombined": recombined.to_string(),
        "stabilizers": named
            .iter()
            .map(|(n, v)| (n.to_string(), serde_json::to_value(v).expect("serializable")))
            .collect::<serde_json::Map<_, _>>(),
    });
    let mut ascii = format!(
        "P = {}\n{}\nQ = {}\n{}\n",
        s.p,
        render_ascii(&s.p),
        s.q,
        render_ascii(&s.q)
    );
    for (n, v) in named {
        let _ = writeln!(ascii, "{n} = {}", pauli_text(v));
    }
    ascii.pop();
    Ok(Report { json, ascii, ok: true })
}

pub fn circuit(a: &RuleArgs) -> Result<Report, CliError> {
    let rule = rule_of(&a.rule)?;
    let d = decompose_pq(&rule)?;
    let c = synthesize_circuit(&d.p, &d.q);
    let json = json!({
        "rule": rule.poly().to_string(),
        "p": d.p.to_string(),
        "q": d.q.to_string(),
        "gate_count": c.len(),
        "gates": c.gates,
    });
    let mut ascii = format!("{} CZ gates per vertex\n", c.len());
    for g in &c.gates {
        let _ = writeln!(ascii, "  CZ(vertex, sublattice {} at ({}, {}))", g.target_sublattice, g.dx, g.dy);
    }
    ascii.pop();
    Ok(Report { json, ascii, ok: true })
}

pub fn evolve(a: &EvolveArgs) -> Result<Report, CliError> {
    let rule = rule_of(&a.rule)?;
    let w = InitialCondition::parse(required(&a.w, "w")?)?;
    let history = evolve_rows(&rule, &w, a.depth)?;
    let rows: Vec<String> = history.rows.iter().map(LaurentPoly::to_string).collect();
    let pattern = history.to_poly();
    let json = json!({
        "rule": rule.poly().to_string(),
        "depth": a.depth,
        "rows": rows,
        "pattern": pattern.to_string(),
    });
    Ok(Report { json, ascii: render_ascii_with_legend(&pattern), ok: true })
}

pub fn gsd(a: &GsdArgs) -> Result<Report, CliError> {
    let rule = rule_of(&a.rule)?;
    let l = a.l.unwrap_or_else(|| min_torus_size(&rule));
    let code = torus_code(&rule, l)?;
    let gsd = code.gsd()?;
    let json = json!({
        "L": code.l,
        "qubits": code.qubits,
        "rank": code.rank,
        "gsd": gsd,
    });
    let ascii = format!(
        "L = {}\nqubits = {}\nrank = {}\ngsd = {gsd} (2^{})",
        code.l, code.qubits, code.rank, code.gsd_log2
    );
    Ok(Report { json, ascii, ok: true })
}

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

/// Columns wide enough to hold every cell a depth-`depth` history can reach.
fn slab_width(rule: &HocaRule, w: &InitialCondition, depth: usize) -> i32 {
    let reach = w
        .rows()
        .iter()
        .filter_map(LaurentPoly::bounding_box)
        .map(|(x0, _, x1, _)| x0.abs().max(x1.abs()))
        .max()
        .unwrap_or(0);
    reach + rule.radius() as i32 * depth as i32 + 1
}

fn mobility_check(rule: &HocaRule, m: &LaurentPoly, s: i32) -> Result<Check, CliError> {
    let predicted = classify_m(rule, m)?;
    let expected = predicted.polynomial.truncate(s);
    let w = window_margin(rule.poly(), m, s);
    let observed = mobility_bruteforce(rule, m, s, w)?;
    Ok(Check {
        name: format!("mobility of {m} under {}", rule.poly()),
        pass: expected == observed,
        detail: format!("{} with {} moves in |i|,|j| <= {s}", predicted.class.label(), observed.len()),
    })
}

fn gsd_check(rule: &HocaRule) -> Result<Check, CliError> {
    let l = min_torus_size(rule);
    let code = torus_code(rule, l)?;
    Ok(Check {
        name: format!("gsd of {} at L = {l}", rule.poly()),
        pass: code.gsd_log2 == 2,
        detail: format!("2^{}", code.gsd_log2),
    })
}

fn symmetry_check(rule: &HocaRule, w: &InitialCondition, depth: usize) -> Result<Check, CliError> {
    let x = slab_width(rule, w, depth);
    let pass = verify_symmetry_slab(rule, w, depth, x)?;
    let rows: Vec<String> = w.rows().iter().map(LaurentPoly::to_string).collect();
    Ok(Check {
        name: format!("symmetry of [{}] under {}", rows.join(", "), rule.poly()),
        pass,
        detail: format!("slab [-{x}, {x}] x [0, {depth})"),
    })
}

pub fn verify(a: &VerifyArgs, exec: Execution) -> Result<Report, CliError> {
    let s = a.shift_bound.max(0);
    let mut checks = Vec::new();
    let mode = if a.rule.is_some() {
        let rule = rule_of(&a.rule)?;
        if rule.circuit_realizable() {
            checks.push(gsd_check(&rule)?);
        }
        if a.m.is_some() {
            checks.push(mobility_check(&rule, &pattern_of(&a.m, "m")?, s)?);
        }
        if let Some(w) = &a.w {
            checks.push(symmetry_check(&rule, &InitialCondition::parse(w)?, a.depth)?);
        }
        json!({ "rule": rule.poly().to_string() })
    } else {
        let cases: Vec<(HocaRule, LaurentPoly, Option<InitialCondition>)> = {
            let mut r = rng(a.seed);
            (0..a.count)
                .map(|k| {
                    let shape = RuleShape { even: true, update: k % 2 == 0, ..Default::default() };
                    let rule = random_rule(&mut r, shape);
                    let m = random_poly(&mut r, 4, 2);
                    let w = rule
                        .is_update_rule()
                        .then(|| random_initial(&mut r, rule.order(), 2));
                    (rule, m, w)
                })
                .collect()
        };
        let depth = a.depth;
        let results = exec.map(&cases, |(rule, m, w)| -> Result<Vec<Check>, CliError> {
            let mut out = vec![gsd_check(rule)?, mobility_check(rule, m, s)?];
            if let Some(w) = w {
                if depth >= rule.order() {
                    out.push(symmetry_check(rule, w, depth)?);
                }
            }
            Ok(out)
        });
        for r in results {
            checks.extend(r?);
        }
        json!({ "seed": a.seed, "count": a.count })
    };
    let ok = checks.iter().all(|c| c.pass);
    let mut json = mode;
    json["pass"] = ok.into();
    json["checks"] = checks
        .iter()
        .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
        .collect();
    let ascii = checks
        .iter()
        .map(|c| format!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report { json, ascii, ok })
}

pub fn paper_examples(exec: Execution) -> Result<Report, CliError> {
    let outcomes = run_examples(exec);
    let ok = outcomes.iter().all(|o| o.pass);
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    let json = json!({
        "pass": ok,
        "total": outcomes.len(),
        "failed": failed,
        "examples": outcomes,
    });
    let mut ascii: String = outcomes
        .iter()
        .map(|o| format!("{} {}: {}\n", if o.pass { "PASS" } else { "FAIL" }, o.name, o.observed))
        .collect();
    let _ = write!(ascii, "{} of {} passed", outcomes.len() - failed, outcomes.len());
    Ok(Report { json, ascii, ok })
}
