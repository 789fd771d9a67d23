//! Reference rules and the built-in suite of worked examples.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::exec::Execution;
use crate::fusion::{allowed_channels, check_fusion, fuse};
use crate::hoca::{evolution_operator, parse_rule, HocaRule, InitialCondition};
use crate::mobility::{characteristic_poly, classify, period, MobilityClass};
use crate::oracle::{gsd, mobility_bruteforce, string_operator_exists, verify_symmetry_slab};
use crate::pauli::{
    build_stabilizers, decompose_pq, excitation_map, plaquette, symplectic, synthesize_circuit,
    Decomposition,
};
use crate::polyring::{parse, LaurentPoly};
use crate::render::render_ascii;

/// Six-term rule whose single `m` excitation is a fracton.
pub const REFERENCE_RULE: &str = "1 + x^-1*y + y + x*y + y^2 + x^-1*y^2";
/// Rule carrying a `(1, 1)` lineon.
pub const DIAGONAL_RULE: &str = "1 + y + x*y^2 + x^2*y^2";
/// Rule carrying a period-2 lineon along `(-1, 1)`.
pub const PERIOD_TWO_RULE: &str = "1 + y + x*y + x^-2*y^2 + x^-2*y^3 + x^-1*y^3";
/// `(1 + x)(1 + y)`.
pub const SQUARE_RULE: &str = "1 + x + y + x*y";
/// The three-cell excitation that is a lineon for the first three rules.
pub const TRIANGLE: &str = "1 + y + x*y";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub observed: String,
}

type Outcome = Result<(bool, String), String>;

fn p(s: &str) -> Result<LaurentPoly, String> {
    parse(s).map_err(|e| e.to_string())
}

fn rule(s: &str) -> Result<HocaRule, String> {
    parse_rule(s).map_err(|e| e.to_string())
}

fn class_of(r: &str, m: &str) -> Result<MobilityClass, String> {
    Ok(classify(&rule(r)?, &p(m)?).map_err(|e| e.to_string())?.class)
}

fn expect_class(r: &str, m: &str, want: MobilityClass) -> Outcome {
    let got = class_of(r, m)?;
    Ok((got == want, got.to_string()))
}

fn same<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Outcome {
    Ok((got == want, format!("{got:?}")))
}

type Example = (&'static str, Box<dyn Fn() -> Outcome + Sync + Send>);

fn examples() -> Vec<Example> {
    vec![
        ("parse reference rule", Box::new(|| {
            let f = p(REFERENCE_RULE)?;
            let want = LaurentPoly::from_terms([(0, 0), (-1, 1), (0, 1), (1, 1), (0, 2), (-1, 2)]);
            same(f, want)
        })),
        ("sum of two fractons", Box::new(|| same(&p("x + y")? + &p("1 + x*y")?, p(SQUARE_RULE)?))),
        ("product (1+x)(1+y)", Box::new(|| same(&p("1 + x")? * &p("1 + y")?, p(SQUARE_RULE)?))),
        ("gcd with the triangle", Box::new(|| {
            same(p(REFERENCE_RULE)?.gcd(&p(TRIANGLE)?).map_err(|e| e.to_string())?, p(TRIANGLE)?)
        })),
        ("reference rule is two-dimensional", Box::new(|| {
            same(p(REFERENCE_RULE)?.newton().map_err(|e| e.to_string())?.dim, 2)
        })),
        ("1 + x^-1 y is a segment", Box::new(|| {
            let n = p("1 + x^-1*y")?.newton().map_err(|e| e.to_string())?;
            same((n.dim, n.vertices), (1, vec![(-1, 1), (0, 0)]))
        })),
        ("profile of 1 + x^-1 y", Box::new(|| {
            let pr = p("1 + x^-1*y")?.collinear_profile().map_err(|e| e.to_string())?;
            same((pr.direction.axis(), pr.coeffs), ([-1, 1], vec![true, true]))
        })),
        ("profile of 1 + x^-2 y^2", Box::new(|| {
            let pr = p("1 + x^-2*y^2")?.collinear_profile().map_err(|e| e.to_string())?;
            same((pr.direction.axis(), pr.coeffs), ([-1, 1], vec![true, false, true]))
        })),
        ("reference rule shape", Box::new(|| {
            let r = rule(REFERENCE_RULE)?;
            same((r.order(), r.radius(), r.circuit_realizable()), (2, 1, true))
        })),
        ("diagonal rule shape", Box::new(|| {
            let r = rule(DIAGONAL_RULE)?;
            same((r.order(), r.circuit_realizable()), (2, true))
        })),
        ("one-step evolution operator", Box::new(|| {
            let r = rule(REFERENCE_RULE)?;
            let e = evolution_operator(&r, 1).map_err(|e| e.to_string())?;
            same(e, vec![r.row(2), r.row(1)])
        })),
        ("two-step evolution operator", Box::new(|| {
            let r = rule(REFERENCE_RULE)?;
            let (f1, f2) = (r.row(1), r.row(2));
            let e = evolution_operator(&r, 2).map_err(|e| e.to_string())?;
            same(e, vec![&f1 * &f2, &f2 + &(&f1 * &f1)])
        })),
        ("three-step evolution operator", Box::new(|| {
            let r = rule("1 + x*y + y^2 + x^-1*y^3")?;
            let e = evolution_operator(&r, 3).map_err(|e| e.to_string())?;
            let (f1, f3) = (r.row(1), r.row(3));
            same(e[2].clone(), &f1.pow(3) + &f3)
        })),
        ("decomposition of the reference rule", Box::new(|| {
            let r = rule(REFERENCE_RULE)?;
            let d = decompose_pq(&r).map_err(|e| e.to_string())?;
            let quoted = Decomposition { p: p("y + x^-1*y + x^-1*y^2")?, q: p("1")? };
            let ok = d.recombine() == *r.poly()
                && d.p.gcd(&d.q).is_ok_and(|g| g.is_one())
                && quoted.recombine() == *r.poly();
            Ok((ok, format!("P = {}, Q = {}", d.p, d.q)))
        })),
        ("staircase for 1 + x^2 y", Box::new(|| {
            let d = decompose_pq(&rule("1 + x^2*y")?).map_err(|e| e.to_string())?;
            same((d.p, d.q), (p("1 + x")?, p("x^2")?))
        })),
        ("four-gate circuit", Box::new(|| {
            let c = synthesize_circuit(&p("y + x^-1*y + x^-1*y^2")?, &p("1")?);
            let q_gate = c.gates.iter().find(|g| g.target_sublattice == 3).map(|g| (g.dx, g.dy));
            Ok((c.len() == 4 && q_gate == Some((0, -1)), format!("{} gates", c.len())))
        })),
        ("plaquette is rule independent", Box::new(|| {
            let ok = [REFERENCE_RULE, DIAGONAL_RULE, SQUARE_RULE].iter().try_fold(true, |acc, r| {
                let s = build_stabilizers(&rule(r)?).map_err(|e| e.to_string())?;
                Ok::<_, String>(acc && s.b == plaquette())
            })?;
            Ok((ok, "B = (0,0,0 | 0, 1+y, 1+x)".into()))
        })),
        ("A and B commute", Box::new(|| {
            let s = build_stabilizers(&rule(REFERENCE_RULE)?).map_err(|e| e.to_string())?;
            let v = symplectic(&s.a, &s.b);
            Ok((v.is_zero(), v.to_string()))
        })),
        ("C and D commute", Box::new(|| {
            let s = build_stabilizers(&rule(REFERENCE_RULE)?).map_err(|e| e.to_string())?;
            let v = symplectic(&s.c, &s.d);
            Ok((v.is_zero(), v.to_string()))
        })),
        ("D excites the reversed rule", Box::new(|| {
            let r = rule(REFERENCE_RULE)?;
            let s = build_stabilizers(&r).map_err(|e| e.to_string())?;
            let ex = excitation_map(&s, &s.d);
            Ok((ex.m == r.poly().antipode() && ex.e.is_zero() && ex.c.is_zero(), ex.m.to_string()))
        })),
        ("characteristic polynomial of the triangle", Box::new(|| {
            same(characteristic_poly(&p(REFERENCE_RULE)?, &p(TRIANGLE)?).map_err(|e| e.to_string())?, p("x + y")?)
        })),
        ("g = 1 for m = f", Box::new(|| {
            let f = p(REFERENCE_RULE)?;
            same(characteristic_poly(&f, &f).map_err(|e| e.to_string())?, LaurentPoly::one())
        })),
        ("g = f for m = 1", Box::new(|| {
            let f = p(REFERENCE_RULE)?;
            same(characteristic_poly(&f, &p("1")?).map_err(|e| e.to_string())?, f.canonicalize().map_err(|e| e.to_string())?)
        })),
        ("single m is a fracton", Box::new(|| expect_class(REFERENCE_RULE, "1", MobilityClass::Fracton))),
        ("triangle lineon", Box::new(|| expect_class(REFERENCE_RULE, TRIANGLE, MobilityClass::lineon(-1, 1, 1)))),
        ("diagonal lineon", Box::new(|| expect_class(DIAGONAL_RULE, TRIANGLE, MobilityClass::lineon(1, 1, 1)))),
        ("period-two lineon", Box::new(|| expect_class(PERIOD_TWO_RULE, TRIANGLE, MobilityClass::lineon(-1, 1, 2)))),
        ("m = f is fully mobile", Box::new(|| {
            let ok = [REFERENCE_RULE, DIAGONAL_RULE, PERIOD_TWO_RULE]
                .iter()
                .try_fold(true, |acc, r| Ok::<_, String>(acc && class_of(r, r)? == MobilityClass::FullyMobile))?;
            Ok((ok, "fully mobile".into()))
        })),
        ("period of 1 + q", Box::new(|| same(period(&[true, true]).map_err(|e| e.to_string())?, 1))),
        ("period of 1 + q^2", Box::new(|| same(period(&[true, false, true]).map_err(|e| e.to_string())?, 2))),
        ("point fusion channels", Box::new(|| {
            let set = fuse(&rule(SQUARE_RULE)?, &p("1")?, &p("1")?, 3, Execution::Sequential)
                .map_err(|e| e.to_string())?;
            let has = |c: MobilityClass, w: (i32, i32)| set.get(&c).is_some_and(|ch| ch.witnesses.contains(&w));
            let ok = has(MobilityClass::lineon(0, 1, 1), (1, 0))
                && has(MobilityClass::lineon(1, 0, 1), (0, 1))
                && has(MobilityClass::Fracton, (1, 1))
                && set.vacuum == vec![(0, 0)];
            let labels: Vec<String> = set.classes().map(|c| c.label()).collect();
            Ok((ok, labels.join(" + ")))
        })),
        ("two fractons fuse to alpha", Box::new(|| {
            let set = fuse(&rule(SQUARE_RULE)?, &p("x + y")?, &p("1 + x*y")?, 2, Execution::Sequential)
                .map_err(|e| e.to_string())?;
            let ok = set.get(&MobilityClass::FullyMobile).is_some_and(|c| c.witnesses.contains(&(0, 0)));
            Ok((ok, set.classes().map(|c| c.label()).collect::<Vec<_>>().join(" + ")))
        })),
        ("alpha x gamma", Box::new(|| {
            let a = allowed_channels(MobilityClass::FullyMobile, MobilityClass::Fracton);
            let ok = a.contains(&MobilityClass::Fracton)
                && !a.contains(&MobilityClass::FullyMobile)
                && !a.contains(&MobilityClass::lineon(1, 0, 1));
            Ok((ok, a.describe()))
        })),
        ("same-axis lineons", Box::new(|| {
            let a = allowed_channels(MobilityClass::lineon(1, 0, 2), MobilityClass::lineon(1, 0, 3));
            let periods: Vec<u32> = (1..=12).filter(|&t| a.contains(&MobilityClass::lineon(1, 0, t))).collect();
            Ok((a.contains(&MobilityClass::FullyMobile) && periods == [1, 2, 3, 6], format!("{periods:?}")))
        })),
        ("crossing lineons", Box::new(|| {
            let a = allowed_channels(MobilityClass::lineon(1, 0, 1), MobilityClass::lineon(0, 1, 1));
            let ok = a.contains(&MobilityClass::Fracton)
                && !a.contains(&MobilityClass::FullyMobile)
                && !a.contains(&MobilityClass::lineon(1, 0, 1));
            Ok((ok, a.describe()))
        })),
        ("crossing lineons fuse to fractons", Box::new(|| {
            let r = check_fusion(&rule(SQUARE_RULE)?, &p("1 + x")?, &p("1 + y")?, 3, Execution::Sequential)
                .map_err(|e| e.to_string())?;
            let only_gamma = r.observed.classes().all(|c| *c == MobilityClass::Fracton);
            Ok((r.pass && only_gamma, format!("pass = {}", r.pass)))
        })),
        ("one-step string operator", Box::new(|| {
            let w = string_operator_exists(&rule(REFERENCE_RULE)?, &p(TRIANGLE)?, (-1, 1), 8)
                .map_err(|e| e.to_string())?;
            Ok((w.is_some(), w.map_or("none".into(), |d| d.to_string())))
        })),
        ("single m cannot step", Box::new(|| {
            let w = string_operator_exists(&rule(REFERENCE_RULE)?, &p("1")?, (1, 0), 8).map_err(|e| e.to_string())?;
            Ok((w.is_none(), format!("{w:?}")))
        })),
        ("triangle moves along the anti-diagonal", Box::new(|| {
            let got = mobility_bruteforce(&rule(REFERENCE_RULE)?, &p(TRIANGLE)?, 3, 12).map_err(|e| e.to_string())?;
            let want: BTreeSet<(i32, i32)> = (-3..=3).map(|k| (k, -k)).collect();
            same(got, want)
        })),
        ("single m never moves", Box::new(|| {
            let got = mobility_bruteforce(&rule(REFERENCE_RULE)?, &p("1")?, 3, 12).map_err(|e| e.to_string())?;
            same(got, [(0, 0)].into_iter().collect())
        })),
        ("m = f moves anywhere", Box::new(|| {
            let r = rule(REFERENCE_RULE)?;
            let got = mobility_bruteforce(&r, r.poly(), 2, 12).map_err(|e| e.to_string())?;
            same(got.len(), 25)
        })),
        ("ground states of the reference rule", Box::new(|| {
            same(gsd(&rule(REFERENCE_RULE)?, 6).map_err(|e| e.to_string())?, 4)
        })),
        ("ground states of the square rule", Box::new(|| {
            same(gsd(&rule(SQUARE_RULE)?, 5).map_err(|e| e.to_string())?, 4)
        })),
        ("symmetry generator", Box::new(|| {
            let w = InitialCondition::from_exponents(&[&[0], &[-1]]);
            let ok = verify_symmetry_slab(&rule(REFERENCE_RULE)?, &w, 7, 15).map_err(|e| e.to_string())?;
            Ok((ok, ok.to_string()))
        })),
        ("rule picture", Box::new(|| {
            let grid = render_ascii(&p(REFERENCE_RULE)?);
            Ok((grid == ".X.\nXXX\nXX.", grid.replace('\n', "/")))
        })),
    ]
}

/// Runs every worked example. Examples are independent and may run in parallel.
pub fn run_examples(exec: Execution) -> Vec<ExampleOutcome> {
    let list = examples();
    exec.map(&list, |(name, check)| {
        let (pass, observed) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        ExampleOutcome { name, pass, observed }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_worked_example_passes() {
        for o in run_examples(Execution::Parallel) {
            assert!(o.pass, "{}: {}", o.name, o.observed);
        }
    }
}
