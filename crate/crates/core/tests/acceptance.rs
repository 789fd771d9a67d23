//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hocaset::fusion::{check_fusion, fuse};
use hocaset::hoca::{evolve, pattern_poly, validate_rule, HocaRule, InitialCondition};
use hocaset::mobility::{classify, classify_poly, MobilityClass};
use hocaset::oracle::{
    bare_torus_code, gcd_bruteforce, gsd, mobility_bruteforce, verify_pattern_slab,
    verify_symmetry_slab, window_margin,
};
use hocaset::pauli::{build_stabilizers, decompose_pq, excitation_map, symplectic, synthesize_circuit};
use hocaset::random::{random_poly, random_rule, rng, RuleShape, SuiteRng, DEFAULT_SEED};
use hocaset::worked::{DIAGONAL_RULE, PERIOD_TWO_RULE, REFERENCE_RULE, SQUARE_RULE, TRIANGLE};
use hocaset::{Execution, LaurentPoly, Monomial};
use rand::Rng;

type Verdict = Result<(), String>;

fn rule(s: &str) -> HocaRule {
    hocaset::hoca::parse_rule(s).expect("valid rule")
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().expect("valid polynomial")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn worked_classification() -> Verdict {
    let cases = [
        (REFERENCE_RULE, "1", MobilityClass::Fracton),
        (REFERENCE_RULE, TRIANGLE, MobilityClass::lineon(-1, 1, 1)),
        (DIAGONAL_RULE, TRIANGLE, MobilityClass::lineon(1, 1, 1)),
        (PERIOD_TWO_RULE, TRIANGLE, MobilityClass::lineon(-1, 1, 2)),
        (REFERENCE_RULE, REFERENCE_RULE, MobilityClass::FullyMobile),
        (DIAGONAL_RULE, DIAGONAL_RULE, MobilityClass::FullyMobile),
        (PERIOD_TWO_RULE, PERIOD_TWO_RULE, MobilityClass::FullyMobile),
    ];
    for (r, m, want) in cases {
        let got = classify(&rule(r), &poly(m)).map_err(|e| e.to_string())?.class;
        ensure(got == want, || format!("{r} with m = {m}: got {got}, want {want}"))?;
    }
    Ok(())
}

fn classifier_matches_oracle(seed: u64) -> Verdict {
    let mut r = rng(seed);
    let cases: Vec<(HocaRule, LaurentPoly)> = (0..200)
        .map(|_| (random_rule(&mut r, RuleShape::default()), random_poly(&mut r, 5, 3)))
        .collect();
    let s = 3;
    let results = Execution::Parallel.map(&cases, |(f, m)| {
        let w = window_margin(f.poly(), m, s);
        let brute = mobility_bruteforce(f, m, s, w).map_err(|e| e.to_string())?;
        let predicted = classify(f, m).map_err(|e| e.to_string())?.polynomial.truncate(s);
        ensure(brute == predicted, || {
            format!("f = {}, m = {m}: oracle {brute:?}, classifier {predicted:?}", f.poly())
        })
    });
    results.into_iter().collect()
}

fn even_rule(r: &mut SuiteRng) -> HocaRule {
    random_rule(
        r,
        RuleShape {
            even: true,
            ..Default::default()
        },
    )
}

fn decomposition_and_circuit(seed: u64) -> Verdict {
    let mut r = rng(seed);
    let mut rules = vec![rule(REFERENCE_RULE)];
    rules.extend((0..100).map(|_| even_rule(&mut r)));
    for f in &rules {
        let d = decompose_pq(f).map_err(|e| format!("{}: {e}", f.poly()))?;
        ensure(d.recombine() == *f.poly(), || format!("{}: identity fails", f.poly()))?;
        let g = d.p.gcd(&d.q).map_err(|e| e.to_string())?;
        ensure(g.is_one(), || format!("{}: gcd(P, Q) = {g}", f.poly()))?;
    }
    let d = decompose_pq(&rules[0]).map_err(|e| e.to_string())?;
    let gates = synthesize_circuit(&d.p, &d.q).len();
    ensure(gates == 4, || format!("reference circuit has {gates} gates"))
}

fn stabilizer_algebra(seed: u64) -> Verdict {
    let mut r = rng(seed);
    for _ in 0..100 {
        let f = even_rule(&mut r);
        let s = build_stabilizers(&f).map_err(|e| e.to_string())?;
        for (i, g) in [&s.a, &s.b, &s.c].into_iter().enumerate() {
            for (j, h) in [&s.a, &s.b, &s.c].into_iter().enumerate() {
                ensure(symplectic(g, h).is_zero(), || format!("{}: generators {i},{j} clash", f.poly()))?;
            }
        }
        ensure(symplectic(&s.c, &s.d).is_zero(), || format!("{}: C and D clash", f.poly()))?;
        for _ in 0..20 {
            let d = random_poly(&mut r, 6, 4);
            let ex = excitation_map(&s, &s.d.scaled(&d));
            let want = &d * &f.poly().antipode();
            ensure(ex.e.is_zero() && ex.c.is_zero() && ex.m == want, || {
                format!("{}: block excitation for d = {d} is wrong", f.poly())
            })?;
        }
    }
    Ok(())
}

fn ground_states() -> Verdict {
    let cases = [(REFERENCE_RULE, 6..=8), (SQUARE_RULE, 5..=8)];
    for (r, sizes) in cases {
        for l in sizes {
            let g = gsd(&rule(r), l).map_err(|e| e.to_string())?;
            ensure(g == 4, || format!("{r} at L = {l}: gsd {g}"))?;
        }
    }
    let bare = bare_torus_code(4).and_then(|c| c.gsd()).map_err(|e| e.to_string())?;
    ensure(bare == 4, || format!("bare toric code: gsd {bare}"))
}

/// `f` moved so a lowest term sits at the origin, when that makes a rule.
fn as_rule(f: &LaurentPoly) -> Option<HocaRule> {
    let low = *f.terms().first()?;
    validate_rule(&f.shifted(low.inverse())).ok()
}

fn line(r: &mut SuiteRng, axis: (i32, i32)) -> LaurentPoly {
    let n = r.gen_range(1..=3);
    let mut t = LaurentPoly::from_terms([(0, 0), (n * axis.0, n * axis.1)]);
    for k in 1..n {
        if r.gen_bool(0.5) {
            t.flip(Monomial::new(k * axis.0, k * axis.1));
        }
    }
    t
}

const AXES: [(i32, i32); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

/// Random rules together with a pair of excitations: plain random patterns,
/// or quotients of `f` by line factors (lineons on chosen axes).
fn fusion_triples(seed: u64, count: usize) -> Vec<(HocaRule, LaurentPoly, LaurentPoly)> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let kind = out.len() % 3;
        if kind == 0 {
            let f = random_rule(&mut r, RuleShape::default());
            let (m1, m2) = (random_poly(&mut r, 4, 2), random_poly(&mut r, 4, 2));
            out.push((f, m1, m2));
            continue;
        }
        let a1 = AXES[r.gen_range(0..AXES.len())];
        let a2 = if kind == 1 {
            a1
        } else {
            AXES.iter().copied().filter(|&a| a != a1).nth(r.gen_range(0..3)).expect("three others")
        };
        let (l1, l2) = (line(&mut r, a1), line(&mut r, a2));
        let h = LaurentPoly::from_terms([(0, 0), (r.gen_range(-1..=1), r.gen_range(1..=2))]);
        let f = &(&l1 * &l2) * &h;
        let Some(rule) = as_rule(&f) else { continue };
        let m1 = &l2 * &h;
        let m2 = &l1 * &h;
        out.push((rule, m1, m2));
    }
    out
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn fusion_rules(seed: u64) -> Verdict {
    let square = rule(SQUARE_RULE);
    let set = fuse(&square, &poly("1"), &poly("1"), 3, Execution::Parallel).map_err(|e| e.to_string())?;
    let has = |c: MobilityClass, w: (i32, i32)| set.get(&c).is_some_and(|ch| ch.witnesses.contains(&w));
    ensure(has(MobilityClass::lineon(0, 1, 1), (1, 0)), || "gamma + gamma to vertical lineon".into())?;
    ensure(has(MobilityClass::lineon(1, 0, 1), (0, 1)), || "gamma + gamma to horizontal lineon".into())?;
    ensure(has(MobilityClass::Fracton, (1, 1)), || "gamma + gamma to gamma".into())?;
    let set = fuse(&square, &poly("x + y"), &poly("1 + x*y"), 2, Execution::Parallel)
        .map_err(|e| e.to_string())?;
    ensure(
        set.get(&MobilityClass::FullyMobile).is_some_and(|c| c.witnesses.contains(&(0, 0))),
        || "gamma + gamma to alpha".into(),
    )?;

    let triples = fusion_triples(seed, 100);
    let reports = Execution::Parallel.map(&triples, |(f, m1, m2)| {
        check_fusion(f, m1, m2, 4, Execution::Sequential).map_err(|e| e.to_string())
    });
    let (mut same_axis, mut crossing) = (0, 0);
    for ((f, m1, m2), report) in triples.iter().zip(reports) {
        let report = report?;
        let ctx = || format!("f = {}, m1 = {m1}, m2 = {m2}", f.poly());
        ensure(report.pass, || format!("{}: violations {:?}", ctx(), report.violations))?;
        if let (
            MobilityClass::Lineon { axis: v1, period: t1 },
            MobilityClass::Lineon { axis: v2, period: t2 },
        ) = (report.left, report.right)
        {
            if v1 == v2 {
                same_axis += 1;
                for c in report.observed.classes() {
                    match *c {
                        MobilityClass::Fracton => return Err(format!("{}: same-axis pair gave gamma", ctx())),
                        MobilityClass::Lineon { period, .. } => ensure(lcm(t1, t2).is_multiple_of(period), || {
                            format!("{}: period {period} does not divide lcm({t1}, {t2})", ctx())
                        })?,
                        MobilityClass::FullyMobile => {}
                    }
                }
            } else {
                crossing += 1;
                ensure(report.observed.classes().all(|c| *c == MobilityClass::Fracton), || {
                    format!("{}: crossing pair gave a non-gamma channel", ctx())
                })?;
            }
        }
    }
    ensure(same_axis > 0 && crossing > 0, || {
        format!("suite has {same_axis} same-axis and {crossing} crossing lineon pairs")
    })
}

fn symmetry_generators(seed: u64) -> Verdict {
    let f = rule(REFERENCE_RULE);
    let (depth, width) = (7usize, 15);
    let mut histories = Vec::new();
    for w in ["1 + x^-1*y", "1 + y + x*y", "y"] {
        let w = InitialCondition::from_poly(&poly(w), f.order()).map_err(|e| e.to_string())?;
        ensure(verify_symmetry_slab(&f, &w, depth, width).map_err(|e| e.to_string())?, || {
            "history is not a symmetry".into()
        })?;
        histories.push(pattern_poly(&evolve(&f, &w, depth).map_err(|e| e.to_string())?));
    }
    let mut r = rng(seed);
    let margin = f.radius() as i32;
    for k in 0..20 {
        let mut h = histories[k % histories.len()].clone();
        let cell = Monomial::new(
            r.gen_range(-width + margin..=width - margin),
            r.gen_range(f.order() as i32..depth as i32),
        );
        h.flip(cell);
        ensure(!verify_pattern_slab(&f, &h, depth, width), || {
            format!("flip at {cell:?} went unnoticed")
        })?;
    }
    Ok(())
}

fn small_factor(r: &mut SuiteRng) -> LaurentPoly {
    random_poly_in(r, 0, 1)
}

fn random_poly_in(r: &mut SuiteRng, lo: i32, hi: i32) -> LaurentPoly {
    loop {
        let p = LaurentPoly::from_terms(
            (0..r.gen_range(1..=4)).map(|_| (r.gen_range(lo..=hi), r.gen_range(lo..=hi))),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

fn kernel_properties(seed: u64) -> Verdict {
    let mut r = rng(seed);
    for _ in 0..200 {
        let (p, q) = (random_poly(&mut r, 6, 3), random_poly(&mut r, 6, 3));
        let pq = &p * &q;
        let (np, nq) = (p.newton().map_err(|e| e.to_string())?, q.newton().map_err(|e| e.to_string())?);
        let npq = pq.newton().map_err(|e| e.to_string())?;
        ensure(npq == np.minkowski_sum(&nq), || format!("Minkowski sum fails for {p} and {q}"))?;
        ensure(npq.dim >= np.dim.max(nq.dim), || format!("dimension drops for {p} times {q}"))?;
    }
    for _ in 0..200 {
        let c = small_factor(&mut r);
        let (a, b) = (&c * &small_factor(&mut r), &c * &small_factor(&mut r));
        let fast = a.gcd(&b).map_err(|e| e.to_string())?;
        let slow = gcd_bruteforce(&a, &b, 9).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("gcd({a}, {b}): {fast} vs {slow}"))?;
    }
    for _ in 0..200 {
        let f = random_rule(&mut r, RuleShape::default());
        let m = random_poly(&mut r, 5, 3);
        let base = classify(&f, &m).map_err(|e| e.to_string())?.class;
        let t = Monomial::new(r.gen_range(-6..=6), r.gen_range(-6..=6));
        let moved = classify(&f, &m.shifted(t)).map_err(|e| e.to_string())?.class;
        ensure(base == moved, || format!("translation changes class of {m} under {}", f.poly()))?;
        let flipped = classify_poly(&f.poly().antipode(), &m.antipode()).map_err(|e| e.to_string())?.class;
        ensure(base == flipped, || format!("antipode changes class of {m} under {}", f.poly()))?;
    }
    Ok(())
}

type Criterion = (&'static str, u64, Box<dyn Fn() -> Verdict>);

fn main() -> ExitCode {
    let seed = DEFAULT_SEED;
    let criteria: Vec<Criterion> = vec![
        ("worked classification examples", 1, Box::new(worked_classification)),
        ("classifier agrees with brute-force oracle", 60, Box::new(move || classifier_matches_oracle(seed))),
        ("decomposition and circuit", 1, Box::new(move || decomposition_and_circuit(seed + 1))),
        ("stabilizer algebra", 5, Box::new(move || stabilizer_algebra(seed + 2))),
        ("ground-state degeneracy", 30, Box::new(ground_states)),
        ("fusion rules", 60, Box::new(move || fusion_rules(seed + 3))),
        ("symmetry generators", 5, Box::new(move || symmetry_generators(seed + 4))),
        ("algebra kernel properties", 10, Box::new(move || kernel_properties(seed + 5))),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let verdict = verdict.and_then(|_| {
            ensure(elapsed <= Duration::from_secs(*budget), || {
                format!("took {elapsed:.2?}, budget {budget} s")
            })
        });
        match verdict {
            Ok(()) => println!("PASS {} {name} ({elapsed:.2?})", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
