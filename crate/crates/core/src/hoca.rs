//! Higher-order cellular automaton rules and their spacetime evolution.
//!
//! A rule is a polynomial `f(x, y) = f_0(x) + f_1(x) y + ... + f_n(x) y^n` with
//! `f(0, 0) = 1`. When `f_0 = 1` the rule is an update: row `j` of a history is
//! `r_j = sum_{k=1..n} f_k r_{j-k}`, and the history polynomial `F` satisfies
//! `f * F = 0` away from its first and last `n` rows.

use serde::Serialize;
use thiserror::Error;

use crate::polyring::{parse, LaurentPoly, Monomial, NewtonPolygon, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HocaError {
    #[error("the zero polynomial is not a rule")]
    ZeroPolynomial,
    #[error("rule {0} has no constant term")]
    MissingConstantTerm(String),
    #[error("rule {0} has a negative power of y")]
    NegativeYExponent(String),
    #[error("rule {0} has order 0 (no positive power of y)")]
    OrderZero(String),
    #[error("rule {0} is not an update rule: its y^0 row must be exactly 1")]
    NotAnUpdateRule(String),
    #[error("depth {depth} is smaller than the rule order {order}")]
    DepthTooSmall { depth: usize, order: usize },
    #[error("initial condition has {got} rows, rule order is {expected}")]
    InitialRows { expected: usize, got: usize },
    #[error("initial-condition row {row} ({text}) depends on y")]
    RowNotUnivariate { row: usize, text: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A validated rule `f(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HocaRule {
    f: LaurentPoly,
    order: usize,
    radius: u32,
    circuit_realizable: bool,
}

impl HocaRule {
    pub fn poly(&self) -> &LaurentPoly {
        &self.f
    }

    /// Largest power of `y`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Largest `|x|` exponent: the speed limit of the automaton.
    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Even number of terms; the CZ-circuit construction needs this.
    pub fn circuit_realizable(&self) -> bool {
        self.circuit_realizable
    }

    /// `f_k(x)`, the coefficient of `y^k`, as a polynomial in `x` alone.
    pub fn row(&self, k: usize) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.f
                .terms()
                .iter()
                .filter(|t| t.y as usize == k)
                .map(|t| (t.x, 0)),
        )
    }

    /// True when `f_0 = 1`, i.e. the rule defines an explicit update.
    pub fn is_update_rule(&self) -> bool {
        self.row(0).is_one()
    }

    fn require_update(&self) -> Result<(), HocaError> {
        if self.is_update_rule() {
            Ok(())
        } else {
            Err(HocaError::NotAnUpdateRule(self.f.to_string()))
        }
    }
}

impl std::fmt::Display for HocaRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.f.fmt(f)
    }
}

pub fn validate_rule(p: &LaurentPoly) -> Result<HocaRule, HocaError> {
    let (_, min_y, _, max_y) = p.bounding_box().ok_or(HocaError::ZeroPolynomial)?;
    if !p.contains(Monomial::ONE) {
        return Err(HocaError::MissingConstantTerm(p.to_string()));
    }
    if min_y < 0 {
        return Err(HocaError::NegativeYExponent(p.to_string()));
    }
    if max_y == 0 {
        return Err(HocaError::OrderZero(p.to_string()));
    }
    let radius = p.terms().iter().map(|t| t.x.unsigned_abs()).max().unwrap_or(0);
    Ok(HocaRule {
        f: p.clone(),
        order: max_y as usize,
        radius,
        circuit_realizable: p.len().is_multiple_of(2),
    })
}

/// Parses and validates a rule in one step.
pub fn parse_rule(text: &str) -> Result<HocaRule, HocaError> {
    validate_rule(&parse(text)?)
}

/// The first `n` rows `r_0(x) .. r_{n-1}(x)` of a history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialCondition {
    rows: Vec<LaurentPoly>,
}

impl InitialCondition {
    pub fn new(rows: Vec<LaurentPoly>) -> Result<Self, HocaError> {
        for (row, r) in rows.iter().enumerate() {
            if r.terms().iter().any(|t| t.y != 0) {
                return Err(HocaError::RowNotUnivariate {
                    row,
                    text: r.to_string(),
                });
            }
        }
        Ok(Self { rows })
    }

    /// Rows given as sets of `x` exponents.
    pub fn from_exponents(rows: &[&[i32]]) -> Self {
        Self {
            rows: rows
                .iter()
                .map(|r| LaurentPoly::from_x_exponents(r.iter().copied()))
                .collect(),
        }
    }

    /// Comma-separated univariate polynomials, e.g. `"1, x^-1"`.
    pub fn parse(text: &str) -> Result<Self, HocaError> {
        let rows = text
            .split(',')
            .map(|part| parse(part.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    /// The initial rows as one polynomial `sum_j y^j r_j(x)`.
    pub fn from_poly(w: &LaurentPoly, order: usize) -> Result<Self, HocaError> {
        let mut rows = vec![LaurentPoly::zero(); order];
        for t in w.terms() {
            if t.y < 0 || t.y as usize >= order {
                return Err(HocaError::InitialRows {
                    expected: order,
                    got: t.y as usize + 1,
                });
            }
            rows[t.y as usize].flip(Monomial::new(t.x, 0));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[LaurentPoly] {
        &self.rows
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.iter().all(LaurentPoly::is_zero)
    }

    /// Rowwise sum.
    pub fn xor(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let zero = LaurentPoly::zero();
        Self {
            rows: (0..n)
                .map(|j| {
                    self.rows.get(j).unwrap_or(&zero) + other.rows.get(j).unwrap_or(&zero)
                })
                .collect(),
        }
    }
}

/// A finite-depth history: rows `r_0 .. r_{R-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacetimePattern {
    pub rows: Vec<LaurentPoly>,
}

impl SpacetimePattern {
    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    /// `F(x, y) = sum_j y^j r_j(x)`.
    pub fn to_poly(&self) -> LaurentPoly {
        pattern_poly(self)
    }
}

pub fn evolve(
    rule: &HocaRule,
    w: &InitialCondition,
    depth: usize,
) -> Result<SpacetimePattern, HocaError> {
    let n = rule.order();
    if depth < n {
        return Err(HocaError::DepthTooSmall { depth, order: n });
    }
    if w.rows.len() != n {
        return Err(HocaError::InitialRows {
            expected: n,
            got: w.rows.len(),
        });
    }
    rule.require_update()?;
    let coeffs: Vec<LaurentPoly> = (0..=n).map(|k| rule.row(k)).collect();
    let mut rows = w.rows.clone();
    for j in n..depth {
        let mut next = LaurentPoly::zero();
        for (k, fk) in coeffs.iter().enumerate().skip(1) {
            next += &(&rows[j - k] * fk);
        }
        rows.push(next);
    }
    Ok(SpacetimePattern { rows })
}

/// The `k`-step evolution operator: entry `i` is the polynomial with
/// `r_{n-1+k} = sum_i r_i * E_i` for every initial condition.
pub fn evolution_operator(rule: &HocaRule, k: usize) -> Result<Vec<LaurentPoly>, HocaError> {
    assert!(k >= 1, "evolution operator needs k >= 1");
    rule.require_update()?;
    let n = rule.order();
    let coeffs: Vec<LaurentPoly> = (0..=n).map(|k| rule.row(k)).collect();
    // history[j][i] = coefficient of w_i in row j
    let mut history: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
                .collect()
        })
        .collect();
    for j in n..n + k {
        let mut next = vec![LaurentPoly::zero(); n];
        for (step, fk) in coeffs.iter().enumerate().skip(1) {
            for (slot, prev) in next.iter_mut().zip(&history[j - step]) {
                *slot += &(prev * fk);
            }
        }
        history.push(next);
    }
    Ok(history.swap_remove(n - 1 + k))
}

pub fn pattern_poly(pattern: &SpacetimePattern) -> LaurentPoly {
    LaurentPoly::from_terms(pattern.rows.iter().enumerate().flat_map(|(j, r)| {
        r.terms().iter().map(move |t| (t.x, j as i32))
    }))
}

/// A unimodular change of exponent coordinates: `e -> basis * (e + translation)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub translation: Monomial,
    pub basis: [[i32; 2]; 2],
    pub transformed: LaurentPoly,
}

impl Normalization {
    pub fn determinant(&self) -> i64 {
        let [[a, b], [c, d]] = self.basis;
        a as i64 * d as i64 - b as i64 * c as i64
    }

    pub fn apply(&self, p: &LaurentPoly) -> LaurentPoly {
        apply_unimodular(p, self.translation, self.basis)
    }

    /// Maps a lattice vector (no translation) through the basis.
    pub fn apply_vector(&self, v: (i32, i32)) -> (i32, i32) {
        let [[a, b], [c, d]] = self.basis;
        (a * v.0 + b * v.1, c * v.0 + d * v.1)
    }

    /// The normalized polynomial as a rule. Fails only for monomial inputs,
    /// which normalize to `1` (order 0).
    pub fn rule(&self) -> Result<HocaRule, HocaError> {
        validate_rule(&self.transformed)
    }
}

pub fn apply_unimodular(p: &LaurentPoly, translation: Monomial, basis: [[i32; 2]; 2]) -> LaurentPoly {
    let [[a, b], [c, d]] = basis;
    LaurentPoly::from_terms(p.terms().iter().map(|t| {
        let (i, j) = (t.x + translation.x, t.y + translation.y);
        (a * i + b * j, c * i + d * j)
    }))
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return if a >= 0 { (a, 1, 0) } else { (-a, -1, 0) };
    }
    let (g, s, t) = ext_gcd(b, a % b);
    (g, t, s - (a / b) * t)
}

fn gcd_is_one(a: i32, b: i32) -> bool {
    ext_gcd(a as i64, b as i64).0 == 1
}

/// Brings any nonzero polynomial into rule form (constant term present, no
/// negative powers of `y`) by a translation and a determinant-one basis change.
///
/// The lexicographically smallest Newton vertex is moved to the origin; the new
/// `y` axis is the supporting-line normal `(c1, c2)` of smallest `|c1| + |c2|`
/// (ties broken lexicographically) that keeps every exponent on the nonnegative
/// side and, unless the input is a monomial, lifts at least one exponent off
/// the line. The basis is completed with `a c2 - b c1 = 1`.
pub fn normalize_rule(p: &LaurentPoly) -> Result<Normalization, HocaError> {
    let hull = NewtonPolygon::of(p)?;
    let v0 = hull.vertices[0];
    let translation = Monomial::new(-v0.0, -v0.1);
    let pts: Vec<(i64, i64)> = p
        .terms()
        .iter()
        .map(|t| ((t.x - v0.0) as i64, (t.y - v0.1) as i64))
        .collect();
    let need_lift = hull.dim > 0;
    let mut normal = None;
    'search: for s in 1i32..=64 {
        let mut cands: Vec<(i32, i32)> = (-s..=s)
            .flat_map(|c1| {
                let r = s - c1.abs();
                if r == 0 {
                    vec![(c1, 0)]
                } else {
                    vec![(c1, -r), (c1, r)]
                }
            })
            .filter(|&(c1, c2)| gcd_is_one(c1, c2))
            .collect();
        cands.sort_unstable();
        for (c1, c2) in cands {
            let dots = pts.iter().map(|&(i, j)| c1 as i64 * i + c2 as i64 * j);
            let ok = dots.clone().all(|d| d >= 0);
            let lifted = dots.clone().any(|d| d > 0);
            if ok && (lifted || !need_lift) {
                normal = Some((c1, c2));
                break 'search;
            }
        }
    }
    // The smallest vertex always admits (1, 0) or (0, 1).
    let (c1, c2) = normal.expect("a supporting normal exists at every hull vertex");
    // a*c2 - b*c1 = 1
    let (g, s, t) = ext_gcd(c2 as i64, c1 as i64);
    debug_assert_eq!(g, 1);
    let (a, b) = (s as i32, -t as i32);
    let basis = [[a, b], [c1, c2]];
    let transformed = apply_unimodular(p, translation, basis);
    Ok(Normalization {
        translation,
        basis,
        transformed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        parse(s).unwrap()
    }

    const RULE6: &str = "1 + x^-1*y + y + x*y + y^2 + x^-1*y^2";

    #[test]
    fn validate_examples() {
        let r = parse_rule(RULE6).unwrap();
        assert_eq!((r.order(), r.radius(), r.circuit_realizable()), (2, 1, true));
        let r = parse_rule("1 + y + x*y^2 + x^2*y^2").unwrap();
        assert_eq!(r.order(), 2);
        assert!(r.circuit_realizable());
        assert!(matches!(
            parse_rule("x^-1*y"),
            Err(HocaError::MissingConstantTerm(_))
        ));
        assert!(matches!(parse_rule("1 + y^-1"), Err(HocaError::NegativeYExponent(_))));
        assert!(matches!(parse_rule("0"), Err(HocaError::ZeroPolynomial)));
        assert!(matches!(parse_rule("1 + x"), Err(HocaError::OrderZero(_))));
        assert!(!parse_rule("1 + x + y").unwrap().circuit_realizable());
    }

    #[test]
    fn evolve_pascal_rule() {
        let rule = parse_rule("1 + y + x*y").unwrap();
        let w = InitialCondition::from_exponents(&[&[0]]);
        let h = evolve(&rule, &w, 3).unwrap();
        assert_eq!(h.rows, vec![p("1"), p("1 + x"), p("1 + x^2")]);
        assert_eq!(pattern_poly(&h), p("1 + y + x*y + y^2 + x^2*y^2"));
    }

    #[test]
    fn evolve_second_order_rule() {
        let rule = parse_rule(RULE6).unwrap();
        assert_eq!(rule.row(1), p("x^-1 + 1 + x"));
        assert_eq!(rule.row(2), p("1 + x^-1"));
        let w = InitialCondition::from_exponents(&[&[0], &[-1]]);
        let h = evolve(&rule, &w, 3).unwrap();
        assert_eq!(h.rows[2], p("x^-2"));
    }

    #[test]
    fn evolve_errors_and_trivial_input() {
        let rule = parse_rule(RULE6).unwrap();
        let w = InitialCondition::from_exponents(&[&[], &[]]);
        let h = evolve(&rule, &w, 6).unwrap();
        assert!(h.rows.iter().all(LaurentPoly::is_zero));
        assert!(pattern_poly(&h).is_zero());
        assert_eq!(
            evolve(&rule, &w, 1),
            Err(HocaError::DepthTooSmall { depth: 1, order: 2 })
        );
        let short = InitialCondition::from_exponents(&[&[0]]);
        assert!(matches!(evolve(&rule, &short, 4), Err(HocaError::InitialRows { .. })));
        let not_update = parse_rule("1 + x + y + x*y").unwrap();
        let w1 = InitialCondition::from_exponents(&[&[0]]);
        assert!(matches!(
            evolve(&not_update, &w1, 3),
            Err(HocaError::NotAnUpdateRule(_))
        ));
    }

    #[test]
    fn evolution_operator_closed_forms() {
        let rule = parse_rule("1 + x*y + y^2 + x^2*y^2").unwrap();
        let rule3 = parse_rule("1 + x*y + y^2 + x^-1*y^2 + x^3*y^3").unwrap();
        for r in [&rule, &rule3] {
            let n = r.order();
            let f: Vec<LaurentPoly> = (0..=n).map(|k| r.row(k)).collect();
            let e1 = evolution_operator(r, 1).unwrap();
            let want1: Vec<LaurentPoly> = (0..n).map(|i| f[n - i].clone()).collect();
            assert_eq!(e1, want1);
            let e2 = evolution_operator(r, 2).unwrap();
            assert_eq!(e2[0], &f[1] * &f[n]);
            assert_eq!(e2[n - 1], &f[2] + &(&f[1] * &f[1]));
            if n >= 2 {
                assert_eq!(e2[1], &f[n] + &(&f[1] * &f[n - 1]));
            }
        }
        let e3 = evolution_operator(&rule3, 3).unwrap();
        let f1 = rule3.row(1);
        assert_eq!(e3[2], &f1.pow(3) + &rule3.row(3));
    }

    #[test]
    fn normalize_examples() {
        let n = normalize_rule(&p("1 + x^-1*y^-1")).unwrap();
        assert_eq!(n.determinant(), 1);
        assert!(n.rule().is_ok());

        let n = normalize_rule(&p(RULE6)).unwrap();
        assert_eq!(n.determinant(), 1);
        assert!(n.rule().is_ok());

        let n = normalize_rule(&p("x^2*y^3")).unwrap();
        assert!(n.transformed.is_one());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-3i32..=3, -3i32..=3), 1..8)
            .prop_map(LaurentPoly::from_terms)
            .prop_filter("nonzero", |q| !q.is_zero())
    }

    fn arb_update_rule() -> impl Strategy<Value = HocaRule> {
        proptest::collection::vec((-2i32..=2, 1i32..=3), 1..7)
            .prop_filter_map("needs order >= 1", |pts| {
                let mut q = LaurentPoly::from_terms(pts);
                q.flip(Monomial::ONE);
                validate_rule(&q).ok()
            })
    }

    fn arb_row() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(-3i32..=3, 0..4).prop_map(LaurentPoly::from_x_exponents)
    }

    proptest! {
        #[test]
        fn normalized_polynomial_is_a_rule(q in arb_poly()) {
            let n = normalize_rule(&q).unwrap();
            prop_assert_eq!(n.determinant(), 1);
            if q.len() > 1 {
                prop_assert!(n.rule().is_ok(), "{} -> {}", q, n.transformed);
            }
        }

        #[test]
        fn history_is_annihilated_in_the_bulk(
            rule in arb_update_rule(),
            rows in proptest::collection::vec(arb_row(), 3),
            depth in 3usize..12,
        ) {
            let n = rule.order();
            let w = InitialCondition::new(rows[..n].to_vec()).unwrap();
            let h = evolve(&rule, &w, depth.max(n)).unwrap();
            let prod = rule.poly() * &pattern_poly(&h);
            let r = h.depth() as i32;
            prop_assert!(prod.terms().iter().all(|t| t.y < n as i32 || t.y >= r));
        }

        #[test]
        fn evolution_is_linear(
            rule in arb_update_rule(),
            a in proptest::collection::vec(arb_row(), 3),
            b in proptest::collection::vec(arb_row(), 3),
        ) {
            let n = rule.order();
            let wa = InitialCondition::new(a[..n].to_vec()).unwrap();
            let wb = InitialCondition::new(b[..n].to_vec()).unwrap();
            let ha = evolve(&rule, &wa, 8).unwrap();
            let hb = evolve(&rule, &wb, 8).unwrap();
            let hab = evolve(&rule, &wa.xor(&wb), 8).unwrap();
            for j in 0..8 {
                prop_assert_eq!(&hab.rows[j], &(&ha.rows[j] + &hb.rows[j]));
            }
        }

        #[test]
        fn evolution_operator_matches_direct_evolution(
            rule in arb_update_rule(),
            rows in proptest::collection::vec(arb_row(), 3),
        ) {
            let n = rule.order();
            let w = InitialCondition::new(rows[..n].to_vec()).unwrap();
            let h = evolve(&rule, &w, n + 6).unwrap();
            for k in 1..=6 {
                let e = evolution_operator(&rule, k).unwrap();
                let mut acc = LaurentPoly::zero();
                for (wi, ei) in w.rows().iter().zip(&e) {
                    acc += &(wi * ei);
                }
                prop_assert_eq!(&acc, &h.rows[n - 1 + k]);
            }
        }

        #[test]
        fn rows_respect_the_speed_limit(
            rule in arb_update_rule(),
            x0 in -3i32..=3,
        ) {
            let n = rule.order();
            let mut rows = vec![LaurentPoly::zero(); n];
            rows[0] = LaurentPoly::from_x_exponents([x0, x0 + 1]);
            let w = InitialCondition::new(rows).unwrap();
            let h = evolve(&rule, &w, 10).unwrap();
            let rad = rule.radius() as i32;
            for (j, r) in h.rows.iter().enumerate() {
                for t in r.terms() {
                    prop_assert!(t.x >= x0 - j as i32 * rad && t.x <= x0 + 1 + j as i32 * rad);
                }
            }
        }
    }
}
