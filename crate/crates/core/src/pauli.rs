//! Translation-invariant Pauli operators on the three-qubit unit cell, the
//! `f = (1+x)P + (1+y)Q` decomposition, the CZ circuit built from it, and the
//! resulting stabilizers.
//!
//! Sublattice 1 is the vertex qubit at `(i, j)`, sublattice 2 the horizontal
//! edge at `(i + 1/2, j)`, sublattice 3 the vertical edge at `(i, j + 1/2)`.
//! Axes: x right, y down. Entry `k` of [`PauliVector::x`] (resp. `z`) lists the
//! cells carrying an `X` (resp. `Z`) on sublattice `k + 1`.

use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::hoca::{evolve, pattern_poly, HocaError, HocaRule, InitialCondition};
use crate::polyring::{LaurentPoly, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("rule {0} has an odd number of terms and has no CZ-circuit realization")]
    OddTermCount(String),
    #[error("no decomposition with gcd(P, Q) = 1 among the first {tried} candidates")]
    SearchExhausted { tried: usize },
    #[error(transparent)]
    Hoca(#[from] HocaError),
}

/// `(a1, a2, a3 | b1, b2, b3)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct PauliVector {
    pub x: [LaurentPoly; 3],
    pub z: [LaurentPoly; 3],
}

impl PauliVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(x: [LaurentPoly; 3], z: [LaurentPoly; 3]) -> Self {
        Self { x, z }
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(LaurentPoly::is_zero)
    }

    /// Operator product (entrywise sum).
    pub fn add(&self, other: &Self) -> Self {
        Self {
            x: std::array::from_fn(|k| &self.x[k] + &other.x[k]),
            z: std::array::from_fn(|k| &self.z[k] + &other.z[k]),
        }
    }

    /// The product of the translates of `self` listed by `d`.
    pub fn scaled(&self, d: &LaurentPoly) -> Self {
        Self {
            x: std::array::from_fn(|k| &self.x[k] * d),
            z: std::array::from_fn(|k| &self.z[k] * d),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.x.iter().chain(&self.z)
    }
}

/// `O1^dagger lambda O2`. Coefficient of `x^i y^j` is 1 exactly when `O2`
/// anticommutes with the translate of `O1` by `(i, j)`.
pub fn symplectic(o1: &PauliVector, o2: &PauliVector) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for k in 0..3 {
        acc += &(&o1.x[k].antipode() * &o2.z[k]);
        acc += &(&o1.z[k].antipode() * &o2.x[k]);
    }
    acc
}

/// One solution of `f = (1+x)P + (1+y)Q` with `gcd(P, Q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub p: LaurentPoly,
    pub q: LaurentPoly,
}

impl Decomposition {
    pub fn recombine(&self) -> LaurentPoly {
        &(&LaurentPoly::from_terms([(0, 0), (1, 0)]) * &self.p)
            + &(&LaurentPoly::from_terms([(0, 0), (0, 1)]) * &self.q)
    }

    fn coprime(&self) -> bool {
        match self.p.gcd(&self.q) {
            Ok(g) => g.is_one(),
            Err(_) => false,
        }
    }
}

/// Default cap on (matching, route) candidates tried by [`decompose_pq`].
pub const DEFAULT_PAIRING_CAP: usize = 10_000;

/// Adds `x^lo + ... + x^(hi-1)` at height `y` (or the vertical analogue) to `acc`.
fn run(acc: &mut Vec<Monomial>, from: i32, to: i32, fixed: i32, horizontal: bool) {
    for s in from.min(to)..from.max(to) {
        acc.push(if horizontal {
            Monomial::new(s, fixed)
        } else {
            Monomial::new(fixed, s)
        });
    }
}

/// Staircase for a pair of terms: `x^a + x^b = (1+x)P + (1+y)Q`.
fn staircase(a: Monomial, b: Monomial, vertical_first: bool, p: &mut Vec<Monomial>, q: &mut Vec<Monomial>) {
    if vertical_first {
        run(q, a.y, b.y, a.x, false);
        run(p, a.x, b.x, b.y, true);
    } else {
        run(p, a.x, b.x, a.y, true);
        run(q, a.y, b.y, b.x, false);
    }
}

/// Visits perfect matchings of `items` in a fixed order: the first unmatched
/// item is paired with each later one in turn.
fn for_each_matching<F>(items: &[Monomial], f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[(Monomial, Monomial)]) -> ControlFlow<()>,
{
    fn rec<F>(
        rest: &mut Vec<Monomial>,
        pairs: &mut Vec<(Monomial, Monomial)>,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[(Monomial, Monomial)]) -> ControlFlow<()>,
    {
        if rest.is_empty() {
            return f(pairs);
        }
        let first = rest.remove(0);
        for k in 0..rest.len() {
            let partner = rest.remove(k);
            pairs.push((first, partner));
            let flow = rec(rest, pairs, f);
            pairs.pop();
            rest.insert(k, partner);
            if flow.is_break() {
                rest.insert(0, first);
                return flow;
            }
        }
        rest.insert(0, first);
        ControlFlow::Continue(())
    }
    rec(&mut items.to_vec(), &mut Vec::new(), f)
}

/// Visits candidate decompositions (matching, then route orientation per
/// pair, then shifts of the first candidate), stopping after `cap`
/// candidates or when `visit` breaks.
fn search<F>(rule: &HocaRule, cap: usize, mut visit: F) -> Result<usize, PauliError>
where
    F: FnMut(Decomposition) -> ControlFlow<()>,
{
    let f = rule.poly();
    if f.len() % 2 == 1 {
        return Err(PauliError::OddTermCount(f.to_string()));
    }
    let mut tried = 0usize;
    let mut first: Option<Decomposition> = None;
    let mut stopped = false;
    let _ = for_each_matching(f.terms(), &mut |pairs| {
        let routes = if pairs.len() >= usize::BITS as usize {
            usize::MAX
        } else {
            1usize << pairs.len()
        };
        for mask in 0..routes {
            if tried >= cap {
                return ControlFlow::Break(());
            }
            tried += 1;
            let (mut p, mut q) = (Vec::new(), Vec::new());
            for (k, &(a, b)) in pairs.iter().enumerate() {
                staircase(a, b, (mask >> k) & 1 == 1, &mut p, &mut q);
            }
            let d = Decomposition {
                p: LaurentPoly::from_terms(p),
                q: LaurentPoly::from_terms(q),
            };
            if first.is_none() {
                first = Some(d.clone());
            }
            if visit(d).is_break() {
                stopped = true;
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    if stopped || tried >= cap {
        return Ok(tried);
    }
    // Every solution is `(P + (1+y)h, Q + (1+x)h)` for one base solution;
    // try monomial and binomial `h` near the support.
    let Some(base) = first else { return Ok(tried) };
    let (x0, y0, x1, y1) = f.bounding_box().expect("rule is nonzero");
    let cells: Vec<Monomial> = (y0 - 1..=y1 + 1)
        .flat_map(|j| (x0 - 1..=x1 + 1).map(move |i| Monomial::new(i, j)))
        .collect();
    let shifts = cells
        .iter()
        .map(|&a| LaurentPoly::from_terms([a]))
        .chain(cells.iter().enumerate().flat_map(|(k, &a)| {
            cells[k + 1..].iter().map(move |&b| LaurentPoly::from_terms([a, b]))
        }));
    let (one_x, one_y) = (
        LaurentPoly::from_terms([(0, 0), (1, 0)]),
        LaurentPoly::from_terms([(0, 0), (0, 1)]),
    );
    for h in shifts {
        if tried >= cap {
            break;
        }
        tried += 1;
        let d = Decomposition {
            p: &base.p + &(&one_y * &h),
            q: &base.q + &(&one_x * &h),
        };
        if visit(d).is_break() {
            break;
        }
    }
    Ok(tried)
}

/// First decomposition, in the deterministic search order, with `gcd(P, Q) = 1`.
pub fn decompose_pq(rule: &HocaRule) -> Result<Decomposition, PauliError> {
    decompose_pq_capped(rule, DEFAULT_PAIRING_CAP)
}

pub fn decompose_pq_capped(rule: &HocaRule, cap: usize) -> Result<Decomposition, PauliError> {
    let mut found = None;
    let tried = search(rule, cap, |d| {
        if d.coprime() {
            found = Some(d);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    found.ok_or(PauliError::SearchExhausted { tried })
}

/// Up to `limit` distinct valid decompositions.
pub fn decompositions(rule: &HocaRule, limit: usize, cap: usize) -> Result<Vec<Decomposition>, PauliError> {
    let mut out: Vec<Decomposition> = Vec::new();
    search(rule, cap, |d| {
        if d.coprime() && !out.contains(&d) {
            out.push(d);
        }
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// A CZ from the vertex qubit of every cell to one edge qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CzGate {
    /// 2 (horizontal edge) or 3 (vertical edge).
    pub target_sublattice: u8,
    pub dx: i32,
    pub dy: i32,
}

/// One vertex's gate template; the circuit is its translate at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CzCircuit {
    pub gates: Vec<CzGate>,
}

/// Gate targets for `P` sit on horizontal edges and those for `Q` on vertical
/// edges; both are offset one row up from the monomial (`j -> j - 1`), which is
/// the placement under which conjugating the toric code yields the stabilizers
/// of [`build_stabilizers`].
pub fn synthesize_circuit(p: &LaurentPoly, q: &LaurentPoly) -> CzCircuit {
    let mut gates: Vec<CzGate> = p
        .terms()
        .iter()
        .map(|t| CzGate {
            target_sublattice: 2,
            dx: t.x,
            dy: t.y - 1,
        })
        .chain(q.terms().iter().map(|t| CzGate {
            target_sublattice: 3,
            dx: t.x,
            dy: t.y - 1,
        }))
        .collect();
    gates.sort_unstable();
    CzCircuit { gates }
}

impl CzCircuit {
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Conjugates a Pauli operator by the tiled circuit. Each gate maps
    /// `X_control -> X_control Z_target` and `X_target -> X_target Z_control`.
    pub fn conjugate(&self, op: &PauliVector) -> PauliVector {
        let mut out = op.clone();
        for g in &self.gates {
            let s = g.target_sublattice as usize - 1;
            let offset = Monomial::new(g.dx, g.dy);
            out.z[s] += &op.x[0].shifted(offset);
            out.z[0] += &op.x[s].shifted(offset.inverse());
        }
        out
    }
}

/// The commuting generators of the HOCA-enriched model, plus the symmetric block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerSet {
    pub a: PauliVector,
    pub b: PauliVector,
    pub c: PauliVector,
    pub d: PauliVector,
    pub rule: HocaRule,
    pub p: LaurentPoly,
    pub q: LaurentPoly,
}

fn poly(terms: &[(i32, i32)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

/// Plaquette term; independent of the rule.
pub fn plaquette() -> PauliVector {
    PauliVector::new(
        Default::default(),
        [LaurentPoly::zero(), poly(&[(0, 0), (0, 1)]), poly(&[(0, 0), (1, 0)])],
    )
}

/// Toric-code vertex term `(0, 1 + 1/x, 1 + 1/y | 0, 0, 0)`.
pub fn bare_vertex() -> PauliVector {
    PauliVector::new(
        [LaurentPoly::zero(), poly(&[(0, 0), (-1, 0)]), poly(&[(0, 0), (0, -1)])],
        Default::default(),
    )
}

/// Transverse field `X` on the vertex qubit.
pub fn vertex_field() -> PauliVector {
    PauliVector::new(
        [LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::zero()],
        Default::default(),
    )
}

pub fn build_stabilizers(rule: &HocaRule) -> Result<StabilizerSet, PauliError> {
    let Decomposition { p, q } = decompose_pq(rule)?;
    Ok(stabilizers_from(rule, p, q))
}

/// Stabilizers for an explicit decomposition (which must satisfy the identity).
pub fn stabilizers_from(rule: &HocaRule, p: LaurentPoly, q: LaurentPoly) -> StabilizerSet {
    let f = rule.poly();
    let up = Monomial::new(0, -1);
    let mut a = bare_vertex();
    a.z[0] = f.antipode().shifted(Monomial::new(0, 1));
    let mut c = vertex_field();
    c.z[1] = p.shifted(up);
    c.z[2] = q.shifted(up);
    let d = PauliVector::new(
        [LaurentPoly::zero(), q.antipode(), p.antipode()],
        Default::default(),
    );
    StabilizerSet {
        a,
        b: plaquette(),
        c,
        d,
        rule: rule.clone(),
        p,
        q,
    }
}

/// Violation patterns of `A`, `B`, `C`; coefficient positions are reference
/// vertices of the violated terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Excitation {
    pub e: LaurentPoly,
    pub m: LaurentPoly,
    pub c: LaurentPoly,
}

pub fn excitation_map(stabs: &StabilizerSet, op: &PauliVector) -> Excitation {
    Excitation {
        e: symplectic(&stabs.a, op),
        m: symplectic(&stabs.b, op),
        c: symplectic(&stabs.c, op),
    }
}

/// `(F, 0, 0 | 0, 0, 0)` for the depth-`depth` history from `w`.
pub fn symmetry_operator(
    rule: &HocaRule,
    w: &InitialCondition,
    depth: usize,
) -> Result<PauliVector, PauliError> {
    let history = evolve(rule, w, depth)?;
    Ok(PauliVector::new(
        [pattern_poly(&history), LaurentPoly::zero(), LaurentPoly::zero()],
        Default::default(),
    ))
}
