//! Brute-force verifiers built on finite linear algebra over F2.
//!
//! Nothing here uses the Newton-polygon classifier; these are the references the
//! classifier and fusion engine are tested against.

mod linalg;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

pub use linalg::LinearSystemF2;

use crate::hoca::{evolve, pattern_poly, HocaError, HocaRule, InitialCondition};
use crate::pauli::{
    bare_vertex, build_stabilizers, plaquette, symplectic, vertex_field, PauliError, PauliVector,
};
use crate::polyring::{LaurentPoly, Monomial, PolyError};

/// Largest bounding box (in lattice points) searched by [`divisors_bruteforce`].
pub const MAX_DIVISOR_BOX: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("window {got} is below the margin {needed} for these supports")]
    WindowMargin { needed: i32, got: i32 },
    #[error("the excitation pattern is zero")]
    Vacuum,
    #[error("bounding box has {points} points, over the cap of {cap}")]
    CapExceeded { points: usize, cap: usize },
    #[error("torus size {l} is below the admissible minimum {min}")]
    TorusTooSmall { l: i32, min: i32 },
    #[error("stabilizers do not commute on the {l}x{l} torus")]
    NonAbelian { l: i32 },
    #[error("ground-state degeneracy 2^{0} does not fit in 64 bits")]
    GsdTooLarge(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Hoca(#[from] HocaError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Smallest window accepted by [`mobility_bruteforce`] for shift bound `s`.
pub fn window_margin(f: &LaurentPoly, m: &LaurentPoly, s: i32) -> i32 {
    s + f.diameter() + m.diameter() + 2
}

fn unit_of(p: &LaurentPoly) -> Monomial {
    let (x0, y0, _, _) = p.bounding_box().expect("nonzero");
    Monomial::new(x0, y0)
}

/// Solves `d * f = (1 + x^i y^j) * m` with `d` supported in `[-w, w]^2`
/// (after moving `f` and `m` to the first quadrant), one right-hand side per
/// shift. Witnesses are returned in the original frame and re-checked.
pub fn solve_shifts(
    f: &LaurentPoly,
    m: &LaurentPoly,
    shifts: &[(i32, i32)],
    w: i32,
) -> Result<Vec<Option<LaurentPoly>>, OracleError> {
    if m.is_zero() {
        return Err(OracleError::Vacuum);
    }
    let (uf, um) = (unit_of(f), unit_of(m));
    let fc = f.shifted(uf.inverse());
    let mc = m.shifted(um.inverse());
    let (_, _, fw, fh) = fc.bounding_box().expect("nonzero");

    let side = 2 * w + 1;
    let (ex, ey) = (side + fw, side + fh);
    let var = |x: i32, y: i32| ((y + w) * side + (x + w)) as usize;
    let eq = |x: i32, y: i32| -> Option<usize> {
        let (a, b) = (x + w, y + w);
        (a >= 0 && b >= 0 && a < ex && b < ey).then(|| (b * ex + a) as usize)
    };

    let mut sys = LinearSystemF2::new((ex * ey) as usize, (side * side) as usize, shifts.len());
    for dy in -w..=w {
        for dx in -w..=w {
            for t in fc.terms() {
                let e = eq(dx + t.x, dy + t.y).expect("product stays in range");
                sys.flip_coeff(e, var(dx, dy));
            }
        }
    }
    let mut rhs_fits = vec![true; shifts.len()];
    for (k, &(i, j)) in shifts.iter().enumerate() {
        let target = &mc + &mc.shifted(Monomial::new(i, j));
        for t in target.terms() {
            match eq(t.x, t.y) {
                Some(e) => sys.flip_rhs(e, k),
                None => rhs_fits[k] = false,
            }
        }
    }

    let back = um.times(uf.inverse());
    let solutions = sys.solve();
    Ok(shifts
        .iter()
        .zip(solutions)
        .zip(rhs_fits)
        .map(|((&(i, j), sol), fits)| {
            let bits = sol.filter(|_| fits)?;
            let d = LaurentPoly::from_terms(
                bits.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(k, _)| {
                        let k = k as i32;
                        (k % side - w, k / side - w)
                    }),
            )
            .shifted(back);
            let target = m + &m.shifted(Monomial::new(i, j));
            assert_eq!(&d * f, target, "solver returned an invalid witness");
            Some(d)
        })
        .collect())
}

/// A `d` with `d * f = (1 + x^i y^j) * m` up to a monomial, searched in a
/// `[-w, w]^2` window. `None` means no witness inside the window.
pub fn string_operator_exists(
    rule: &HocaRule,
    m: &LaurentPoly,
    shift: (i32, i32),
    w: i32,
) -> Result<Option<LaurentPoly>, OracleError> {
    let w = w.max(1);
    Ok(solve_shifts(rule.poly(), m, &[shift], w)?.remove(0))
}

/// All shifts with `|i|, |j| <= s` that admit a witness in the window.
pub fn mobility_bruteforce(
    rule: &HocaRule,
    m: &LaurentPoly,
    s: i32,
    w: i32,
) -> Result<BTreeSet<(i32, i32)>, OracleError> {
    mobility_bruteforce_poly(rule.poly(), m, s, w)
}

pub fn mobility_bruteforce_poly(
    f: &LaurentPoly,
    m: &LaurentPoly,
    s: i32,
    w: i32,
) -> Result<BTreeSet<(i32, i32)>, OracleError> {
    if m.is_zero() {
        return Err(OracleError::Vacuum);
    }
    let needed = window_margin(f, m, s);
    if w < needed {
        return Err(OracleError::WindowMargin { needed, got: w });
    }
    let shifts: Vec<(i32, i32)> = (-s..=s).flat_map(|i| (-s..=s).map(move |j| (i, j))).collect();
    let sols = solve_shifts(f, m, &shifts, w)?;
    Ok(shifts
        .into_iter()
        .zip(sols)
        .filter_map(|(sh, d)| d.map(|_| sh))
        .collect())
}

/// Canonical polynomials whose support lies in `[0, w] x [0, h]`.
fn canonical_candidates(
    w: i32,
    h: i32,
    cap: usize,
) -> Result<impl Iterator<Item = LaurentPoly>, OracleError> {
    let cells: Vec<(i32, i32)> = (0..=h).flat_map(|y| (0..=w).map(move |x| (x, y))).collect();
    let limit = cap.min(MAX_DIVISOR_BOX);
    if cells.len() > limit {
        return Err(OracleError::CapExceeded {
            points: cells.len(),
            cap: limit,
        });
    }
    Ok((1u32..1 << cells.len()).filter_map(move |mask| {
        let p = LaurentPoly::from_terms(
            cells
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &c)| c),
        );
        let (x0, y0, _, _) = p.bounding_box()?;
        (x0 == 0 && y0 == 0).then_some(p)
    }))
}

/// Every canonical divisor of `p`, by exhaustive search over the bounding box.
/// `box_cap` limits the number of box points (never more than
/// [`MAX_DIVISOR_BOX`]).
pub fn divisors_bruteforce(p: &LaurentPoly, box_cap: usize) -> Result<Vec<LaurentPoly>, OracleError> {
    let pc = p.canonicalize()?;
    let (_, _, w, h) = pc.bounding_box().expect("nonzero");
    Ok(canonical_candidates(w, h, box_cap)?
        .filter(|d| d.divides(&pc))
        .collect())
}

/// Canonical common divisors of `a` and `b`.
pub fn common_divisors(a: &LaurentPoly, b: &LaurentPoly, box_cap: usize) -> Result<Vec<LaurentPoly>, OracleError> {
    let (ac, bc) = (a.canonicalize()?, b.canonicalize()?);
    let (_, _, aw, ah) = ac.bounding_box().expect("nonzero");
    let (_, _, bw, bh) = bc.bounding_box().expect("nonzero");
    Ok(canonical_candidates(aw.min(bw), ah.min(bh), box_cap)?
        .filter(|d| d.divides(&ac) && d.divides(&bc))
        .collect())
}

/// The common divisor that every other common divisor divides.
pub fn gcd_bruteforce(a: &LaurentPoly, b: &LaurentPoly, box_cap: usize) -> Result<LaurentPoly, OracleError> {
    let all = common_divisors(a, b, box_cap)?;
    Ok(all
        .iter()
        .find(|g| all.iter().all(|d| d.divides(g)))
        .expect("1 is a common divisor and the gcd is unique")
        .clone())
}

/// Stabilizer group of the model on an `L x L` torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusCode {
    #[serde(rename = "L")]
    pub l: i32,
    pub qubits: usize,
    pub rank: usize,
    pub gsd_log2: usize,
    #[serde(skip)]
    pub generators: usize,
}

impl TorusCode {
    pub fn gsd(&self) -> Result<u64, OracleError> {
        1u64.checked_shl(self.gsd_log2 as u32)
            .filter(|_| self.gsd_log2 < 64)
            .ok_or(OracleError::GsdTooLarge(self.gsd_log2))
    }
}

/// `2 * max(radius, order) + 1`.
pub fn min_torus_size(rule: &HocaRule) -> i32 {
    2 * (rule.radius() as i32).max(rule.order() as i32) + 1
}

/// Builds the torus code for any list of translation-invariant generators.
pub fn torus_code_from(generators: &[PauliVector], l: i32) -> Result<TorusCode, OracleError> {
    for g in generators {
        for h in generators {
            if !symplectic(g, h).reduce_torus(l).is_zero() {
                return Err(OracleError::NonAbelian { l });
            }
        }
    }
    let cells = (l * l) as usize;
    let columns = 6 * cells;
    let words = columns.div_ceil(64);
    let mut rows = Vec::with_capacity(generators.len() * cells);
    for g in generators {
        for b in 0..l {
            for a in 0..l {
                let mut row = vec![0u64; words];
                for (block, poly) in g.entries().enumerate() {
                    for t in poly.terms() {
                        let x = (t.x + a).rem_euclid(l);
                        let y = (t.y + b).rem_euclid(l);
                        let c = block * cells + (y * l + x) as usize;
                        row[c / 64] ^= 1 << (c % 64);
                    }
                }
                rows.push(row);
            }
        }
    }
    let generators = rows.len();
    let rank = linalg::rank_of_rows(rows, columns);
    Ok(TorusCode {
        l,
        qubits: 3 * cells,
        rank,
        gsd_log2: 3 * cells - rank,
        generators,
    })
}

pub fn torus_code(rule: &HocaRule, l: i32) -> Result<TorusCode, OracleError> {
    let min = min_torus_size(rule);
    if l < min {
        return Err(OracleError::TorusTooSmall { l, min });
    }
    let s = build_stabilizers(rule)?;
    torus_code_from(&[s.a, s.b, s.c], l)
}

/// The toric code with decoupled vertex qubits.
pub fn bare_torus_code(l: i32) -> Result<TorusCode, OracleError> {
    if l < 2 {
        return Err(OracleError::TorusTooSmall { l, min: 2 });
    }
    torus_code_from(&[bare_vertex(), plaquette(), vertex_field()], l)
}

pub fn gsd(rule: &HocaRule, l: i32) -> Result<u64, OracleError> {
    torus_code(rule, l)?.gsd()
}

fn in_slab(op: &PauliVector, t: Monomial, x: i32, depth: i32) -> bool {
    op.entries().flat_map(|p| p.terms()).all(|c| {
        let c = c.times(t);
        (-x..=x).contains(&c.x) && (0..depth).contains(&c.y)
    })
}

/// Whether the X-pattern `pattern` (truncated to `[-x, x] x [0, depth)`)
/// commutes with every stabilizer translate supported inside that slab.
pub fn verify_pattern_slab(rule: &HocaRule, pattern: &LaurentPoly, depth: usize, x: i32) -> bool {
    let depth = depth as i32;
    let truncated = pattern.filtered(|t| (-x..=x).contains(&t.x) && (0..depth).contains(&t.y));
    let op = PauliVector::new(
        [truncated, LaurentPoly::zero(), LaurentPoly::zero()],
        Default::default(),
    );
    let mut gens = vec![plaquette()];
    match build_stabilizers(rule) {
        Ok(s) => gens.extend([s.a, s.c]),
        Err(_) => {
            // odd rules have no circuit; the vertex term alone still applies
            let mut a = bare_vertex();
            a.z[0] = rule.poly().antipode().shifted(Monomial::new(0, 1));
            gens.push(a);
        }
    }
    gens.iter().all(|g| {
        symplectic(g, &op)
            .terms()
            .iter()
            .all(|&t| !in_slab(g, t, x, depth))
    })
}

/// Evolves `w` to depth `depth` and checks the resulting symmetry operator.
pub fn verify_symmetry_slab(
    rule: &HocaRule,
    w: &InitialCondition,
    depth: usize,
    x: i32,
) -> Result<bool, OracleError> {
    let history = evolve(rule, w, depth)?;
    Ok(verify_pattern_slab(rule, &pattern_poly(&history), depth, x))
}
