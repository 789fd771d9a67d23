//! GCD in F2[x, y, 1/x, 1/y] via F2[x][y].
//!
//! Both inputs are shifted to ordinary polynomials by `canonicalize`, split into
//! content (gcd of the `y`-coefficients in F2[x]) and primitive part, and the
//! primitive parts are reduced by a primitive pseudo-remainder sequence in `y`.

use super::{Gf2Poly, LaurentPoly, Monomial, PolyError};

/// Polynomial in `y` with coefficients in F2[x]; index = power of `y`.
type XyPoly = Vec<Gf2Poly>;

fn to_xy(p: &LaurentPoly) -> XyPoly {
    let (_, _, _, max_y) = p.bounding_box().expect("nonzero");
    let mut out = vec![Gf2Poly::zero(); max_y as usize + 1];
    for t in p.terms() {
        debug_assert!(t.x >= 0 && t.y >= 0);
        out[t.y as usize].flip(t.x as usize);
    }
    out
}

fn from_xy(p: &XyPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.iter()
            .enumerate()
            .flat_map(|(j, c)| c.exponents().map(move |i| Monomial::new(i as i32, j as i32))),
    )
}

fn trim(p: &mut XyPoly) {
    while p.last().is_some_and(Gf2Poly::is_zero) {
        p.pop();
    }
}

fn degree(p: &XyPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

fn content(p: &XyPoly) -> Gf2Poly {
    p.iter().fold(Gf2Poly::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part(p: &XyPoly) -> XyPoly {
    let c = content(p);
    if c.is_one() {
        return p.clone();
    }
    p.iter().map(|coef| coef.div_rem(&c).0).collect()
}

/// Pseudo-remainder of `a` by `b` in `y`, up to a power of `lc(b)`.
fn pseudo_rem(a: &XyPoly, b: &XyPoly) -> XyPoly {
    let n = degree(b).expect("nonzero divisor");
    let lc = b[n].clone();
    let mut r = a.clone();
    while let Some(d) = degree(&r) {
        if d < n {
            break;
        }
        let lr = r[d].clone();
        // r <- lc * r - lr * y^(d-n) * b
        for coef in r.iter_mut() {
            *coef = coef.mul(&lc);
        }
        for (k, bk) in b.iter().enumerate() {
            let t = lr.mul(bk);
            r[k + d - n] = r[k + d - n].add(&t);
        }
        debug_assert!(r[d].is_zero());
        trim(&mut r);
    }
    r
}

fn primitive_gcd(a: XyPoly, b: XyPoly) -> XyPoly {
    let (mut a, mut b) = if degree(&a) >= degree(&b) { (a, b) } else { (b, a) };
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive_part(&r) };
    }
    a
}

pub(super) fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(PolyError::Zero("gcd")),
        (false, true) => return a.canonicalize(),
        (true, false) => return b.canonicalize(),
        _ => {}
    }
    let pa = to_xy(&a.canonicalize()?);
    let pb = to_xy(&b.canonicalize()?);
    let c = content(&pa).gcd(&content(&pb));
    let g = primitive_gcd(primitive_part(&pa), primitive_part(&pb));
    let g: XyPoly = g.iter().map(|coef| coef.mul(&c)).collect();
    from_xy(&g).canonicalize()
}
