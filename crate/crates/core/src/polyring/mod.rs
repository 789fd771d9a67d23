//! Bivariate Laurent polynomials over F2.
//!
//! A [`LaurentPoly`] is a finite set of exponent pairs: coefficients are 0 or 1,
//! so the support *is* the polynomial. Terms are stored sorted by `(y, x)`,
//! which is also the rendering order.

mod gcd;
pub mod gf2x;
mod newton;
mod parse;

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gf2x::Gf2Poly;
pub use newton::{CollinearProfile, NewtonPolygon, PrimitiveDirection};
pub use parse::parse;

/// Largest exponent magnitude accepted from text input.
pub const MAX_EXPONENT: i64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("exponent out of range at byte {offset} (|e| must be <= 2^30)")]
    ExponentOverflow { offset: usize },
    #[error("{0} is undefined for the zero polynomial")]
    Zero(&'static str),
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },
    #[error("support of {0} is two-dimensional")]
    TwoDimensional(String),
}

/// An exponent pair `x^x y^y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub x: i32,
    pub y: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    /// Product of monomials. Panics on `i32` exponent overflow.
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial {
            x: self.x.checked_add(other.x).expect("exponent overflow"),
            y: self.y.checked_add(other.y).expect("exponent overflow"),
        }
    }

    pub fn inverse(self) -> Monomial {
        Monomial {
            x: self.x.checked_neg().expect("exponent overflow"),
            y: self.y.checked_neg().expect("exponent overflow"),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl From<(i32, i32)> for Monomial {
    fn from((x, y): (i32, i32)) -> Self {
        Monomial { x, y }
    }
}

/// Element of F2[x, y, 1/x, 1/y].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<Monomial>,
}

/// Sorts and cancels pairs of equal monomials.
fn reduce_mod2(mut terms: Vec<Monomial>) -> Vec<Monomial> {
    terms.sort_unstable();
    let mut out = Vec::with_capacity(terms.len());
    let mut i = 0;
    while i < terms.len() {
        let mut j = i + 1;
        while j < terms.len() && terms[j] == terms[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(terms[i]);
        }
        i = j;
    }
    out
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn monomial(x: i32, y: i32) -> Self {
        Self {
            terms: vec![Monomial { x, y }],
        }
    }

    /// Builds a polynomial from exponent pairs; repeated pairs cancel mod 2.
    pub fn from_terms<I, M>(terms: I) -> Self
    where
        I: IntoIterator<Item = M>,
        M: Into<Monomial>,
    {
        Self {
            terms: reduce_mod2(terms.into_iter().map(Into::into).collect()),
        }
    }

    /// Univariate polynomial in `x` from a list of exponents.
    pub fn from_x_exponents<I: IntoIterator<Item = i32>>(exps: I) -> Self {
        Self::from_terms(exps.into_iter().map(|e| (e, 0)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [Monomial::ONE]
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in `(y, x)` order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.terms.binary_search(&m).is_ok()
    }

    /// Toggles a single coefficient.
    pub fn flip(&mut self, m: Monomial) {
        match self.terms.binary_search(&m) {
            Ok(i) => {
                self.terms.remove(i);
            }
            Err(i) => self.terms.insert(i, m),
        }
    }

    /// `(min_x, min_y, max_x, max_y)`, or `None` for zero.
    pub fn bounding_box(&self) -> Option<(i32, i32, i32, i32)> {
        let first = self.terms.first()?;
        let mut bb = (first.x, first.y, first.x, first.y);
        for t in &self.terms {
            bb.0 = bb.0.min(t.x);
            bb.1 = bb.1.min(t.y);
            bb.2 = bb.2.max(t.x);
            bb.3 = bb.3.max(t.y);
        }
        Some(bb)
    }

    /// Largest coordinate spread of the support (0 for zero and monomials).
    pub fn diameter(&self) -> i32 {
        self.bounding_box()
            .map_or(0, |(x0, y0, x1, y1)| (x1 - x0).max(y1 - y0))
    }

    /// Multiplication by the monomial `x^dx y^dy`.
    pub fn shifted(&self, by: Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|&t| t.times(by)).collect(),
        }
    }

    /// `p(1/x, 1/y)`.
    pub fn antipode(&self) -> Self {
        let mut terms: Vec<Monomial> = self.terms.iter().map(|t| t.inverse()).collect();
        terms.sort_unstable();
        Self { terms }
    }

    /// Restricts the support to the terms satisfying `keep`.
    pub fn filtered<F: Fn(Monomial) -> bool>(&self, keep: F) -> Self {
        Self {
            terms: self.terms.iter().copied().filter(|&t| keep(t)).collect(),
        }
    }

    /// Monomial `u` with `self * u` having minimum x and y exponents equal to zero.
    fn canonical_unit(&self) -> Option<Monomial> {
        let (x0, y0, _, _) = self.bounding_box()?;
        Some(Monomial::new(x0, y0).inverse())
    }

    /// The representative of `self` up to monomial units whose support touches
    /// both axes from above.
    pub fn canonicalize(&self) -> Result<Self, PolyError> {
        let unit = self.canonical_unit().ok_or(PolyError::Zero("canonicalize"))?;
        Ok(self.shifted(unit))
    }

    /// True if `self` is a monomial multiple of `other`.
    pub fn associate_of(&self, other: &LaurentPoly) -> bool {
        match (self.canonicalize(), other.canonicalize()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for &a in &self.terms {
            for &b in &other.terms {
                terms.push(a.times(b));
            }
        }
        Self {
            terms: reduce_mod2(terms),
        }
    }

    fn sum(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { terms: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Whether `self` divides `other` in the Laurent ring.
    ///
    /// Panics if `self` is zero.
    pub fn divides(&self, other: &Self) -> bool {
        assert!(!self.is_zero(), "divides: zero divisor");
        self.try_quotient(other).is_some()
    }

    /// The Laurent quotient `other / self`, if it exists.
    fn try_quotient(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return Some(Self::zero());
        }
        let ua = self.canonical_unit()?;
        let ub = other.canonical_unit()?;
        let a = self.shifted(ua);
        let mut r = other.shifted(ub);
        // Leading-term division in F2[x, y] under the (y, x) lexicographic order.
        let lead = *a.terms.last()?;
        let mut q = Vec::new();
        while let Some(&lt) = r.terms.last() {
            let m = Monomial::new(lt.x - lead.x, lt.y - lead.y);
            if m.x < 0 || m.y < 0 {
                return None;
            }
            q.push(m);
            r = r.sum(&a.shifted(m));
        }
        let q = Self::from_terms(q);
        // other = x^{-ub} a' q = self * x^{ua - ub} q
        Some(q.shifted(ua.times(ub.inverse())))
    }

    /// Exact quotient `self / divisor`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::Zero("division"));
        }
        divisor
            .try_quotient(self)
            .ok_or_else(|| PolyError::NotDivisible {
                divisor: divisor.to_string(),
                dividend: self.to_string(),
            })
    }

    /// Canonical greatest common divisor. `gcd(a, 0) = canonicalize(a)`.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        gcd::gcd(self, other)
    }

    pub fn newton(&self) -> Result<NewtonPolygon, PolyError> {
        NewtonPolygon::of(self)
    }

    pub fn collinear_profile(&self) -> Result<CollinearProfile, PolyError> {
        newton::collinear_profile(self)
    }

    /// Reduces exponents modulo `L` on both axes (the torus quotient
    /// `x^L = y^L = 1`); colliding terms cancel.
    pub fn reduce_torus(&self, l: i32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| (t.x.rem_euclid(l), t.y.rem_euclid(l))),
        )
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.sum(rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.sum(&rhs)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.sum(rhs);
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.product(rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.product(&rhs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::with_capacity(2);
            for (var, e) in [('x', t.x), ('y', t.y)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            if factors.is_empty() {
                f.write_str("1")?;
            } else {
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}
