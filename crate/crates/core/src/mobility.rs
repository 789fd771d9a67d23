//! Mobility of `m`-type excitation patterns.
//!
//! A pattern `m` can be moved by `x^i y^j` exactly when
//! `g = f / gcd(f, m)` divides `1 + x^i y^j`. The Newton polygon of `g` decides
//! the class: a point is fully mobile, a segment is a lineon, anything else is
//! a fracton.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::hoca::HocaRule;
use crate::polyring::{LaurentPoly, PolyError, PrimitiveDirection};

/// Largest LFSR length accepted by [`period`].
pub const MAX_PERIOD_DEGREE: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MobilityError {
    #[error("the vacuum pattern m = 0 has no characteristic polynomial")]
    Vacuum,
    #[error("coefficient list must start with 1")]
    NotReversible,
    #[error("period search for degree {0} exceeds the degree limit {MAX_PERIOD_DEGREE}")]
    PeriodTooLarge(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum MobilityClass {
    #[serde(rename = "fully_mobile")]
    FullyMobile,
    Lineon {
        #[serde(serialize_with = "serialize_axis")]
        axis: PrimitiveDirection,
        period: u32,
    },
    Fracton,
}

fn serialize_axis<S: serde::Serializer>(d: &PrimitiveDirection, s: S) -> Result<S::Ok, S::Error> {
    d.axis().serialize(s)
}

impl MobilityClass {
    pub fn lineon(u: i32, v: i32, period: u32) -> Self {
        MobilityClass::Lineon {
            axis: PrimitiveDirection::new(u, v).expect("nonzero axis"),
            period,
        }
    }

    pub fn is_lineon(&self) -> bool {
        matches!(self, MobilityClass::Lineon { .. })
    }

    /// Short label: `alpha`, `beta(u,v;T)` or `gamma`.
    pub fn label(&self) -> String {
        match self {
            MobilityClass::FullyMobile => "alpha".into(),
            MobilityClass::Lineon { axis, period } => {
                let [u, v] = axis.axis();
                format!("beta({u},{v};{period})")
            }
            MobilityClass::Fracton => "gamma".into(),
        }
    }
}

impl std::fmt::Display for MobilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MobilityClass::FullyMobile => write!(f, "fully mobile"),
            MobilityClass::Lineon { axis, period } => {
                let [u, v] = axis.axis();
                write!(f, "lineon along ({u}, {v}) with period {period}")
            }
            MobilityClass::Fracton => write!(f, "fracton"),
        }
    }
}

/// The set of allowed moves, written symbolically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MobilityPolynomial {
    /// `1`: no moves.
    One,
    /// `sum_k (x^u y^v)^(kT)` over all integers `k`.
    LineSum {
        #[serde(serialize_with = "serialize_axis")]
        axis: PrimitiveDirection,
        period: u32,
    },
    /// `sum_(i,j) x^i y^j`.
    FullPlane,
}

impl MobilityPolynomial {
    pub fn of(class: &MobilityClass) -> Self {
        match *class {
            MobilityClass::FullyMobile => MobilityPolynomial::FullPlane,
            MobilityClass::Lineon { axis, period } => MobilityPolynomial::LineSum { axis, period },
            MobilityClass::Fracton => MobilityPolynomial::One,
        }
    }

    pub fn contains(&self, i: i32, j: i32) -> bool {
        match *self {
            MobilityPolynomial::One => i == 0 && j == 0,
            MobilityPolynomial::FullPlane => true,
            MobilityPolynomial::LineSum { axis, period } => {
                if !axis.is_parallel(i, j) {
                    return false;
                }
                let k = if axis.u() != 0 { i / axis.u() } else { j / axis.v() };
                k % period as i32 == 0
            }
        }
    }

    /// Moves with `|i|, |j| <= s`.
    pub fn truncate(&self, s: i32) -> BTreeSet<(i32, i32)> {
        (-s..=s)
            .flat_map(|i| (-s..=s).map(move |j| (i, j)))
            .filter(|&(i, j)| self.contains(i, j))
            .collect()
    }
}

/// `canonicalize(f / gcd(f, m))`.
pub fn characteristic_poly(f: &LaurentPoly, m: &LaurentPoly) -> Result<LaurentPoly, MobilityError> {
    if m.is_zero() {
        return Err(MobilityError::Vacuum);
    }
    let g = f.gcd(m)?;
    Ok(f.div_exact(&g)?.canonicalize()?)
}

/// Minimal `T >= 1` with `t(q) | 1 + q^T`: the cycle length of the LFSR
/// `b_k = sum_(i >= 1) t_i b_(k-i)`.
pub fn period(t: &[bool]) -> Result<u32, MobilityError> {
    if t.first() != Some(&true) {
        return Err(MobilityError::NotReversible);
    }
    let n = t.iter().rposition(|&c| c).expect("t_0 = 1");
    if n == 0 {
        return Ok(1);
    }
    if n > MAX_PERIOD_DEGREE {
        return Err(MobilityError::PeriodTooLarge(n));
    }
    let modulus: u64 = t[..=n]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .fold(0, |acc, (k, _)| acc | 1 << k);
    // powers of q reduced mod t; q is a unit because t_0 = 1
    let mut r: u64 = 1;
    let mut steps: u32 = 0;
    loop {
        r <<= 1;
        if r >> n & 1 == 1 {
            r ^= modulus;
        }
        steps += 1;
        if r == 1 {
            return Ok(steps);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: MobilityClass,
    pub polynomial: MobilityPolynomial,
    /// Canonical characteristic polynomial; `None` for the vacuum.
    pub g: Option<LaurentPoly>,
    pub vacuum: bool,
}

/// Classifies `m` against any nonzero `f`. The vacuum is fully mobile.
pub fn classify_poly(f: &LaurentPoly, m: &LaurentPoly) -> Result<Classification, MobilityError> {
    if m.is_zero() {
        return Ok(Classification {
            class: MobilityClass::FullyMobile,
            polynomial: MobilityPolynomial::FullPlane,
            g: None,
            vacuum: true,
        });
    }
    let g = characteristic_poly(f, m)?;
    let hull = g.newton()?;
    let class = match hull.dim {
        0 => MobilityClass::FullyMobile,
        1 => {
            let profile = g.collinear_profile()?;
            MobilityClass::Lineon {
                axis: profile.direction,
                period: period(&profile.coeffs)?,
            }
        }
        _ => MobilityClass::Fracton,
    };
    Ok(Classification {
        polynomial: MobilityPolynomial::of(&class),
        class,
        g: Some(g),
        vacuum: false,
    })
}

pub fn classify(rule: &HocaRule, m: &LaurentPoly) -> Result<Classification, MobilityError> {
    classify_poly(rule.poly(), m)
}
