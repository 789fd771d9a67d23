//! Fusion channels of two excitation patterns and the rules they obey.
//!
//! Writing `alpha` for fully mobile, `beta(v, T)` for lineons and `gamma` for
//! fractons, the allowed outcomes are:
//!
//! ```text
//! alpha x X               = X
//! beta(v,T) x beta(v',T') = gamma                              if v != v'
//!                         = alpha + sum beta(v, S), S | lcm(T,T')   if v == v'
//! beta(v,T) x gamma       = sum beta(w, S), w != v, + gamma
//! gamma x gamma           = anything
//! ```

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exec::Execution;
use crate::hoca::HocaRule;
use crate::mobility::{classify_poly, MobilityClass, MobilityError};
use crate::polyring::{LaurentPoly, Monomial};

/// One observed outcome with every placement that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Channel {
    #[serde(flatten)]
    pub class: MobilityClass,
    pub witnesses: Vec<(i32, i32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionChannelSet {
    /// Sorted by class; vacuum placements are not included.
    pub channels: Vec<Channel>,
    /// Placements where `m1 + x^a y^b m2 = 0`.
    pub vacuum: Vec<(i32, i32)>,
    pub window: i32,
}

impl FusionChannelSet {
    pub fn includes_vacuum(&self) -> bool {
        !self.vacuum.is_empty()
    }

    pub fn classes(&self) -> impl Iterator<Item = &MobilityClass> {
        self.channels.iter().map(|c| &c.class)
    }

    pub fn get(&self, class: &MobilityClass) -> Option<&Channel> {
        self.channels.iter().find(|c| &c.class == class)
    }
}

fn x_width(p: &LaurentPoly) -> i32 {
    p.bounding_box().map_or(0, |(x0, _, x1, _)| x1 - x0)
}

fn y_width(p: &LaurentPoly) -> i32 {
    p.bounding_box().map_or(0, |(_, y0, _, y1)| y1 - y0)
}

/// `2 (dx + dy)` where `dx`, `dy` are the extents of `Newt(f) + Newt(m1) + Newt(m2)`.
pub fn default_window(f: &LaurentPoly, m1: &LaurentPoly, m2: &LaurentPoly) -> i32 {
    let polys = [f, m1, m2];
    let dx: i32 = polys.iter().map(|p| x_width(p)).sum();
    let dy: i32 = polys.iter().map(|p| y_width(p)).sum();
    (2 * (dx + dy)).max(1)
}

/// Classifies `m1 + x^a y^b m2` for every `(a, b)` in `[-w, w]^2`.
pub fn fuse(
    rule: &HocaRule,
    m1: &LaurentPoly,
    m2: &LaurentPoly,
    w: i32,
    exec: Execution,
) -> Result<FusionChannelSet, MobilityError> {
    fuse_poly(rule.poly(), m1, m2, w, exec)
}

pub fn fuse_poly(
    f: &LaurentPoly,
    m1: &LaurentPoly,
    m2: &LaurentPoly,
    w: i32,
    exec: Execution,
) -> Result<FusionChannelSet, MobilityError> {
    if m1.is_zero() || m2.is_zero() {
        return Err(MobilityError::Vacuum);
    }
    let placements: Vec<(i32, i32)> = (-w..=w).flat_map(|a| (-w..=w).map(move |b| (a, b))).collect();
    let results = exec.map(&placements, |&(a, b)| {
        let sum = m1 + &m2.shifted(Monomial::new(a, b));
        classify_poly(f, &sum)
    });
    let mut channels: BTreeMap<MobilityClass, Vec<(i32, i32)>> = BTreeMap::new();
    let mut vacuum = Vec::new();
    for (placement, result) in placements.into_iter().zip(results) {
        let c = result?;
        if c.vacuum {
            vacuum.push(placement);
        } else {
            channels.entry(c.class).or_default().push(placement);
        }
    }
    Ok(FusionChannelSet {
        channels: channels
            .into_iter()
            .map(|(class, witnesses)| Channel { class, witnesses })
            .collect(),
        vacuum,
        window: w,
    })
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// The outcomes allowed for `c1 x c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AllowedChannels {
    pub left: MobilityClass,
    pub right: MobilityClass,
}

pub fn allowed_channels(c1: MobilityClass, c2: MobilityClass) -> AllowedChannels {
    AllowedChannels { left: c1, right: c2 }
}

impl AllowedChannels {
    pub fn contains(&self, out: &MobilityClass) -> bool {
        use MobilityClass::*;
        match (self.left, self.right) {
            (FullyMobile, x) | (x, FullyMobile) => *out == x,
            (Lineon { axis: v1, period: t1 }, Lineon { axis: v2, period: t2 }) => {
                if v1 != v2 {
                    return *out == Fracton;
                }
                let lcm = t1 as u64 / gcd_u64(t1 as u64, t2 as u64) * t2 as u64;
                match *out {
                    FullyMobile => true,
                    Lineon { axis, period } => axis == v1 && lcm.is_multiple_of(period as u64),
                    Fracton => false,
                }
            }
            (Lineon { axis: v, .. }, Fracton) | (Fracton, Lineon { axis: v, .. }) => match *out {
                FullyMobile => false,
                Lineon { axis, .. } => axis != v,
                Fracton => true,
            },
            (Fracton, Fracton) => true,
        }
    }

    pub fn describe(&self) -> String {
        use MobilityClass::*;
        match (self.left, self.right) {
            (FullyMobile, x) | (x, FullyMobile) => x.label(),
            (Lineon { axis: v1, period: t1 }, Lineon { axis: v2, period: t2 }) => {
                if v1 != v2 {
                    "gamma".into()
                } else {
                    let lcm = t1 as u64 / gcd_u64(t1 as u64, t2 as u64) * t2 as u64;
                    let [u, v] = v1.axis();
                    format!("alpha + beta({u},{v};S) for S | {lcm}")
                }
            }
            (Lineon { axis, .. }, Fracton) | (Fracton, Lineon { axis, .. }) => {
                let [u, v] = axis.axis();
                format!("beta(w;S) for w != ({u},{v}) + gamma")
            }
            (Fracton, Fracton) => "any".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionReport {
    pub left: MobilityClass,
    pub right: MobilityClass,
    pub allowed: String,
    pub observed: FusionChannelSet,
    pub violations: Vec<MobilityClass>,
    pub pass: bool,
}

/// Fuses and checks every observed channel against [`allowed_channels`].
pub fn check_fusion(
    rule: &HocaRule,
    m1: &LaurentPoly,
    m2: &LaurentPoly,
    w: i32,
    exec: Execution,
) -> Result<FusionReport, MobilityError> {
    let left = classify_poly(rule.poly(), m1)?;
    let right = classify_poly(rule.poly(), m2)?;
    if left.vacuum || right.vacuum {
        return Err(MobilityError::Vacuum);
    }
    let allowed = allowed_channels(left.class, right.class);
    let observed = fuse(rule, m1, m2, w, exec)?;
    let violations: Vec<MobilityClass> = observed
        .classes()
        .filter(|c| !allowed.contains(c))
        .copied()
        .collect();
    Ok(FusionReport {
        left: left.class,
        right: right.class,
        allowed: allowed.describe(),
        pass: violations.is_empty(),
        observed,
        violations,
    })
}
