use serde::{Deserialize, Serialize};

use super::{LaurentPoly, Monomial, PolyError};

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A lattice direction `(u, v)` with coprime entries, identified with its antipode.
///
/// The stored sign always has `u > 0`, or `u == 0 && v > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimitiveDirection {
    u: i32,
    v: i32,
}

impl PrimitiveDirection {
    /// Normalizes any nonzero vector to its primitive, sign-canonical direction.
    pub fn new(u: i32, v: i32) -> Option<Self> {
        if u == 0 && v == 0 {
            return None;
        }
        let g = gcd_i64(u as i64, v as i64);
        let (mut u, mut v) = ((u as i64 / g) as i32, (v as i64 / g) as i32);
        if u < 0 || (u == 0 && v < 0) {
            u = -u;
            v = -v;
        }
        Some(Self { u, v })
    }

    pub fn u(&self) -> i32 {
        self.u
    }

    pub fn v(&self) -> i32 {
        self.v
    }

    pub fn as_monomial(&self) -> Monomial {
        Monomial::new(self.u, self.v)
    }

    /// Whether `(a, b)` is an integer multiple of this direction.
    pub fn is_parallel(&self, a: i32, b: i32) -> bool {
        self.u as i64 * b as i64 == self.v as i64 * a as i64
    }

    /// The sign used in reports: pointing down the page (`v > 0`), or right
    /// for horizontal axes.
    pub fn axis(&self) -> [i32; 2] {
        if self.v < 0 {
            [-self.u, -self.v]
        } else {
            [self.u, self.v]
        }
    }
}

impl std::fmt::Display for PrimitiveDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Convex hull of a polynomial's support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Extreme points, counterclockwise (x right, y up in the algebraic picture),
    /// starting from the lexicographically smallest `(x, y)`.
    pub vertices: Vec<(i32, i32)>,
    pub dim: u8,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone-chain hull of distinct points, collinear points dropped.
pub(crate) fn convex_hull(points: &[(i32, i32)]) -> Vec<(i32, i32)> {
    let mut pts: Vec<(i64, i64)> = points.iter().map(|&(x, y)| (x as i64, y as i64)).collect();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts.iter().map(|&(x, y)| (x as i32, y as i32)).collect();
    }
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull.iter().map(|&(x, y)| (x as i32, y as i32)).collect()
}

impl NewtonPolygon {
    pub fn of(p: &LaurentPoly) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::Zero("newton"));
        }
        let pts: Vec<(i32, i32)> = p.terms().iter().map(|t| (t.x, t.y)).collect();
        Ok(Self::from_points(&pts))
    }

    pub fn from_points(points: &[(i32, i32)]) -> Self {
        let vertices = convex_hull(points);
        let dim = match vertices.len() {
            0 | 1 => 0,
            2 => 1,
            _ => 2,
        };
        Self { vertices, dim }
    }

    /// Extreme points of the Minkowski sum `self + other`.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let sums: Vec<(i32, i32)> = self
            .vertices
            .iter()
            .flat_map(|&(a, b)| other.vertices.iter().map(move |&(c, d)| (a + c, b + d)))
            .collect();
        Self::from_points(&sums)
    }
}

/// A dimension <= 1 polynomial written as `t(q)` times a monomial, `q = x^u y^v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollinearProfile {
    pub direction: PrimitiveDirection,
    /// Coefficients `t_0 .. t_N` with `t_0 = t_N = 1`.
    pub coeffs: Vec<bool>,
    /// Support point that `t_0` sits on.
    pub start: Monomial,
}

pub(super) fn collinear_profile(p: &LaurentPoly) -> Result<CollinearProfile, PolyError> {
    let hull = NewtonPolygon::of(p)?;
    match hull.dim {
        0 => Ok(CollinearProfile {
            direction: PrimitiveDirection::new(1, 0).expect("nonzero"),
            coeffs: vec![true],
            start: p.terms()[0],
        }),
        1 => {
            let (a, b) = (hull.vertices[0], hull.vertices[1]);
            let (du, dv) = (b.0 - a.0, b.1 - a.1);
            let steps = gcd_i64(du as i64, dv as i64) as i32;
            let direction = PrimitiveDirection::new(du, dv).expect("distinct endpoints");
            let start = if direction.u() * steps == du && direction.v() * steps == dv {
                a
            } else {
                b
            };
            let coeffs = (0..=steps)
                .map(|k| {
                    p.contains(Monomial::new(
                        start.0 + k * direction.u(),
                        start.1 + k * direction.v(),
                    ))
                })
                .collect();
            Ok(CollinearProfile {
                direction,
                coeffs,
                start: Monomial::new(start.0, start.1),
            })
        }
        _ => Err(PolyError::TwoDimensional(p.to_string())),
    }
}
