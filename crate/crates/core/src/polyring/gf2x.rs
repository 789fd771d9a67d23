//! Dense univariate polynomials over F2, one bit per coefficient.

use std::fmt;

/// An element of F2[x], coefficient of `x^i` stored in bit `i % 64` of limb `i / 64`.
///
/// Limbs are kept trimmed so that the zero polynomial has no limbs and equality
/// is limb equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    limbs: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { limbs: vec![1] }
    }

    /// `x^e`.
    pub fn monomial(e: usize) -> Self {
        let mut p = Self::zero();
        p.flip(e);
        p
    }

    /// Builds a polynomial from exponents; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    /// Builds a polynomial from a coefficient list `c_0, c_1, ...`.
    pub fn from_coeffs(coeffs: &[bool]) -> Self {
        Self::from_exponents(coeffs.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| i))
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + (63 - top.leading_zeros() as usize))
    }

    pub fn coeff(&self, e: usize) -> bool {
        self.limbs
            .get(e / 64)
            .is_some_and(|w| (w >> (e % 64)) & 1 == 1)
    }

    /// Toggles the coefficient of `x^e`.
    pub fn flip(&mut self, e: usize) {
        let (w, b) = (e / 64, e % 64);
        if self.limbs.len() <= w {
            self.limbs.resize(w + 1, 0);
        }
        self.limbs[w] ^= 1 << b;
        self.trim();
    }

    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(w, &limb)| {
            let mut bits = limb;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.exponents().next()
    }

    fn trim(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    fn xor_shifted(&mut self, other: &Self, shift: usize) {
        if other.is_zero() {
            return;
        }
        let (ws, bs) = (shift / 64, shift % 64);
        let need = other.limbs.len() + ws + 1;
        if self.limbs.len() < need {
            self.limbs.resize(need, 0);
        }
        for (i, &limb) in other.limbs.iter().enumerate() {
            self.limbs[i + ws] ^= limb << bs;
            if bs != 0 {
                self.limbs[i + ws + 1] ^= limb >> (64 - bs);
            }
        }
        self.trim();
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_shifted(other, 0);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for e in self.exponents() {
            out.xor_shifted(other, e);
        }
        out
    }

    /// Euclidean division: returns `(q, r)` with `self = q * d + r` and `deg r < deg d`.
    ///
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut q = Self::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            q.flip(rd - dd);
            r.xor_shifted(d, rd - dd);
        }
        (q, r)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .exponents()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_flip() {
        let mut p = Gf2Poly::zero();
        assert_eq!(p.degree(), None);
        p.flip(70);
        p.flip(0);
        assert_eq!(p.degree(), Some(70));
        p.flip(70);
        assert_eq!(p.degree(), Some(0));
        assert!(p.is_one());
    }

    #[test]
    fn product_of_linear_factors() {
        // (1+x)(1+x+x^2) = 1+x^3
        let a = Gf2Poly::from_exponents([0, 1]);
        let b = Gf2Poly::from_exponents([0, 1, 2]);
        assert_eq!(a.mul(&b), Gf2Poly::from_exponents([0, 3]));
    }

    #[test]
    fn division_and_gcd() {
        let a = Gf2Poly::from_exponents([0, 3]);
        let b = Gf2Poly::from_exponents([0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        // gcd(1+x^3, 1+x^2) = 1+x
        assert_eq!(a.gcd(&b), Gf2Poly::from_exponents([0, 1]));
    }

    #[test]
    fn shifted_xor_crosses_limbs() {
        let a = Gf2Poly::from_exponents([0, 63]);
        let b = a.mul(&Gf2Poly::monomial(65));
        assert_eq!(b.exponents().collect::<Vec<_>>(), vec![65, 128]);
    }
}
