//! Seeded generators for the randomized suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hoca::{validate_rule, HocaRule, InitialCondition};
use crate::polyring::{LaurentPoly, Monomial};

/// Default seed of every randomized suite.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Constraints on a random rule.
#[derive(Debug, Clone, Copy)]
pub struct RuleShape {
    pub max_terms: usize,
    /// Exponent box `[-radius, radius] x [0, order]`.
    pub radius: i32,
    pub order: i32,
    /// Force an even number of terms.
    pub even: bool,
    /// Force the `y^0` row to be exactly `1`.
    pub update: bool,
}

impl Default for RuleShape {
    fn default() -> Self {
        Self {
            max_terms: 8,
            radius: 3,
            order: 3,
            even: false,
            update: false,
        }
    }
}

pub fn random_rule(rng: &mut SuiteRng, shape: RuleShape) -> HocaRule {
    assert!(shape.max_terms >= 2 && shape.order >= 1);
    loop {
        let n = rng.gen_range(2..=shape.max_terms);
        let mut f = LaurentPoly::one();
        while f.len() < n {
            let t = Monomial::new(
                rng.gen_range(-shape.radius..=shape.radius),
                rng.gen_range(0..=shape.order),
            );
            if t == Monomial::ONE || f.contains(t) || (shape.update && t.y == 0) {
                continue;
            }
            f.flip(t);
        }
        if shape.even && f.len() % 2 == 1 {
            continue;
        }
        if let Ok(rule) = validate_rule(&f) {
            return rule;
        }
    }
}

/// Nonzero polynomial with up to `max_terms` terms in `[-r, r]^2`.
pub fn random_poly(rng: &mut SuiteRng, max_terms: usize, r: i32) -> LaurentPoly {
    loop {
        let n = rng.gen_range(1..=max_terms);
        let p = LaurentPoly::from_terms(
            (0..n).map(|_| (rng.gen_range(-r..=r), rng.gen_range(-r..=r))),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random rows of width `[-r, r]`, one per order.
pub fn random_initial(rng: &mut SuiteRng, order: usize, r: i32) -> InitialCondition {
    let rows = (0..order)
        .map(|_| LaurentPoly::from_x_exponents((-r..=r).filter(|_| rng.gen_bool(0.4))))
        .collect();
    InitialCondition::new(rows).expect("rows are univariate")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_respect_shape() {
        let mut r = rng(1);
        for _ in 0..200 {
            let rule = random_rule(
                &mut r,
                RuleShape {
                    even: true,
                    update: true,
                    ..Default::default()
                },
            );
            assert!(rule.poly().len() <= 8 && rule.poly().len().is_multiple_of(2));
            assert!(rule.is_update_rule());
            assert!(rule.radius() <= 3 && rule.order() <= 3);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_rule(&mut rng(7), RuleShape::default());
        let b = random_rule(&mut rng(7), RuleShape::default());
        assert_eq!(a, b);
    }
}
