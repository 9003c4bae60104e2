//! Seeded generators of small exact witnesses for randomized checks.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rand::Rng;

use crate::exact_core::{integer, ratio, MonicPoly, Poly, Rational};

/// Draws rationals `p/q` with `|p| <= bound`, `1 <= q <= bound`.
#[derive(Clone, Copy, Debug)]
pub struct Sampler {
    pub bound: i64,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler { bound: 9 }
    }
}

impl Sampler {
    pub fn new(bound: i64) -> Self {
        assert!(bound >= 2, "sampling bound must be at least 2");
        Sampler { bound }
    }

    pub fn integer<R: Rng>(&self, rng: &mut R) -> Rational {
        integer(rng.gen_range(-self.bound..=self.bound))
    }

    pub fn rational<R: Rng>(&self, rng: &mut R) -> Rational {
        ratio(
            rng.gen_range(-self.bound..=self.bound),
            rng.gen_range(1..=self.bound),
        )
    }

    pub fn nonzero<R: Rng>(&self, rng: &mut R) -> Rational {
        loop {
            let q = self.rational(rng);
            if !q.is_zero() {
                return q;
            }
        }
    }

    /// `count` distinct nonzero rationals.
    pub fn distinct_nonzero<R: Rng>(&self, rng: &mut R, count: usize) -> Vec<Rational> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let q = self.nonzero(rng);
            if seen.insert(q.clone()) {
                out.push(q);
            }
        }
        out
    }

    /// Roots with no ±1 and pairwise distinct subset products (which also
    /// excludes zero and repeated roots once there are two or more).
    pub fn generic_roots<R: Rng>(&self, rng: &mut R, d: usize) -> Vec<Rational> {
        loop {
            let roots: Vec<Rational> = (0..d).map(|_| self.nonzero(rng)).collect();
            if roots.iter().any(|r| r.is_one() || *r == -Rational::one()) {
                continue;
            }
            let products: HashSet<Rational> = (0..1usize << d)
                .map(|mask| {
                    (0..d)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| roots[i].clone())
                        .product()
                })
                .collect();
            if products.len() == 1 << d {
                return roots;
            }
        }
    }

    pub fn monic<R: Rng>(&self, rng: &mut R, degree: usize) -> MonicPoly {
        let mut coeffs = vec![Rational::one()];
        coeffs.extend((0..degree).map(|_| self.rational(rng)));
        MonicPoly::new(coeffs).expect("leading coefficient is one")
    }

    /// Polynomial of exactly `degree` with the given leading coefficient.
    pub fn poly_with_leading<R: Rng>(&self, rng: &mut R, leading: Rational, degree: usize) -> Poly {
        let mut coeffs = vec![leading];
        coeffs.extend((0..degree).map(|_| self.rational(rng)));
        Poly::new(coeffs)
    }

    pub fn integer_sequence<R: Rng>(&self, rng: &mut R, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.integer(rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generic_roots_are_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = Sampler::default();
        for d in 1..=4 {
            let roots = s.generic_roots(&mut rng, d);
            let f = MonicPoly::from_roots(&roots).unwrap();
            let report =
                crate::cyclic::genericity_check(&f, crate::cyclic::GenericityMode::Plain).unwrap();
            assert!(report.is_generic());
        }
    }

    #[test]
    fn same_seed_same_draws() {
        let s = Sampler::new(5);
        let a = s.distinct_nonzero(&mut ChaCha8Rng::seed_from_u64(9), 6);
        let b = s.distinct_nonzero(&mut ChaCha8Rng::seed_from_u64(9), 6);
        assert_eq!(a, b);
        assert!(a.iter().all(|q| !q.is_zero()));
    }
}
