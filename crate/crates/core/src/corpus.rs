//! Seeded pseudorandom field corpora.
//!
//! Generation is a fixed algorithm over a ChaCha8 stream seeded from a
//! `u64`, so a seed reproduces the same fields everywhere:
//!
//! 1. List every exponent triple of total degree `<= degree`, ordered by
//!    degree, then lexicographically descending (`x₁` powers first).
//! 2. For each polynomial draw a term count uniformly in `1..=max_terms`.
//! 3. For each term draw a monomial index uniformly from the list and a
//!    coefficient uniformly from `-coeff_bound..=coeff_bound`. Repeated
//!    monomials are summed; zero sums drop out.
//!
//! A vector field draws its three components in order `f₁, f₂, f₃`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{ScalarField, VectorField};
use crate::poly::{rational, Exponents, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusConfig {
    pub degree: u32,
    pub coeff_bound: i64,
    pub max_terms: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            degree: 4,
            coeff_bound: 9,
            max_terms: 8,
        }
    }
}

/// Exponent triples with total degree `<= degree`, in generation order.
pub fn monomials_up_to(degree: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for d in 0..=degree {
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push([a, b, d - a - b]);
            }
        }
    }
    out
}

pub struct FieldGenerator {
    rng: ChaCha8Rng,
    cfg: CorpusConfig,
    monomials: Vec<Exponents>,
}

impl FieldGenerator {
    pub fn new(seed: u64, cfg: CorpusConfig) -> Self {
        FieldGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            cfg,
            monomials: monomials_up_to(cfg.degree),
        }
    }

    pub fn config(&self) -> CorpusConfig {
        self.cfg
    }

    pub fn polynomial(&mut self) -> Polynomial {
        let n = self.rng.gen_range(1..=self.cfg.max_terms);
        let mut terms = Vec::with_capacity(n);
        for _ in 0..n {
            let e = self.monomials[self.rng.gen_range(0..self.monomials.len())];
            let c = self
                .rng
                .gen_range(-self.cfg.coeff_bound..=self.cfg.coeff_bound);
            terms.push((e, rational(c)));
        }
        Polynomial::from_terms(terms)
    }

    pub fn scalar(&mut self) -> ScalarField {
        ScalarField(self.polynomial())
    }

    pub fn vector(&mut self) -> VectorField {
        let f1 = self.polynomial();
        let f2 = self.polynomial();
        let f3 = self.polynomial();
        VectorField::new(f1, f2, f3)
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Point with coordinates uniform in `[-bound, bound]`.
    pub fn point(&mut self, bound: f64) -> [f64; 3] {
        [0; 3].map(|_| self.rng.gen_range(-bound..=bound))
    }

    /// Nonzero integer combination of [`harmonic_basis`] with coefficients
    /// in `-coeff_bound..=coeff_bound`.
    pub fn harmonic(&mut self) -> Polynomial {
        let basis = harmonic_basis();
        loop {
            let p = basis.iter().fold(Polynomial::zero(), |acc, b| {
                let c = self
                    .rng
                    .gen_range(-self.cfg.coeff_bound..=self.cfg.coeff_bound);
                &acc + &b.scale(&rational(c))
            });
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Vector field with each component from [`FieldGenerator::harmonic`].
    pub fn vector_harmonic(&mut self) -> VectorField {
        let f1 = self.harmonic();
        let f2 = self.harmonic();
        let f3 = self.harmonic();
        VectorField::new(f1, f2, f3)
    }

    /// Scalar field of harmonic order exactly `n >= 1`:
    /// `r^(2(n-1))·h + h'` for nonzero harmonic `h` and harmonic `h'`.
    pub fn polyharmonic(&mut self, n: usize) -> ScalarField {
        assert!(n >= 1, "order must be positive");
        let h = self.harmonic();
        let extra = self.harmonic();
        let r2 = radius_squared();
        let lead = &r2.pow(n as u32 - 1) * &h;
        ScalarField(if n > 1 { &lead + &extra } else { lead })
    }
}

/// `x₁² + x₂² + x₃²`.
pub fn radius_squared() -> Polynomial {
    Polynomial::from_int_terms(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (1, [0, 0, 2])])
}

/// A basis of harmonic polynomials of degree `<= 3` (1 + 3 + 5 + 7 elements).
pub fn harmonic_basis() -> Vec<Polynomial> {
    let p = Polynomial::from_int_terms;
    vec![
        p(&[(1, [0, 0, 0])]),
        p(&[(1, [1, 0, 0])]),
        p(&[(1, [0, 1, 0])]),
        p(&[(1, [0, 0, 1])]),
        p(&[(1, [1, 1, 0])]),
        p(&[(1, [0, 1, 1])]),
        p(&[(1, [1, 0, 1])]),
        p(&[(1, [2, 0, 0]), (-1, [0, 2, 0])]),
        p(&[(1, [0, 2, 0]), (-1, [0, 0, 2])]),
        p(&[(1, [1, 1, 1])]),
        p(&[(1, [3, 0, 0]), (-3, [1, 2, 0])]),
        p(&[(1, [0, 3, 0]), (-3, [2, 1, 0])]),
        p(&[(1, [0, 0, 3]), (-3, [2, 0, 1])]),
        p(&[(1, [3, 0, 0]), (-3, [1, 0, 2])]),
        p(&[(1, [0, 3, 0]), (-3, [0, 1, 2])]),
        p(&[(1, [0, 0, 3]), (-3, [0, 2, 1])]),
    ]
}
