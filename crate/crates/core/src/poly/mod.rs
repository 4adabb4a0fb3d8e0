//! Univariate and multivariate polynomials, resultants and factorization.

mod factor_fq;
mod factor_q;
mod mpoly;
mod resultant;
mod upoly;

pub use factor_fq::{distinct_degree, equal_degree, factor_fq, squarefree_decomposition_fq};
pub use factor_q::{factor_rational, factor_rational_seeded, rational_roots, squarefree_decomposition_char0};
pub use mpoly::{MPoly, Monomial};
pub use resultant::{bareiss_det, resultant, sylvester_matrix};
pub use upoly::UPoly;
pub(crate) use upoly::binomial;


use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{ExtensionField, Field, FiniteField, PrimeField, RationalFunctions, Rationals};

/// f = constant * prod factor^multiplicity, factors monic irreducible and distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F: Field> {
    field: F,
    pub constant: F::Elem,
    pub factors: Vec<(UPoly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    /// Sorts factors by (multiplicity, degree, printed coefficients) for determinism.
    pub(crate) fn new(field: F, constant: F::Elem, mut factors: Vec<(UPoly<F>, usize)>) -> Self {
        let key = |g: &UPoly<F>| -> Vec<String> { g.coeffs().iter().rev().map(|c| field.format(c)).collect() };
        factors.sort_by(|(a, ma), (b, mb)| ma.cmp(mb).then(a.degree().cmp(&b.degree())).then_with(|| key(a).cmp(&key(b))));
        Factorization { field, constant, factors }
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self) -> UPoly<F> {
        self.factors
            .iter()
            .fold(UPoly::constant(&self.field, self.constant.clone()), |acc, (g, m)| acc.mul(&g.pow(*m)))
    }
}

/// Univariate factorization over a coefficient field, randomized steps seeded.
pub trait Factorize: Field {
    fn factor_seeded(&self, f: &UPoly<Self>, seed: u64) -> Result<Factorization<Self>>;
}

impl Factorize for Rationals {
    fn factor_seeded(&self, f: &UPoly<Self>, seed: u64) -> Result<Factorization<Self>> {
        factor_rational_seeded(f, seed)
    }
}

impl Factorize for PrimeField {
    fn factor_seeded(&self, f: &UPoly<Self>, seed: u64) -> Result<Factorization<Self>> {
        factor_fq(f, &mut ChaCha8Rng::seed_from_u64(seed))
    }
}

impl<B: FiniteField> Factorize for ExtensionField<B> {
    fn factor_seeded(&self, f: &UPoly<Self>, seed: u64) -> Result<Factorization<Self>> {
        factor_fq(f, &mut ChaCha8Rng::seed_from_u64(seed))
    }
}

impl Factorize for RationalFunctions {
    fn factor_seeded(&self, _f: &UPoly<Self>, _seed: u64) -> Result<Factorization<Self>> {
        Err(Error::UnsupportedCoefficientField("Q(t)".into()))
    }
}
