//! Factorization over the rationals.

pub mod capelli;
pub mod hensel;
pub mod modp;
pub mod mu;
pub mod zassenhaus;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactnum::poly::IntPoly;
use crate::exactnum::rat::Rat;

pub use capelli::{capelli_factor, is_pth_power, root_set, CapelliStep, CapelliTrace, StepKind};
pub use mu::{mu, mu_table, MuRow, MuTable};

/// One irreducible factor and its exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Factor {
    pub poly: IntPoly,
    pub multiplicity: usize,
}

/// `unit * prod poly_i^mult_i`, factors primitive, irreducible, with positive
/// leading coefficient, pairwise distinct, sorted by degree then coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(with = "crate::exactnum::rat::serde_rat")]
    pub unit: Rat,
    pub factors: Vec<Factor>,
}

impl Factorization {
    /// Merges repeated factors and sorts; the unit is recomputed against
    /// `target` so the product reproduces it.
    pub(crate) fn assemble(target: &IntPoly, parts: Vec<(IntPoly, usize)>) -> Factorization {
        let mut factors: Vec<Factor> = Vec::new();
        for (poly, multiplicity) in parts {
            match factors.iter_mut().find(|f| f.poly == poly) {
                Some(f) => f.multiplicity += multiplicity,
                None => factors.push(Factor { poly, multiplicity }),
            }
        }
        factors.sort_by(|a, b| (a.poly.deg(), &a.poly, a.multiplicity).cmp(&(b.poly.deg(), &b.poly, b.multiplicity)));
        let lc_prod = factors
            .iter()
            .fold(BigInt::one(), |acc, f| acc * num_traits::pow(f.poly.leading().unwrap().clone(), f.multiplicity));
        let unit = Rat::new(target.leading().unwrap().clone(), lc_prod);
        Factorization { unit, factors }
    }

    /// `unit * prod factors`.
    pub fn expand(&self) -> IntPoly {
        let prod = self
            .factors
            .iter()
            .fold(IntPoly::one(), |acc, f| &acc * &f.poly.pow(f.multiplicity as u32));
        assert!(self.unit.is_integer(), "unit of an integer polynomial is integral");
        prod.scale(&self.unit.to_integer())
    }

    /// Number of distinct irreducible factors.
    pub fn distinct_count(&self) -> usize {
        self.factors.len()
    }

    /// Factor degrees with multiplicity, ascending.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.poly.deg(), f.multiplicity))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].multiplicity == 1
    }
}

/// Complete factorization over `Q`: content and squarefree split, then
/// Zassenhaus on each squarefree part.
pub fn factor_over_q(f: &IntPoly) -> Result<Factorization> {
    factor_over_q_seeded(f, Config::default().seed)
}

pub fn factor_over_q_seeded(f: &IntPoly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut parts = Vec::new();
    let k = f.zero_order();
    if k > 0 {
        parts.push((IntPoly::z(), k));
    }
    let rest = f.strip_zero_roots();
    if rest.deg() > 0 {
        for (s, e) in rest.squarefree_decomposition() {
            for g in zassenhaus::factor_squarefree(&s, seed) {
                parts.push((g, e));
            }
        }
    }
    Ok(Factorization::assemble(f, parts))
}

/// Normalizes a polynomial to primitive with positive leading coefficient.
pub(crate) fn normalize(f: &IntPoly) -> IntPoly {
    let g = f.primitive_part();
    if g.leading().is_some_and(|c| c.is_negative()) {
        -g
    } else {
        g
    }
}
