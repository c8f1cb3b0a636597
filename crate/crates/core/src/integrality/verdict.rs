use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::place::PlaceSet;
use crate::class::ConjugateClass;
use crate::dynamics::Divisor;
use crate::error::{Error, Result};
use crate::exactnum::newton::newton_polygon_big;
use crate::exactnum::poly::IntPoly;
use crate::exactnum::primes::{find_prime_factor, strip_primes, FactorSearch};
use crate::exactnum::rat::{serde_display, Rat};
use crate::exactnum::resultant::{form_resultant, resultant};

/// Pollard steps spent isolating a witness prime before settling for the
/// unfactored cofactor.
const WITNESS_BUDGET: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Both points are `p`-integral but too close: `v(sigma gamma - tau alpha) > 0`.
    Difference,
    /// Both points lie in the open unit disc around infinity.
    Pole,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Prime {
        #[serde(serialize_with = "serde_display")]
        prime: BigInt,
        branch: Branch,
        /// The Newton-polygon slope that violates the branch condition.
        #[serde(serialize_with = "serde_display")]
        valuation: Rat,
    },
    /// The pair resultant has a factor outside `S` that resisted splitting.
    Cofactor {
        #[serde(serialize_with = "serde_display")]
        cofactor: BigInt,
    },
}

impl Witness {
    pub fn prime(&self) -> Option<&BigInt> {
        match self {
            Witness::Prime { prime, .. } => Some(prime),
            Witness::Cofactor { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralityVerdict {
    pub integral: bool,
    pub witness: Option<Witness>,
}

impl IntegralityVerdict {
    fn integral() -> IntegralityVerdict {
        IntegralityVerdict { integral: true, witness: None }
    }

    fn violated(w: Witness) -> IntegralityVerdict {
        IntegralityVerdict { integral: false, witness: Some(w) }
    }
}

fn distinct(gamma: &ConjugateClass, alpha: &ConjugateClass) -> Result<()> {
    if gamma == alpha {
        return Err(Error::Degenerate(format!("the classes coincide: {gamma}")));
    }
    Ok(())
}

/// `{v_p(sigma gamma - tau alpha)}` over all pairs of conjugates, with
/// multiplicity. Neither class may be infinity.
pub fn conjugate_difference_valuations(gamma: &ConjugateClass, alpha: &ConjugateClass, p: u64) -> Result<Vec<Rat>> {
    if !crate::exactnum::primes::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    difference_valuations(gamma, alpha, &BigInt::from(p))
}

pub(crate) fn difference_valuations(gamma: &ConjugateClass, alpha: &ConjugateClass, p: &BigInt) -> Result<Vec<Rat>> {
    distinct(gamma, alpha)?;
    if gamma.is_infinity() || alpha.is_infinity() {
        return Err(Error::Degenerate("differences with infinity are undefined".into()));
    }
    let r = difference_polynomial(gamma, alpha);
    let np = newton_polygon_big(&r, p)?;
    debug_assert_eq!(np.zero_order, 0);
    Ok(np.root_valuations())
}

/// A polynomial whose roots are the differences `sigma gamma - tau alpha`
/// (up to a global sign when `gamma` is the rational one).
pub(crate) fn difference_polynomial(gamma: &ConjugateClass, alpha: &ConjugateClass) -> IntPoly {
    if let Some(a) = alpha.as_rat() {
        return gamma.minpoly().shift(&a);
    }
    if let Some(g) = gamma.as_rat() {
        return alpha.minpoly().shift(&g);
    }
    // R(w) = Res_z(A(z), G(z + w)), of degree deg A * deg G in w.
    let (a, g) = (alpha.minpoly(), gamma.minpoly());
    let n = a.deg() * g.deg();
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|w| resultant(&a, &g.shift(&Rat::from_integer(w.clone()))).expect("nonconstant"))
        .collect();
    IntPoly::interpolate(&xs, &ys)
}

/// Smallest root valuation at `p`, `None` when every root is `0`.
fn min_root_valuation(c: &ConjugateClass, p: &BigInt) -> Result<Option<Rat>> {
    Ok(newton_polygon_big(&c.minpoly(), p)?.min_root_valuation().cloned())
}

/// The valuation-side test at one prime: which branch of the integrality
/// condition fails, if any.
pub(crate) fn branch_violation(gamma: &ConjugateClass, alpha: &ConjugateClass, p: &BigInt) -> Result<Option<(Branch, Rat)>> {
    distinct(gamma, alpha)?;
    let negative = |c: &ConjugateClass| -> Result<Option<Rat>> {
        Ok(min_root_valuation(c, p)?.filter(|v| v.is_negative()))
    };
    match (gamma.is_infinity(), alpha.is_infinity()) {
        (true, _) => return Ok(negative(alpha)?.map(|v| (Branch::Pole, v))),
        (_, true) => return Ok(negative(gamma)?.map(|v| (Branch::Pole, v))),
        _ => {}
    }
    if let (Some(vg), Some(_)) = (negative(gamma)?, negative(alpha)?) {
        return Ok(Some((Branch::Pole, vg)));
    }
    let worst = difference_valuations(gamma, alpha, p)?.into_iter().max();
    Ok(worst.filter(|v| v.is_positive()).map(|v| (Branch::Difference, v)))
}

/// Whether every conjugate of `gamma` is S-integral relative to every
/// conjugate of `alpha`. The pair resultant of the primitive forms is the
/// product of all cross determinants, so the classes are integral exactly when
/// it is an S-unit; a prime factor outside `S` is then confirmed and labelled
/// by the Newton-polygon test.
#[allow(non_snake_case)]
pub fn is_S_integral(gamma: &ConjugateClass, alpha: &ConjugateClass, s: &PlaceSet) -> Result<IntegralityVerdict> {
    distinct(gamma, alpha)?;
    let res = form_resultant(gamma.form(), alpha.form());
    debug_assert!(!res.is_zero());
    let rest = strip_primes(&res, s.finite_primes()).abs();
    if rest == BigInt::from(1) {
        return Ok(IntegralityVerdict::integral());
    }
    match find_prime_factor(&rest, WITNESS_BUDGET) {
        FactorSearch::Prime(p) => {
            let (branch, valuation) = branch_violation(gamma, alpha, &p)?
                .unwrap_or_else(|| panic!("resultant and Newton polygons disagree at {p} for {gamma} vs {alpha}"));
            Ok(IntegralityVerdict::violated(Witness::Prime { prime: p, branch, valuation }))
        }
        FactorSearch::Unresolved(c) => Ok(IntegralityVerdict::violated(Witness::Cofactor { cofactor: c })),
    }
}

/// Integrality relative to an effective divisor: relative to every class in
/// its support.
#[allow(non_snake_case)]
pub fn is_S_integral_divisor(gamma: &ConjugateClass, delta: &Divisor, s: &PlaceSet) -> Result<IntegralityVerdict> {
    if !delta.is_effective() {
        return Err(Error::NonEffectiveDivisor);
    }
    for t in delta.terms() {
        let v = is_S_integral(gamma, &t.class, s)?;
        if !v.integral {
            return Ok(v);
        }
    }
    Ok(IntegralityVerdict::integral())
}
