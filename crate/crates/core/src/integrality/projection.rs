use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::place::{local_valuation, PlaceSet};
use super::verdict::{conjugate_difference_valuations, is_S_integral, is_S_integral_divisor, IntegralityVerdict};
use crate::class::ConjugateClass;
use crate::dynamics::{bad_reduction_primes, pullback_divisor, reduction_degenerates, ProjPoint, RationalMap};
use crate::error::{Error, Result};
use crate::exactnum::newton::newton_polygon;
use crate::exactnum::primes::{is_prime_u64, strip_primes};
use crate::exactnum::rat::{rat_int, serde_display, valuation, Rat};
use crate::exactnum::resultant::form_resultant;
use crate::heights::image_class;

/// `sum_tau min(0, v_p(tau c))` over the finite roots of `c`.
fn negative_part(c: &ConjugateClass, p: u64) -> Result<Rat> {
    let np = newton_polygon(&c.minpoly(), p)?;
    Ok(np.root_valuations().into_iter().filter(|v| v.is_negative()).sum())
}

/// `sum_tau v_p`-local height between the conjugates of `c` and the rational
/// point `q`, assembled from Newton polygons.
fn class_point_local_sum(c: &ConjugateClass, q: &ProjPoint, p: u64) -> Result<Rat> {
    let vq = |q: &Rat| -> Result<Rat> {
        Ok(if q.is_zero() { Rat::zero() } else { rat_int(valuation(q, p)?.min(0)) })
    };
    if c.is_infinity() {
        let q = q.to_rat().ok_or(Error::InfiniteLocalHeight)?;
        return Ok(-vq(&q)?);
    }
    let Some(qr) = q.to_rat() else {
        return Ok(-negative_part(c, p)?);
    };
    let diffs: Rat = conjugate_difference_valuations(&ConjugateClass::rational(&qr), c, p)?.into_iter().sum();
    Ok(diffs - negative_part(c, p)? - vq(&qr)? * rat_int(c.degree() as i64))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionCheck {
    /// `v_p` form of the local height of `phi(Q)` relative to `P`.
    pub lhs: u64,
    /// The same quantity summed over the pullback divisor of `P` at `Q`.
    #[serde(serialize_with = "serde_display")]
    pub rhs: Rat,
    pub holds: bool,
}

/// Compares `lambda_{P,p}(phi(Q))` with `lambda_{phi^*(P),p}(Q)` exactly. The
/// left side is a determinant valuation; the right side goes through the
/// pullback factorization and Newton polygons of conjugate differences.
pub fn check_projection_formula(phi: &RationalMap, p_pt: &ProjPoint, q_pt: &ProjPoint, p: u64) -> Result<ProjectionCheck> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if reduction_degenerates(phi, p) {
        return Err(Error::BadReduction(p));
    }
    let lhs = local_valuation(p_pt, &phi.evaluate(q_pt), p).ok_or(Error::InfiniteLocalHeight)?;
    let pull = pullback_divisor(phi, &ConjugateClass::from_point(p_pt))?;
    let mut rhs = Rat::zero();
    for t in pull.terms() {
        rhs += class_point_local_sum(&t.class, q_pt, p)? * rat_int(t.mult);
    }
    Ok(ProjectionCheck { holds: rat_int(lhs as i64) == rhs, lhs, rhs })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PullbackComparison {
    /// `beta` against the image class `phi(alpha)`.
    pub image_verdict: IntegralityVerdict,
    /// `alpha` against the divisor `phi^*(beta)`.
    pub pullback_verdict: IntegralityVerdict,
    /// Local-height sums agree at every prime outside the bad set.
    pub sums_agree: bool,
}

impl PullbackComparison {
    pub fn agree(&self) -> bool {
        self.sums_agree && self.image_verdict.integral == self.pullback_verdict.integral
    }
}

/// Tests both sides of the pullback equivalence for integrality. Every prime
/// of bad reduction must lie in `s`.
pub fn compare_pullback_integrality(
    phi: &RationalMap,
    alpha: &ConjugateClass,
    beta: &ConjugateClass,
    s: &PlaceSet,
) -> Result<PullbackComparison> {
    let bad: BTreeSet<u64> = bad_reduction_primes(phi)?;
    if let Some(&p) = bad.iter().find(|p| !s.finite_primes().contains(p)) {
        return Err(Error::BadReduction(p));
    }
    let image = image_class(alpha, phi);
    let pull = pullback_divisor(phi, beta)?;
    if &image == beta {
        return Err(Error::Degenerate(format!("{alpha} maps onto {beta}")));
    }
    let image_verdict = is_S_integral(beta, &image, s)?;
    let pullback_verdict = is_S_integral_divisor(alpha, &pull, s)?;
    // deg(alpha) v(Res(B, A')) = deg(A') sum n_i v(Res(B_i, A)) away from the
    // bad primes, since each conjugate of phi(alpha) has deg A / deg A'
    // preimages among the conjugates of alpha.
    let (k, k_img) = (alpha.degree() as u32, image.degree() as u32);
    let left = form_resultant(beta.form(), image.form()).abs().pow(k);
    let mut right = BigInt::from(1);
    for t in pull.terms() {
        right *= form_resultant(t.class.form(), alpha.form()).abs().pow(t.mult as u32 * k_img);
    }
    let sums_agree = strip_primes(&left, &bad) == strip_primes(&right, &bad);
    Ok(PullbackComparison { image_verdict, pullback_verdict, sums_agree })
}
