use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::place::{points_s_integral, PlaceSet};
use super::verdict::{is_S_integral, IntegralityVerdict};
use crate::class::ConjugateClass;
use crate::config::Config;
use crate::dynamics::map::check_degree;
use crate::dynamics::{fiber, fiber_form, is_exceptional, is_preperiodic, ProjPoint, RationalMap};
use crate::error::{Error, Result};
use crate::exactnum::cyclotomic::{cyclotomic, euler_phi};
use crate::exactnum::form::BinaryForm;
use crate::exactnum::poly::IntPoly;
use crate::exactnum::primes::strip_primes;
use crate::exactnum::rat::{rat_to_string, serde_display, Rat};
use crate::factor::{capelli_factor, factor_over_q};
use crate::heights::{height_class, HeightValue};

fn check_scalar(alpha: &Rat) -> Result<()> {
    if alpha.is_zero() || alpha.abs().is_one() {
        return Err(Error::Degenerate(format!("alpha = {} must avoid 0 and +-1", rat_to_string(alpha))));
    }
    Ok(())
}

fn is_s_unit(n: &BigInt, s: &PlaceSet) -> bool {
    !n.is_zero() && strip_primes(n, s.finite_primes()).abs().is_one()
}

/// The `m <= m_max` whose primitive `m`-th roots of unity are S-integral
/// relative to `alpha`: those with the homogenized `Phi_m(a, b)` an S-unit.
pub fn integral_roots_of_unity(alpha: &Rat, s: &PlaceSet, m_max: usize) -> Result<BTreeSet<usize>> {
    check_scalar(alpha)?;
    let (a, b) = (alpha.numer(), alpha.denom());
    Ok((1..=m_max)
        .into_par_iter()
        .filter(|&m| is_s_unit(&cyclotomic(m).eval_hom(a, b, euler_phi(m as u64) as usize), s))
        .collect())
}

/// The `m` in `range` with `alpha^m` S-integral relative to `beta`.
pub fn integral_powers(alpha: &Rat, beta: &ConjugateClass, s: &PlaceSet, range: RangeInclusive<i64>) -> Result<BTreeSet<i64>> {
    check_scalar(alpha)?;
    let mut out = BTreeSet::new();
    for m in range {
        let e = i32::try_from(m).map_err(|_| Error::Unsupported(format!("exponent {m} out of range")))?;
        let gamma = ConjugateClass::rational(&num_traits::Pow::pow(alpha, e));
        if &gamma == beta {
            return Err(Error::Degenerate(format!("alpha^{m} equals beta")));
        }
        if is_S_integral(&gamma, beta, s)?.integral {
            out.insert(m);
        }
    }
    Ok(out)
}

/// Conjugate classes of the points of `phi^-n(beta)`, without multiplicity.
pub fn fiber_classes(phi: &RationalMap, beta: &ProjPoint, n: u32, cfg: &Config) -> Result<Vec<ConjugateClass>> {
    if n == 0 {
        return Ok(vec![ConjugateClass::from_point(beta)]);
    }
    let d = phi.degree();
    if phi.is_monomial() && phi.f().coeffs()[d].is_one() {
        if let Some(b) = beta.to_rat().filter(|b| !b.is_zero()) {
            let deg = check_degree(d, n, cfg)?;
            let (fac, _) = capelli_factor(deg, &b)?;
            return Ok(fac.factors.iter().map(|f| ConjugateClass::from_minpoly_unchecked(&f.poly)).collect());
        }
    }
    let fib = fiber(phi, n, beta, cfg)?;
    let mut out = Vec::new();
    if fib.infinity_multiplicity > 0 {
        out.push(ConjugateClass::infinity());
    }
    if fib.poly.deg() > 0 {
        for f in factor_over_q(&fib.poly)?.factors {
            out.push(ConjugateClass::from_minpoly_unchecked(&f.poly));
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BackwardLevel {
    pub n: u32,
    pub class_count: usize,
    pub integral: Vec<ConjugateClass>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BackwardOrbitReport {
    pub levels: Vec<BackwardLevel>,
    pub warnings: Vec<String>,
}

impl BackwardOrbitReport {
    /// `(level, class)` for every integral class, in level order.
    pub fn integral_classes(&self) -> Vec<(u32, ConjugateClass)> {
        self.levels.iter().flat_map(|l| l.integral.iter().map(|c| (l.n, c.clone()))).collect()
    }
}

/// Classes of `phi^-n(beta)`, `n <= depth`, that are S-integral relative to
/// `alpha`. A preperiodic `alpha` is reported as a warning.
pub fn integral_backward_orbit(
    phi: &RationalMap,
    beta: &ProjPoint,
    alpha: &ProjPoint,
    s: &PlaceSet,
    depth: u32,
    cfg: &Config,
) -> Result<BackwardOrbitReport> {
    let mut warnings = Vec::new();
    if is_preperiodic(phi, alpha)?.preperiodic {
        warnings.push(format!("alpha = {alpha} is preperiodic for {phi}; finiteness is not expected"));
    }
    if depth > 0 {
        check_degree(phi.degree(), depth, cfg)?;
    }
    let alpha_class = ConjugateClass::from_point(alpha);
    let levels = (0..=depth)
        .into_par_iter()
        .map(|n| {
            let classes = fiber_classes(phi, beta, n, cfg)?;
            let mut integral = Vec::new();
            for c in &classes {
                if c != &alpha_class && is_S_integral(c, &alpha_class, s)?.integral {
                    integral.push(c.clone());
                }
            }
            Ok(BackwardLevel { n, class_count: classes.len(), integral })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BackwardOrbitReport { levels, warnings })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForwardReport {
    /// `(n, phi^n(beta))` for the S-integral iterates.
    pub points: Vec<(usize, ProjPoint)>,
    pub warnings: Vec<String>,
}

/// Iterates `beta` and keeps the points S-integral relative to `alpha`.
pub fn forward_integral_points(
    phi: &RationalMap,
    beta: &ProjPoint,
    alpha: &ProjPoint,
    s: &PlaceSet,
    n_max: usize,
) -> Result<ForwardReport> {
    let mut warnings = Vec::new();
    if is_exceptional(phi, alpha)? {
        warnings.push(format!("alpha = {alpha} is exceptional for {phi}; the orbit may stay integral"));
    }
    let mut points = Vec::new();
    let mut p = beta.clone();
    for n in 0..=n_max {
        if points_s_integral(&p, alpha, s) {
            points.push((n, p.clone()));
        }
        if n < n_max {
            p = phi.evaluate(&p);
        }
    }
    Ok(ForwardReport { points, warnings })
}

fn rational_roots(form: &BinaryForm) -> Result<Vec<ProjPoint>> {
    let mut out = Vec::new();
    if form.infinity_multiplicity() > 0 {
        out.push(ProjPoint::infinity());
    }
    let affine = form.dehomogenize();
    if affine.deg() > 0 {
        for f in factor_over_q(&affine)?.factors.iter().filter(|f| f.poly.deg() == 1) {
            out.push(ProjPoint::new(-f.poly.coeff(0), f.poly.coeff(1))?);
        }
    }
    Ok(out)
}

/// Every rational point of `phi^-n(beta)` for `n <= depth`, found level by
/// level from the rational points of the previous level.
pub fn rational_backward_points(phi: &RationalMap, beta: &ProjPoint, depth: u32, cfg: &Config) -> Result<BTreeSet<(u32, ProjPoint)>> {
    if depth > 0 {
        check_degree(phi.degree(), depth, cfg)?;
    }
    let mut out = BTreeSet::new();
    let mut level = vec![beta.clone()];
    out.insert((0, beta.clone()));
    for n in 1..=depth {
        let next: BTreeSet<ProjPoint> = level
            .par_iter()
            .map(|q| rational_roots(&fiber_form(phi, q)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        out.extend(next.iter().map(|p| (n, p.clone())));
        level = next.into_iter().collect();
    }
    Ok(out)
}

/// `z^(2^n) (z - 2) - 1`.
pub fn bir_polynomial(n: u32) -> IntPoly {
    let k = 1usize << n;
    let mut c = vec![BigInt::zero(); k + 2];
    c[0] = -BigInt::one();
    c[k] = BigInt::from(-2);
    c[k + 1] = BigInt::one();
    IntPoly::new(c)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BirClass {
    pub degree: usize,
    pub verdict: IntegralityVerdict,
    pub height: HeightValue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BirReport {
    pub n: u32,
    pub degree: usize,
    pub classes: Vec<BirClass>,
    /// `f_n(2)`; a unit together with `f_n` monic makes every conjugate
    /// difference with 2 a unit.
    #[serde(serialize_with = "serde_display")]
    pub value_at_two: BigInt,
    pub integral: bool,
    pub shortcut_agrees: bool,
}

impl BirReport {
    /// Largest class height plus its error bound.
    pub fn height(&self) -> HeightValue {
        self.classes
            .iter()
            .map(|c| c.height)
            .max_by(|a, b| a.value.total_cmp(&b.value))
            .expect("at least one class")
    }
}

/// Root classes of `z^(2^n)(z - 2) - 1` tested for integrality relative to 2
/// with `S = {inf}`, with their heights.
pub fn bir_family_check(n: u32, tol: f64, cfg: &Config) -> Result<BirReport> {
    if n == 0 {
        return Err(Error::Degenerate("the family starts at n = 1".into()));
    }
    let f = bir_polynomial(n);
    let degree = f.deg();
    if degree as u64 > cfg.degree_cap {
        return Err(Error::DegreeCap { needed: degree as u128, cap: cfg.degree_cap });
    }
    let two = ConjugateClass::rational(&Rat::from_integer(BigInt::from(2)));
    let s = PlaceSet::archimedean();
    let classes = factor_over_q(&f)?
        .factors
        .par_iter()
        .map(|fac| {
            let c = ConjugateClass::from_minpoly_unchecked(&fac.poly);
            Ok(BirClass { degree: c.degree(), verdict: is_S_integral(&c, &two, &s)?, height: height_class(&c, tol)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let value_at_two = f.eval(&BigInt::from(2));
    let integral = classes.iter().all(|c| c.verdict.integral);
    let shortcut = f.is_monic() && value_at_two.abs().is_one();
    Ok(BirReport { n, degree, classes, value_at_two, integral, shortcut_agrees: shortcut == integral })
}
