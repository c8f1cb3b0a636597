use serde::Serialize;

use super::map::{check_degree, RationalMap};
use super::point::ProjPoint;
use crate::config::Config;
use crate::error::Result;
use crate::exactnum::form::BinaryForm;
use crate::exactnum::poly::IntPoly;
use crate::exactnum::rat::Rat;
use crate::factor::normalize;

/// The level-`n` fiber over a rational point as an affine polynomial, with
/// the roots lost at `[1:0]` recorded separately so that
/// `poly.deg() + infinity_multiplicity == degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberPoly {
    pub poly: IntPoly,
    pub infinity_multiplicity: usize,
    pub degree: usize,
}

/// `y F - x G` for the map and point given.
pub fn fiber_form(phi: &RationalMap, beta: &ProjPoint) -> BinaryForm {
    phi.f().scale(beta.y()).sub(&phi.g().scale(beta.x())).primitive()
}

/// Fiber of `phi^n` over `beta`; `n = 0` gives the point itself.
pub fn fiber(phi: &RationalMap, n: u32, beta: &ProjPoint, cfg: &Config) -> Result<FiberPoly> {
    let form = if n == 0 {
        BinaryForm::linear_through(beta.x(), beta.y()).primitive()
    } else {
        check_degree(phi.degree(), n, cfg)?;
        fiber_form(&phi.iterate(n, cfg)?, beta)
    };
    Ok(FiberPoly {
        poly: normalize(&form.dehomogenize()),
        infinity_multiplicity: form.infinity_multiplicity(),
        degree: form.degree(),
    })
}

/// The primitive polynomial `f_n - beta g_n` with cleared denominators, whose
/// roots are the finite points of `phi^-n(beta)`.
pub fn iterate_poly(phi: &RationalMap, n: u32, beta: &Rat, cfg: &Config) -> Result<IntPoly> {
    Ok(fiber(phi, n, &ProjPoint::from_rat(beta), cfg)?.poly)
}
