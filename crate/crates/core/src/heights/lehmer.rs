use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{height_class, height_commute_bound, steps_for_target};
use crate::class::ConjugateClass;
use crate::config::Config;
use crate::dynamics::RationalMap;
use crate::error::{Error, Result};
use crate::exactnum::form::BinaryForm;
use crate::exactnum::poly::IntPoly;
use crate::exactnum::resultant::form_resultant;

/// The class of `phi(gamma)`: the squarefree part of
/// `Res_z(A(z), w G(z) - F(z))` as a form in `w`, whose roots are the images
/// of the conjugates of `gamma`.
pub fn image_class(gamma: &ConjugateClass, phi: &RationalMap) -> ConjugateClass {
    let a = gamma.form();
    let m = a.degree();
    // R(w0 : w1) = Res(A, w1 F - w0 G) is a form of degree m in (w0, w1);
    // sample it on w1 = 1 and at w = inf separately.
    let sample = |w: &BigInt| form_resultant(a, &phi.f().sub(&phi.g().scale(w)));
    let xs: Vec<BigInt> = (0..=m as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs.iter().map(sample).collect();
    let affine = IntPoly::interpolate(&xs, &ys);
    // The coefficient of w^m: Res(A, -G).
    let top = form_resultant(a, &phi.g().scale(&-BigInt::one()));
    let mut coeffs = affine.coeffs().to_vec();
    coeffs.resize(m + 1, BigInt::zero());
    debug_assert_eq!(coeffs[m], top);
    coeffs[m] = top;
    let form = BinaryForm::new(coeffs);
    let k = form.infinity_multiplicity();
    if k == m {
        return ConjugateClass::infinity();
    }
    let sf = form.dehomogenize().squarefree_decomposition();
    debug_assert_eq!(sf.len(), 1, "images of conjugates are conjugate");
    ConjugateClass::from_minpoly_unchecked(&sf[0].0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LehmerRatio {
    pub value: f64,
    pub error_bound: f64,
    /// Number of forward images used.
    pub n: u32,
}

/// `deg(gamma) * hhat_phi(gamma)` via `h(phi^n(gamma)) / d^n`, with `n`
/// chosen so that the tail bound is at most `target_err / deg(gamma)`.
pub fn lehmer_ratio(gamma: &ConjugateClass, phi: &RationalMap, target_err: f64, cfg: &Config) -> Result<LehmerRatio> {
    let m = gamma.degree() as f64;
    let c = height_commute_bound(phi)?;
    let d = phi.degree() as u64;
    let n = steps_for_target(c, d, target_err / m, cfg)?;
    let mut cls = gamma.clone();
    for _ in 0..n {
        cls = image_class(&cls, phi);
    }
    let scale = (d as f64).powi(n as i32);
    let h = height_class(&cls, cfg.tol.max(1e-14))?;
    let tail = if c == 0.0 { 0.0 } else { c / (scale * (d as f64 - 1.0)) };
    if !h.value.is_finite() {
        return Err(Error::Unsupported("height of image class".into()));
    }
    Ok(LehmerRatio { value: m * h.value / scale, error_bound: m * (h.error_bound / scale + tail), n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::int_class;

    #[test]
    fn image_classes() {
        let sq = RationalMap::monomial(2);
        let r2 = ConjugateClass::from_irreducible(&IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(image_class(&r2, &sq), int_class(2));
        assert_eq!(image_class(&int_class(3), &sq), int_class(9));
        let m = RationalMap::from_polys(&IntPoly::from_i64(&[1, 0, 1]), &IntPoly::from_i64(&[0, 1])).unwrap();
        assert_eq!(image_class(&int_class(0), &m), ConjugateClass::infinity());
        // z^2 - 1 maps the roots of z^2 - 3 to 2.
        let r3 = ConjugateClass::from_irreducible(&IntPoly::from_i64(&[-3, 0, 1])).unwrap();
        let t = RationalMap::polynomial(&IntPoly::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(image_class(&r3, &t), int_class(2));
        // and the roots of z^2 - z - 1 to the roots of z^2 - 3z + 1.
        let g = ConjugateClass::from_irreducible(&IntPoly::from_i64(&[-1, -1, 1])).unwrap();
        let sq_img = image_class(&g, &sq);
        assert_eq!(sq_img.minpoly(), IntPoly::from_i64(&[1, -3, 1]));
    }

    #[test]
    fn power_map_ratios() {
        let cfg = Config::default();
        let sq = RationalMap::monomial(2);
        let r2 = ConjugateClass::from_irreducible(&IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        let r = lehmer_ratio(&r2, &sq, 1e-9, &cfg).unwrap();
        assert!((r.value - 2f64.ln()).abs() <= r.error_bound + 1e-12);
        let r = lehmer_ratio(&int_class(2), &sq, 1e-9, &cfg).unwrap();
        assert_eq!(r.n, 0);
        assert!((r.value - 2f64.ln()).abs() < 1e-15);
    }
}
