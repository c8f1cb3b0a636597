//! Logarithmic heights of points and conjugate classes, and canonical
//! heights attached to a rational map.

mod commute;
mod lehmer;
mod roots;

use std::collections::HashSet;

use num_traits::Signed;
use serde::Serialize;

pub use commute::height_commute_bound;
pub use lehmer::{image_class, lehmer_ratio, LehmerRatio};
pub use roots::{isolate_roots, log_mahler_measure, RootApprox};

use crate::class::ConjugateClass;
use crate::config::Config;
use crate::dynamics::{ProjPoint, RationalMap};
use crate::error::{Error, Result};
use crate::exactnum::rat::ln_abs;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeightValue {
    pub value: f64,
    pub error_bound: f64,
}

impl HeightValue {
    pub fn exact(value: f64) -> HeightValue {
        HeightValue { value, error_bound: 0.0 }
    }
}

/// `ln max(|x|, |y|)` for coprime coordinates.
pub fn height_point(p: &ProjPoint) -> HeightValue {
    let m = if p.x().abs() >= p.y().abs() { p.x().abs() } else { p.y().abs() };
    HeightValue::exact(ln_abs(&m))
}

/// Height of any root of the class, `ln M(f) / deg f`.
pub fn height_class(gamma: &ConjugateClass, tol: f64) -> Result<HeightValue> {
    if let Some(p) = gamma.as_point() {
        return Ok(height_point(&p));
    }
    let f = gamma.minpoly();
    let (lm, err) = log_mahler_measure(&f)?;
    let n = f.deg() as f64;
    let out = HeightValue { value: lm / n, error_bound: err / n };
    if !(out.error_bound <= tol) {
        return Err(Error::RootFinding { requested: tol, achieved: out.error_bound });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalHeight {
    pub value: f64,
    pub error_bound: f64,
    /// Iterate used: the value is `h(phi^n beta) / d^n`.
    pub n: u32,
    /// Set when the orbit closed up before step `n`; the value is then exact.
    pub preperiodic: bool,
}

impl CanonicalHeight {
    pub fn height(&self) -> HeightValue {
        HeightValue { value: self.value, error_bound: self.error_bound }
    }
}

/// Least `n` with `c / (d^n (d - 1)) <= target`, subject to the growth cap.
pub(crate) fn steps_for_target(c: f64, d: u64, target: f64, cfg: &Config) -> Result<u32> {
    if !(target > 0.0) {
        return Err(Error::Degenerate("target error must be positive".into()));
    }
    let mut n = 0u32;
    let mut scale: u128 = 1;
    while c / (scale as f64 * (d - 1) as f64) > target {
        scale *= d as u128;
        n += 1;
        if scale > cfg.height_growth_cap as u128 {
            return Err(Error::DegreeCap { needed: scale, cap: cfg.height_growth_cap });
        }
    }
    Ok(n)
}

pub fn canonical_height(phi: &RationalMap, beta: &ProjPoint, target_err: f64, cfg: &Config) -> Result<CanonicalHeight> {
    let d = phi.degree() as u64;
    let c = height_commute_bound(phi)?;
    let n = steps_for_target(c, d, target_err, cfg)?;
    let mut seen = HashSet::new();
    let mut p = beta.clone();
    for k in 0..n {
        if !seen.insert(p.clone()) {
            return Ok(CanonicalHeight { value: 0.0, error_bound: 0.0, n: k, preperiodic: true });
        }
        p = phi.evaluate(&p);
    }
    let scale = (d as f64).powi(n as i32);
    let tail = if c == 0.0 { 0.0 } else { c / (scale * (d - 1) as f64) };
    Ok(CanonicalHeight { value: height_point(&p).value / scale, error_bound: tail, n, preperiodic: false })
}
