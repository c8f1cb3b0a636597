use std::collections::HashMap;

use serde::Serialize;

use super::fiber::fiber_form;
use super::map::RationalMap;
use super::point::ProjPoint;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactnum::form::BinaryForm;
use crate::heights::{height_commute_bound, height_point};

/// Iterations after which a non-escaping, non-repeating orbit is reported as
/// an error rather than looping on.
const MAX_ORBIT_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OrbitCertificate {
    /// `tail` leads into `cycle`; the orbit is `tail ++ cycle`.
    Preperiodic { tail: Vec<ProjPoint>, cycle: Vec<ProjPoint> },
    /// `h(phi^k(beta)) > C / (d - 1)`, after which heights grow without bound.
    Escapes { k: usize, height: f64, threshold: f64, commute_bound: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreperiodicityVerdict {
    pub preperiodic: bool,
    pub certificate: OrbitCertificate,
}

/// Decides whether the forward orbit of `beta` is finite, by exact iteration
/// with cycle detection and a height-escape test.
pub fn is_preperiodic(phi: &RationalMap, beta: &ProjPoint) -> Result<PreperiodicityVerdict> {
    let c = height_commute_bound(phi)?;
    let d = phi.degree() as f64;
    let threshold = c / (d - 1.0);
    // Margin for rounding in the floating-point heights.
    let margin = 1e-9 * (1.0 + threshold);
    let mut seen: HashMap<ProjPoint, usize> = HashMap::new();
    let mut orbit = Vec::new();
    let mut p = beta.clone();
    for k in 0..MAX_ORBIT_STEPS {
        if let Some(&start) = seen.get(&p) {
            let cycle = orbit.split_off(start);
            return Ok(PreperiodicityVerdict {
                preperiodic: true,
                certificate: OrbitCertificate::Preperiodic { tail: orbit, cycle },
            });
        }
        let h = height_point(&p).value;
        if h > threshold + margin {
            return Ok(PreperiodicityVerdict {
                preperiodic: false,
                certificate: OrbitCertificate::Escapes { k, height: h, threshold, commute_bound: c },
            });
        }
        seen.insert(p.clone(), k);
        orbit.push(p.clone());
        p = phi.evaluate(&p);
    }
    Err(Error::Unsupported(format!("orbit undecided after {MAX_ORBIT_STEPS} steps")))
}

/// Number of distinct roots in `P^1(Qbar)` of a nonzero form.
fn distinct_roots(form: &BinaryForm) -> usize {
    let at_infinity = usize::from(form.infinity_multiplicity() > 0);
    let affine = form.dehomogenize();
    let finite: usize = if affine.deg() == 0 {
        0
    } else {
        affine.squarefree_decomposition().iter().map(|(s, _)| s.deg()).sum()
    };
    at_infinity + finite
}

/// `true` iff `{alpha} u phi^-1(alpha) u phi^-2(alpha)` has at most two
/// distinct points, i.e. the backward orbit of `alpha` is finite.
pub fn is_exceptional(phi: &RationalMap, alpha: &ProjPoint) -> Result<bool> {
    let cfg = Config { degree_cap: u64::MAX, ..Config::default() };
    let level0 = BinaryForm::linear_through(alpha.x(), alpha.y());
    let level1 = fiber_form(phi, alpha);
    let level2 = fiber_form(&phi.iterate(2, &cfg)?, alpha);
    Ok(distinct_roots(&level0.mul(&level1).mul(&level2)) <= 2)
}
