//! Factorization of binomials `z^n - beta` over `Q` by peeling roots
//! (Capelli's criterion), without the general factorizer wherever the
//! pieces stay binomial.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{factor_over_q, normalize, Factorization};
use crate::error::{Error, Result};
use crate::exactnum::cyclotomic::cyclotomic;
use crate::exactnum::poly::IntPoly;
use crate::exactnum::rat::{exact_root, Rat};

/// Rational `r` with `r^k = q`, if any.
pub fn is_pth_power(q: &Rat, k: u32) -> Option<Rat> {
    assert!(!q.is_zero() && k >= 1);
    if q.is_negative() && k % 2 == 0 {
        return None;
    }
    let num = exact_root(&q.numer().abs(), k)?;
    let den = exact_root(q.denom(), k)?;
    let r = Rat::new(num, den);
    Some(if q.is_negative() { -r } else { r })
}

/// Every rational `b` with `b^k = beta` for some `1 <= k <= n_max`.
pub fn root_set(beta: &Rat, n_max: u32) -> BTreeSet<Rat> {
    let mut out = BTreeSet::new();
    for k in 1..=n_max {
        if let Some(r) = is_pth_power(beta, k) {
            if k % 2 == 0 {
                out.insert(-r.clone());
            }
            out.insert(r);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "case")]
pub enum StepKind {
    /// `beta = r^p` for a prime `p | n`.
    PthRoot { p: u64 },
    /// `beta = -4 c^4` with `4 | n`.
    MinusFour,
    /// `beta = +-1`: the binomial is a product of cyclotomic polynomials.
    RootOfUnity,
    /// No case applies; irreducible by Capelli's criterion.
    Leaf,
    /// A non-binomial cofactor handed to the general factorizer.
    Delegated,
}

/// One node of the factor tree, in depth-first order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapelliStep {
    pub kind: StepKind,
    /// The node is `z^exponent - beta`, or the cofactor in `output` for
    /// delegated steps.
    pub exponent: usize,
    #[serde(with = "crate::exactnum::rat::serde_rat")]
    pub beta: Rat,
    /// The extracted `r` (p-th root) or `c` (minus-four case).
    #[serde(serialize_with = "serialize_opt_rat")]
    pub root: Option<Rat>,
    pub residual_exponent: usize,
    /// Final irreducible factors emitted at this node.
    pub output: Vec<IntPoly>,
}

fn serialize_opt_rat<S: serde::Serializer>(q: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&crate::exactnum::rat::rat_to_string(q)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CapelliTrace {
    pub steps: Vec<CapelliStep>,
}

impl CapelliTrace {
    /// All emitted factors, in emission order.
    pub fn leaves(&self) -> Vec<IntPoly> {
        self.steps.iter().flat_map(|s| s.output.iter().cloned()).collect()
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn step(kind: StepKind, n: usize, beta: &Rat, root: Option<Rat>, m: usize, output: Vec<IntPoly>) -> CapelliStep {
    CapelliStep { kind, exponent: n, beta: beta.clone(), root, residual_exponent: m, output }
}

fn delegate(f: &IntPoly, trace: &mut CapelliTrace) -> Result<()> {
    let fact = factor_over_q(f)?;
    let output = fact.factors.into_iter().map(|x| x.poly).collect();
    trace.steps.push(step(StepKind::Delegated, f.deg(), &Rat::zero(), None, 0, output));
    Ok(())
}

fn peel(n: usize, beta: &Rat, trace: &mut CapelliTrace) -> Result<()> {
    if n == 1 {
        trace.steps.push(step(StepKind::Leaf, 1, beta, None, 1, vec![IntPoly::linear_root(beta)]));
        return Ok(());
    }
    if beta.is_one() || (-beta).is_one() {
        let divisors: Vec<usize> = if beta.is_one() {
            (1..=n).filter(|d| n % d == 0).collect()
        } else {
            (1..=2 * n).filter(|d| (2 * n) % d == 0 && n % d != 0).collect()
        };
        let output = divisors.into_iter().map(cyclotomic).collect();
        trace.steps.push(step(StepKind::RootOfUnity, n, beta, None, n, output));
        return Ok(());
    }
    for p in prime_divisors(n) {
        let Some(r) = is_pth_power(beta, p as u32) else { continue };
        let m = n / p;
        trace.steps.push(step(StepKind::PthRoot { p: p as u64 }, n, beta, Some(r.clone()), m, Vec::new()));
        peel(m, &r, trace)?;
        if p == 2 {
            peel(m, &-r, trace)?;
        } else {
            // (y^p - r^p) / (y - r) at y = z^m, times den(r)^(p-1)
            let (a, b) = (r.numer(), r.denom());
            let mut coeffs = vec![BigInt::zero(); m * (p - 1) + 1];
            for i in 0..p {
                coeffs[m * (p - 1 - i)] = num_traits::pow(a.clone(), i) * num_traits::pow(b.clone(), p - 1 - i);
            }
            delegate(&normalize(&IntPoly::new(coeffs)), trace)?;
        }
        return Ok(());
    }
    if n % 4 == 0 {
        if let Some(c) = is_pth_power(&(-beta / Rat::from_integer(BigInt::from(4))), 4) {
            let c = c.abs();
            let m = n / 4;
            let (a, b) = (c.numer(), c.denom());
            let quads: Vec<IntPoly> = [-1i32, 1]
                .into_iter()
                .map(|sign| {
                    // b^2 z^(2m) + sign 2ab z^m + 2a^2
                    let mut coeffs = vec![BigInt::zero(); 2 * m + 1];
                    coeffs[0] = BigInt::from(2) * a * a;
                    coeffs[m] = BigInt::from(2 * sign) * a * b;
                    coeffs[2 * m] = b * b;
                    normalize(&IntPoly::new(coeffs))
                })
                .collect();
            if m == 1 {
                trace.steps.push(step(StepKind::MinusFour, n, beta, Some(c), m, quads));
            } else {
                trace.steps.push(step(StepKind::MinusFour, n, beta, Some(c), m, Vec::new()));
                for q in &quads {
                    delegate(q, trace)?;
                }
            }
            return Ok(());
        }
    }
    let leaf = normalize(&IntPoly::binomial(n, beta));
    trace.steps.push(step(StepKind::Leaf, n, beta, None, n, vec![leaf]));
    Ok(())
}

/// Factors `den(beta) z^n - num(beta)` over `Q`.
pub fn capelli_factor(n: usize, beta: &Rat) -> Result<(Factorization, CapelliTrace)> {
    if beta.is_zero() {
        return Err(Error::Degenerate("z^n - 0 is a pure power of z".into()));
    }
    if n == 0 {
        return Err(Error::Degenerate("exponent must be positive".into()));
    }
    let mut trace = CapelliTrace::default();
    peel(n, beta, &mut trace)?;
    let target = IntPoly::binomial(n, beta);
    let parts = trace.leaves().into_iter().map(|f| (f, 1)).collect();
    Ok((Factorization::assemble(&target, parts), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::{rat, rat_int};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn pth_powers() {
        assert_eq!(is_pth_power(&rat_int(16), 2), Some(rat_int(4)));
        assert_eq!(is_pth_power(&rat_int(-8), 3), Some(rat_int(-2)));
        assert_eq!(is_pth_power(&rat_int(2), 5), None);
        assert_eq!(is_pth_power(&rat(-4, 9), 2), None);
        assert_eq!(is_pth_power(&rat(8, 27), 3), Some(rat(2, 3)));
    }

    #[test]
    fn root_sets() {
        let s: Vec<Rat> = root_set(&rat_int(16), 4).into_iter().collect();
        assert_eq!(s, [-4, -2, 2, 4, 16].map(rat_int).to_vec());
        assert_eq!(root_set(&rat_int(2), 10).into_iter().collect::<Vec<_>>(), vec![rat_int(2)]);
        let s: Vec<Rat> = root_set(&rat_int(64), 6).into_iter().collect();
        assert_eq!(s, [-8, -2, 2, 4, 8, 64].map(rat_int).to_vec());
    }

    #[test]
    fn documented_cases() {
        let (f, _) = capelli_factor(4, &rat_int(2)).unwrap();
        assert!(f.is_irreducible());
        let (f, t) = capelli_factor(4, &rat_int(16)).unwrap();
        assert_eq!(f.factors.iter().map(|x| x.poly.clone()).collect::<Vec<_>>(), vec![p(&[-2, 1]), p(&[2, 1]), p(&[4, 0, 1])]);
        assert!(matches!(t.steps[0].kind, StepKind::PthRoot { p: 2 }));
        let (f, t) = capelli_factor(4, &rat_int(-4)).unwrap();
        assert_eq!(f.factors.iter().map(|x| x.poly.clone()).collect::<Vec<_>>(), vec![p(&[2, -2, 1]), p(&[2, 2, 1])]);
        assert_eq!(t.steps[0].kind, StepKind::MinusFour);
    }

    #[test]
    fn twelfth_power_of_two() {
        let (f, _) = capelli_factor(12, &rat_int(64)).unwrap();
        assert_eq!(f.degree_multiset(), vec![2, 2, 4, 4]);
        assert_eq!(f.expand(), p(&[-64, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn rational_beta_keeps_unit() {
        let (f, _) = capelli_factor(2, &rat(4, 9)).unwrap();
        assert_eq!(f.expand(), p(&[-4, 0, 9]));
        let (f, _) = capelli_factor(3, &rat(-1, 1)).unwrap();
        assert_eq!(f.expand(), p(&[1, 0, 0, 1]));
        assert!(capelli_factor(3, &rat_int(0)).is_err());
    }
}
