//! Complex root approximation with a posteriori inclusion radii, and the
//! logarithmic Mahler measure built on it.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::poly::IntPoly;
use crate::exactnum::rat::ln_abs;

const MAX_SWEEPS: usize = 2000;

/// Root approximations `roots[i]`, with some true root within `radii[i]` of
/// each, matched one-to-one with the true roots (with multiplicity).
#[derive(Debug, Clone)]
pub struct RootApprox {
    pub roots: Vec<Complex64>,
    pub radii: Vec<f64>,
}

/// Coefficients as `f64` after dividing by a power of two so the largest
/// fits; returns the coefficients and the exponent taken out.
fn scaled_coeffs(f: &IntPoly) -> Result<(Vec<f64>, i64)> {
    let bits = f.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0) as i64;
    let shift = (bits - 900).max(0);
    let out = f
        .coeffs()
        .iter()
        .map(|c| {
            let v: BigInt = if shift > 0 { c >> shift as usize } else { c.clone() };
            v.to_f64().ok_or_else(|| Error::Unsupported("coefficient conversion".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((out, shift))
}

/// `(ln |p(z)|, ln sum |c_k| |z|^k, ln |p'(z)/p(z)| direction)` evaluated
/// stably: for `|z| > 1` through the reversed polynomial.
struct Eval {
    ln_abs_p: f64,
    ln_abs_sum: f64,
    newton: Complex64,
}

fn evaluate(c: &[f64], z: Complex64) -> Eval {
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp, mut s) = (Complex64::zero(), Complex64::zero(), 0.0);
        for &ck in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + ck;
            s = s * z.norm() + ck.abs();
        }
        Eval { ln_abs_p: p.norm().ln(), ln_abs_sum: s.ln(), newton: p / dp }
    } else {
        // p(z) = z^n r(w), w = 1/z, r(w) = sum c_k w^(n-k)
        let w = z.inv();
        let (mut r, mut dr, mut s) = (Complex64::zero(), Complex64::zero(), 0.0);
        for &ck in c.iter() {
            dr = dr * w + r;
            r = r * w + ck;
            s = s * w.norm() + ck.abs();
        }
        let ln_z = z.norm().ln();
        // p'/p = (n - w r'/r) / z
        let ratio = (Complex64::new(n as f64, 0.0) - w * dr / r) / z;
        Eval { ln_abs_p: n as f64 * ln_z + r.norm().ln(), ln_abs_sum: n as f64 * ln_z + s.ln(), newton: ratio.inv() }
    }
}

/// Approximates all roots of `f` (degree >= 1, `f(0) != 0`) by Aberth
/// iteration and attaches inclusion radii.
pub fn isolate_roots(f: &IntPoly) -> Result<RootApprox> {
    let n = f.deg();
    assert!(n >= 1 && !f.coeff(0).is_zero());
    let (c, _) = scaled_coeffs(f)?;
    if n == 1 {
        let root = Complex64::new(-c[0] / c[1], 0.0);
        let radius = root.norm() * 4.0 * f64::EPSILON;
        return Ok(RootApprox { roots: vec![root], radii: vec![radius] });
    }
    let lc_ln = c[n].abs().ln();
    let radius = ((c[0].abs().ln() - lc_ln) / n as f64).exp();
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..MAX_SWEEPS {
        let mut moved = 0.0f64;
        for k in 0..n {
            let e = evaluate(&c, z[k]);
            if !e.ln_abs_p.is_finite() {
                continue;
            }
            let ratio = e.newton;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / z[k].norm().max(1e-300));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    let radii = inclusion_radii(&c, &z);
    Ok(RootApprox { roots: z, radii })
}

/// Radii `n (|p(z_i)| + slack) / |lc prod (z_i - z_j)|`, widened across
/// overlapping disks so each center is matched to a root of its cluster.
fn inclusion_radii(c: &[f64], z: &[Complex64]) -> Vec<f64> {
    let n = z.len();
    let gamma = 4.0 * (n as f64 + 2.0) * f64::EPSILON;
    let lc_ln = c[n].abs().ln();
    let mut r: Vec<f64> = (0..n)
        .map(|i| {
            let e = evaluate(c, z[i]);
            let slack = gamma.ln() + e.ln_abs_sum;
            let num = (n as f64).ln() + log_add(e.ln_abs_p, slack);
            let den: f64 = lc_ln + (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).norm().ln()).sum::<f64>();
            (num - den).exp()
        })
        .collect();
    // Union-find over overlapping disks.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= r[i] + r[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut span = vec![0.0f64; n];
    let mut size = vec![0usize; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        span[root] += 2.0 * r[i];
        size[root] += 1;
    }
    for i in 0..n {
        let root = find(&mut parent, i);
        if size[root] > 1 {
            r[i] = span[root];
        }
    }
    r
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `ln M(f)` with a rigorous bound on the rounding error, for `f` of
/// positive degree.
pub fn log_mahler_measure(f: &IntPoly) -> Result<(f64, f64)> {
    let core = f.strip_zero_roots();
    let lc = ln_abs(core.leading().expect("nonzero"));
    let mut value = lc;
    let mut err = 4.0 * f64::EPSILON * lc.abs();
    if core.deg() == 0 {
        return Ok((value, err));
    }
    let approx = isolate_roots(&core)?;
    for (z, r) in approx.roots.iter().zip(&approx.radii) {
        let a = z.norm();
        let est = a.max(1.0).ln();
        let lo = (a - r).max(1.0).ln();
        let hi = (a + r).max(1.0).ln();
        value += est;
        err += (hi - est).max(est - lo) + 4.0 * f64::EPSILON * est;
    }
    if !value.is_finite() || !err.is_finite() {
        return Err(Error::RootFinding { requested: 0.0, achieved: f64::INFINITY });
    }
    Ok((value, err))
}
