use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dynamics::RationalMap;
use crate::error::{Error, Result};
use crate::exactnum::rat::{ln_abs, Rat};

/// Solves `m u = rhs` over `Q` for a square nonsingular `m`.
fn solve(m: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| row.iter().chain(std::iter::once(r)).map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().expect("augmented")).collect())
}

fn ln_rat(q: &Rat) -> f64 {
    ln_abs(q.numer()) - ln_abs(q.denom())
}

/// An explicit `C` with `|h(phi(P)) - d h(P)| <= C` for all `P` in `P^1(Q)`.
///
/// Upper direction: `ln max(|F|_1, |G|_1)`. Lower direction: `ln K` where
/// `A_i F + B_i G = Res(F, G) X_i^(2d-1)` for `X_i` in `{X, Y}` with
/// `K = max_i |A_i|_1 + |B_i|_1`; the gcd of `F(P)` and `G(P)` divides the
/// resultant, which cancels.
pub fn height_commute_bound(phi: &RationalMap) -> Result<f64> {
    let d = phi.degree();
    let norm1 = |c: &[BigInt]| c.iter().map(|x| x.abs()).sum::<BigInt>();
    let upper = ln_abs(&norm1(phi.f().coeffs()).max(norm1(phi.g().coeffs())));
    // Columns: A's coefficients (X^j Y^(d-1-j)), then B's. Rows: X^k Y^(2d-1-k).
    let size = 2 * d;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for j in 0..d {
        for (i, c) in phi.f().coeffs().iter().enumerate() {
            m[i + j][j] = c.clone();
        }
        for (i, c) in phi.g().coeffs().iter().enumerate() {
            m[i + j][d + j] = c.clone();
        }
    }
    let res = phi.resultant();
    let mut k = 0.0f64;
    for target in [size - 1, 0] {
        let mut rhs = vec![BigInt::zero(); size];
        rhs[target] = res.clone();
        let u = solve(&m, &rhs).ok_or_else(|| Error::InvalidMap("singular Sylvester system".into()))?;
        let total: Rat = u.iter().map(|x| x.abs()).sum();
        k = k.max(ln_rat(&total));
    }
    Ok(upper.max(k).max(0.0))
}
