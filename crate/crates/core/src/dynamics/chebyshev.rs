use num_bigint::BigInt;
use num_traits::One;

use super::map::RationalMap;
use crate::exactnum::poly::IntPoly;

/// `T_d` with `T_d(w + 1/w) = w^d + w^-d`, from `T_(k+1) = z T_k - T_(k-1)`,
/// `T_0 = 2`, `T_1 = z`.
pub fn chebyshev(d: usize) -> IntPoly {
    assert!(d >= 1, "Chebyshev index must be positive");
    let z = IntPoly::z();
    let (mut prev, mut cur) = (IntPoly::constant(BigInt::from(2)), z.clone());
    for _ in 1..d {
        let next = &(&z * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    assert!(commutes_with_projection(&cur, d), "T_{d} failed the w + 1/w identity");
    cur
}

/// Checks `w^d T(w + 1/w) = w^(2d) + 1` as a polynomial identity in `w`.
pub fn commutes_with_projection(t: &IntPoly, d: usize) -> bool {
    let num = IntPoly::from_i64(&[1, 0, 1]);
    let w = IntPoly::z();
    let mut lhs = IntPoly::zero();
    for (i, c) in t.coeffs().iter().enumerate() {
        if i > d {
            return false;
        }
        lhs = &lhs + &(&num.pow(i as u32) * &w.pow((d - i) as u32)).scale(c);
    }
    lhs == &IntPoly::monomial(BigInt::one(), 2 * d) + &IntPoly::one()
}

pub fn chebyshev_map(d: usize) -> RationalMap {
    RationalMap::polynomial(&chebyshev(d)).expect("T_d is a polynomial of degree d >= 2")
}
