//! p-adic Newton polygons, reported as root valuations.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::poly::IntPoly;
use super::primes::is_prime_u64;
use super::rat::{int_valuation, Rat};
use crate::error::{Error, Result};

/// One edge of the lower hull: `multiplicity` roots of valuation
/// `root_valuation` (the negated hull slope).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonSegment {
    #[serde(with = "super::rat::serde_rat")]
    pub root_valuation: Rat,
    pub multiplicity: usize,
}

/// Newton polygon of `f` at `prime`. Roots at `z = 0` are stripped first and
/// counted in `zero_order`; segments run left to right, so hull slopes
/// increase and root valuations decrease.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    #[serde(serialize_with = "super::rat::serde_display")]
    pub prime: BigInt,
    pub zero_order: usize,
    pub segments: Vec<NewtonSegment>,
}

impl NewtonPolygon {
    /// Valuations of the nonzero roots with multiplicity, ascending.
    pub fn root_valuations(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = self
            .segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.root_valuation.clone(), s.multiplicity))
            .collect();
        out.sort();
        out
    }

    pub fn degree(&self) -> usize {
        self.segments.iter().map(|s| s.multiplicity).sum()
    }

    pub fn min_root_valuation(&self) -> Option<&Rat> {
        self.segments.last().map(|s| &s.root_valuation)
    }

    pub fn max_root_valuation(&self) -> Option<&Rat> {
        self.segments.first().map(|s| &s.root_valuation)
    }
}

/// Lower convex hull of `{(i, v_p(c_i))}`; a constant polynomial gives the
/// empty polygon.
pub fn newton_polygon(f: &IntPoly, p: u64) -> Result<NewtonPolygon> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    newton_polygon_big(f, &BigInt::from(p))
}

/// As [`newton_polygon`] for a prime of any size; primality is the caller's
/// responsibility.
pub fn newton_polygon_big(f: &IntPoly, p: &BigInt) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let zero_order = f.zero_order();
    let pts: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(zero_order)
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, big_valuation(c, p) as i64))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b unless it lies strictly below segment a -> pt.
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            NewtonSegment {
                root_valuation: Rat::new(BigInt::from(-dy), BigInt::from(dx)),
                multiplicity: dx as usize,
            }
        })
        .collect();
    Ok(NewtonPolygon { prime: p.clone(), zero_order, segments })
}

/// `v_p(n)` for nonzero `n` and a prime `p` of any size.
pub fn big_valuation(n: &BigInt, p: &BigInt) -> u64 {
    if let Some(small) = p.to_u64() {
        return int_valuation(n, small).expect("nonzero");
    }
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Orders valuations with `None` standing for `+infinity`.
pub fn cmp_valuation(a: &Option<Rat>, b: &Option<Rat>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
        (Some(x), Some(y)) => x.cmp(y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::{rat, rat_int};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn sqrt_two_at_two() {
        let np = newton_polygon(&p(&[-2, 0, 1]), 2).unwrap();
        assert_eq!(np.segments, vec![NewtonSegment { root_valuation: rat(1, 2), multiplicity: 2 }]);
        assert_eq!(np.prime, BigInt::from(2));
    }

    #[test]
    fn one_plus_minus_sqrt_two_are_units() {
        // (1+sqrt2)(1-sqrt2) = -1, so both roots are 2-adic units.
        let np = newton_polygon(&p(&[-1, -2, 1]), 2).unwrap();
        assert_eq!(np.root_valuations(), vec![rat_int(0), rat_int(0)]);
    }

    #[test]
    fn linear_case() {
        let np = newton_polygon(&p(&[-2, 1]), 2).unwrap();
        assert_eq!(np.root_valuations(), vec![rat_int(1)]);
    }

    #[test]
    fn mixed_slopes_and_zero_roots() {
        // z^2 (z - 4)(4z - 1): roots 4 (v=2), 1/4 (v=-2), 0 twice.
        let f = &(&p(&[0, 0, 1]) * &p(&[-4, 1])) * &p(&[-1, 4]);
        let np = newton_polygon(&f, 2).unwrap();
        assert_eq!(np.zero_order, 2);
        assert_eq!(np.root_valuations(), vec![rat_int(-2), rat_int(2)]);
        assert_eq!(np.max_root_valuation(), Some(&rat_int(2)));
    }

    #[test]
    fn constant_is_empty() {
        let np = newton_polygon(&p(&[12]), 3).unwrap();
        assert!(np.segments.is_empty());
        assert!(newton_polygon(&p(&[]), 3).is_err());
    }
}
