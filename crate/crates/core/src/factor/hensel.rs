//! Quadratic multifactor Hensel lifting over a factor tree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::modpoly::{self, ModPoly};
use crate::exactnum::poly::IntPoly;
use crate::exactnum::zp::Zp;

/// Dense polynomial over `Z / mZ`, coefficients in `[0, m)`, ascending.
type BigModPoly = Vec<BigInt>;

fn reduce(a: &[BigInt], m: &BigInt) -> BigModPoly {
    let mut out: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> BigModPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let s: Vec<BigInt> = (0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect();
    reduce(&s, m)
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> BigModPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let s: Vec<BigInt> = (0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect();
    reduce(&s, m)
}

fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> BigModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

/// Division by a monic `b`.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (BigModPoly, BigModPoly) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.truncate(db);
    (reduce(&q, m), reduce(&r, m))
}

fn lift_mod(a: &[u64]) -> BigModPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One step `f = g h (mod m)`, `s g + t h = 1 (mod m)` to the same
/// relations modulo `m^2`; `g`, `h` monic.
fn step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (BigModPoly, BigModPoly, BigModPoly, BigModPoly) {
    let e = sub(f, &mul(g, h, m2), m2);
    let (q, r) = divrem_monic(&mul(s, &e, m2), h, m2);
    let g1 = add(g, &add(&mul(t, &e, m2), &mul(&q, g, m2), m2), m2);
    let h1 = add(h, &r, m2);
    let b = sub(&add(&mul(s, &g1, m2), &mul(t, &h1, m2), m2), &[BigInt::one()], m2);
    let (c, d) = divrem_monic(&mul(s, &b, m2), &h1, m2);
    let s1 = sub(s, &d, m2);
    let t1 = sub(t, &add(&mul(t, &b, m2), &mul(&c, &g1, m2), m2), m2);
    (g1, h1, s1, t1)
}

fn product(fp: &Zp, fs: &[ModPoly]) -> ModPoly {
    fs.iter().fold(vec![1], |acc, f| modpoly::mul(fp, &acc, f))
}

fn lift_node(fp: &Zp, f: &[BigInt], factors: &[ModPoly], levels: u32, out: &mut Vec<BigModPoly>) {
    if factors.len() == 1 {
        out.push(f.to_vec());
        return;
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let (g0, h0) = (product(fp, left), product(fp, right));
    let (one, s0, t0) = modpoly::ext_gcd(fp, &g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let mut m = BigInt::from(fp.modulus());
    let (mut g, mut h, mut s, mut t) = (lift_mod(&g0), lift_mod(&h0), lift_mod(&s0), lift_mod(&t0));
    for _ in 0..levels {
        m = &m * &m;
        let fm = reduce(f, &m);
        (g, h, s, t) = step(&fm, &g, &h, &s, &t, &m);
    }
    lift_node(fp, &g, left, levels, out);
    lift_node(fp, &h, right, levels, out);
}

/// Lifts `f = lc(f) * prod factors (mod p)` to monic factors modulo
/// `p^(2^levels)`, returned together with that modulus. The factors must be
/// monic, pairwise coprime mod `p`, and `p` must not divide `lc(f)`.
pub fn lift(f: &IntPoly, factors: &[ModPoly], p: u64, levels: u32) -> (Vec<BigModPoly>, BigInt) {
    let fp = Zp::new(p);
    let mut modulus = BigInt::from(p);
    for _ in 0..levels {
        modulus = &modulus * &modulus;
    }
    let lc = f.leading().expect("nonzero");
    let inv = lc.extended_gcd(&modulus).x.mod_floor(&modulus);
    let monic = reduce(&f.scale(&inv).into_coeffs(), &modulus);
    let mut out = Vec::with_capacity(factors.len());
    lift_node(&fp, &monic, factors, levels, &mut out);
    (out, modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_a_known_split() {
        // (z^2 - 2)(3z + 1) = 3z^3 + z^2 - 6z - 2 splits mod 5 as (z^2 + 3)(z + 2).
        let f = IntPoly::from_i64(&[-2, -6, 1, 3]);
        let fp = Zp::new(5);
        let factors = vec![vec![3, 0, 1], vec![2, 1]];
        assert_eq!(modpoly::mul(&fp, &factors[0], &factors[1]), modpoly::monic(&fp, &f.to_mod(&fp)));
        let (lifted, m) = lift(&f, &factors, 5, 3);
        assert_eq!(m, BigInt::from(390625));
        // Monic lift of z^2 - 2 stays z^2 - 2.
        assert_eq!(lifted[0], reduce(&[BigInt::from(-2), BigInt::zero(), BigInt::one()], &m));
        // z + 1/3 mod 5^8.
        let third = BigInt::from(3).extended_gcd(&m).x.mod_floor(&m);
        assert_eq!(lifted[1], vec![third, BigInt::one()]);
    }
}
