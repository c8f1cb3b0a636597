//! Resultants and discriminants.
//!
//! Sign convention: `resultant(f, g)` is the determinant of the Sylvester
//! matrix with the `deg g` shifted rows of `f` (descending coefficients) on
//! top, followed by the `deg f` rows of `g`. Equivalently
//! `Res(f, g) = lc(f)^deg g * prod g(roots of f)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::form::BinaryForm;
use super::modpoly;
use super::poly::IntPoly;
use super::primes::is_prime_u64;
use super::rat::ln_abs;
use super::zp::Zp;
use crate::error::{Error, Result};

fn sign(odd: bool) -> BigInt {
    if odd {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// Exact resultant of two nonzero polynomials.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (m, n) = (f.deg(), g.deg());
    if n == 0 {
        return Ok(num_traits::pow(g.coeff(0), m));
    }
    if m == 0 {
        return Ok(num_traits::pow(f.coeff(0), n));
    }
    Ok(modular_resultant(f, g))
}

/// Resultant of two forms at their formal degrees (Sylvester determinant of
/// the padded coefficient rows). Vanishes iff the forms share a projective
/// root, counting `[1:0]`.
pub fn form_resultant(a: &BinaryForm, b: &BinaryForm) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    if b.degree() == 1 {
        // Res(F, l1 X + l0 Y) = (-1)^m F(-l0, l1)
        let c = b.coeffs();
        return sign(a.degree() % 2 == 1) * a.eval(&-&c[0], &c[1]);
    }
    if a.degree() == 1 {
        return sign(b.degree() % 2 == 1) * form_resultant(b, a);
    }
    let (k, l) = (a.infinity_multiplicity(), b.infinity_multiplicity());
    if k > 0 && l > 0 {
        return BigInt::zero();
    }
    let (f, g) = (a.dehomogenize(), b.dehomogenize());
    let n = b.degree();
    let core = resultant(&f, &g).expect("nonzero forms");
    if k > 0 {
        // Expanding the leading column k times.
        let lc = g.leading().unwrap();
        sign(n * k % 2 == 1) * num_traits::pow(lc.clone(), k) * core
    } else if l > 0 {
        let lc = f.leading().unwrap();
        num_traits::pow(lc.clone(), l) * core
    } else {
        core
    }
}

/// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(BigInt::zero());
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative())?;
    Ok(sign((n * (n - 1) / 2) % 2 == 1) * r / f.leading().unwrap())
}

/// Sylvester matrix at the formal degrees given by the slice lengths; both
/// coefficient slices are in descending order.
pub fn sylvester_matrix(f_desc: &[BigInt], g_desc: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (m, n) = (f_desc.len() - 1, g_desc.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        row[i..i + m + 1].clone_from_slice(f_desc);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        row[i..i + n + 1].clone_from_slice(g_desc);
        rows.push(row);
    }
    rows
}

/// Fraction-free (Bareiss) determinant.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// The resultant by direct Sylvester determinant; slow, used to cross-check.
pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let desc = |p: &IntPoly| p.coeffs().iter().rev().cloned().collect::<Vec<_>>();
    bareiss_determinant(sylvester_matrix(&desc(f), &desc(g)))
}

fn res_mod_p(fp: &Zp, mut a: Vec<u64>, mut b: Vec<u64>) -> u64 {
    let mut acc = 1u64;
    loop {
        let (m, n) = (a.len() - 1, b.len() - 1);
        if n == 0 {
            return fp.mul(acc, fp.pow(b[0], m as u64));
        }
        let r = modpoly::rem(fp, &a, &b);
        if r.is_empty() {
            return 0;
        }
        let k = r.len() - 1;
        acc = fp.mul(acc, fp.pow(*b.last().unwrap(), (m - k) as u64));
        if m * n % 2 == 1 {
            acc = fp.neg(acc);
        }
        a = b;
        b = r;
    }
}

/// Multimodular resultant with CRT reconstruction under the Hadamard bound.
fn modular_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = (f.deg() as f64, g.deg() as f64);
    let norm = |p: &IntPoly| ln_abs(&p.norm2_ceil());
    let bound_bits = (n * norm(f) + m * norm(g)) / std::f64::consts::LN_2 + 2.0;
    let lcs = f.leading().unwrap() * g.leading().unwrap();
    let mut residue = BigInt::zero();
    let mut modulus = BigInt::one();
    let mut p = (1u64 << 31) - 1;
    while (modulus.bits() as f64) < bound_bits {
        while !is_prime_u64(p) || (&lcs % p).is_zero() {
            p -= 2;
        }
        let fp = Zp::new(p);
        let r = res_mod_p(&fp, f.to_mod(&fp), g.to_mod(&fp));
        // residue + modulus * ((r - residue) / modulus mod p)
        let cur = fp.from_bigint(&residue);
        let minv = fp.inv(fp.from_bigint(&modulus));
        let t = fp.mul(fp.sub(r, cur), minv);
        residue += &modulus * BigInt::from(t);
        modulus *= p;
        p -= 2;
    }
    let half = &modulus >> 1;
    if residue > half {
        residue -= &modulus;
    }
    residue
}

/// `true` when `|n|` has a prime factor outside `primes` (`n != 0`).
pub fn has_prime_outside(n: &BigInt, primes: &std::collections::BTreeSet<u64>) -> bool {
    !super::primes::strip_primes(n, primes).abs().is_one()
}
