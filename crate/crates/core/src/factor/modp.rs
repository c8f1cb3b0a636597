//! Factorization of squarefree polynomials over small prime fields:
//! distinct-degree splitting through a Frobenius matrix, then
//! Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::Rng;

use crate::exactnum::modpoly::{self, ModPoly};
use crate::exactnum::zp::Zp;

/// Rows `z^(i p) mod f` for `i < deg f`, so that `h^p mod f` is a single
/// vector-matrix product.
pub struct Frobenius {
    rows: Vec<ModPoly>,
    n: usize,
}

impl Frobenius {
    /// Builds the matrix by repeated multiplication by `z`; `f` monic, `p < 2^16`.
    pub fn new(fp: &Zp, f: &[u64]) -> Frobenius {
        let p = fp.modulus() as usize;
        assert!(p < 1 << 16, "delayed reduction needs p < 2^16");
        let n = f.len() - 1;
        let mut rows = Vec::with_capacity(n);
        let mut cur = vec![0u64; n];
        cur[0] = 1;
        rows.push(cur.clone());
        for j in 1..(n.saturating_sub(1)) * p + 1 {
            // cur <- z * cur mod f
            let top = cur[n - 1];
            for i in (1..n).rev() {
                cur[i] = fp.sub(cur[i - 1], fp.mul(top, f[i]));
            }
            cur[0] = fp.neg(fp.mul(top, f[0]));
            if j % p == 0 {
                rows.push(cur.clone());
            }
        }
        Frobenius { rows, n }
    }

    /// `h^p mod f` for `deg h < deg f`.
    pub fn apply(&self, fp: &Zp, h: &[u64]) -> ModPoly {
        let mut acc = vec![0u64; self.n];
        for (hi, row) in h.iter().zip(&self.rows) {
            if *hi == 0 {
                continue;
            }
            for (a, r) in acc.iter_mut().zip(row) {
                *a += hi * r;
            }
        }
        modpoly::trim(acc.into_iter().map(|a| a % fp.modulus()).collect())
    }
}

/// Distinct-degree factorization of a monic squarefree `f`: pairs
/// `(k, g_k)` where `g_k` is the product of all irreducible factors of
/// degree `k`.
pub fn distinct_degree(fp: &Zp, f: &[u64]) -> Vec<(usize, ModPoly)> {
    let n = f.len() - 1;
    if n <= 1 {
        return if n == 1 { vec![(1, f.to_vec())] } else { Vec::new() };
    }
    let frob = Frobenius::new(fp, f);
    let z = vec![0, 1];
    let mut h = modpoly::rem(fp, &z, f);
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut k = 0;
    while rest.len() > 2 * (k + 1) {
        k += 1;
        h = frob.apply(fp, &h);
        let probe = modpoly::rem(fp, &modpoly::sub(fp, &h, &z), &rest);
        let g = modpoly::gcd(fp, &rest, &probe);
        if g.len() > 1 {
            rest = modpoly::divrem(fp, &rest, &g).0;
            out.push((k, g));
        }
    }
    if rest.len() > 1 {
        out.push((rest.len() - 1, rest));
    }
    out
}

/// Splits a monic product of irreducibles of degree `k` (odd `p`).
pub fn equal_degree<R: Rng>(fp: &Zp, g: &[u64], k: usize, rng: &mut R) -> Vec<ModPoly> {
    let d = g.len() - 1;
    if d == k {
        return vec![g.to_vec()];
    }
    let p = fp.modulus();
    let e: BigUint = (BigUint::from(p).pow(k as u32) - 1u32) / 2u32;
    loop {
        let a: ModPoly = modpoly::trim((0..d).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = modpoly::powmod(fp, &a, &e, g);
        let c = modpoly::gcd(fp, g, &modpoly::sub(fp, &b, &[1]));
        if c.len() > 1 && c.len() < g.len() {
            let other = modpoly::divrem(fp, g, &c).0;
            let mut out = equal_degree(fp, &c, k, rng);
            out.extend(equal_degree(fp, &other, k, rng));
            return out;
        }
    }
}

/// `true` when `f mod p` keeps its degree and is squarefree.
pub fn is_good_prime(fp: &Zp, f: &[u64], degree: usize) -> bool {
    f.len() == degree + 1 && modpoly::gcd(fp, f, &modpoly::derivative(fp, f)).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn frobenius_matches_powering() {
        let fp = Zp::new(7);
        let f = vec![3, 1, 0, 5, 1];
        let frob = Frobenius::new(&fp, &f);
        let h = vec![2, 0, 6, 1];
        let direct = modpoly::powmod(&fp, &h, &BigUint::from(7u32), &f);
        assert_eq!(frob.apply(&fp, &h), direct);
    }

    #[test]
    fn splits_product_of_linears() {
        let fp = Zp::new(11);
        // (z-1)(z-2)(z-3)(z^2+1); z^2+1 is irreducible mod 11.
        let mut f = vec![1];
        for r in [1u64, 2, 3] {
            f = modpoly::mul(&fp, &f, &[fp.neg(r), 1]);
        }
        f = modpoly::mul(&fp, &f, &[1, 0, 1]);
        let ddf = distinct_degree(&fp, &f);
        assert_eq!(ddf.iter().map(|(k, g)| (*k, g.len() - 1)).collect::<Vec<_>>(), vec![(1, 3), (2, 2)]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut lin = equal_degree(&fp, &ddf[0].1, 1, &mut rng);
        lin.sort();
        assert_eq!(lin, vec![vec![8, 1], vec![9, 1], vec![10, 1]]);
    }
}
