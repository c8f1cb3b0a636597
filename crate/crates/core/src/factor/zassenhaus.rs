//! Zassenhaus factorization of squarefree primitive integer polynomials.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hensel;
use super::modp::{distinct_degree, equal_degree, is_good_prime};
use crate::exactnum::modpoly::ModPoly;
use crate::exactnum::poly::IntPoly;
use crate::exactnum::primes::is_prime_u64;
use crate::exactnum::zp::Zp;

/// Good primes whose degree patterns are intersected before lifting; large
/// inputs try harder since lifting them is expensive.
const PATTERN_PRIMES_SMALL: usize = 5;
const PATTERN_PRIMES_LARGE: usize = 12;
const LARGE_DEGREE: usize = 64;

/// Degree pattern of `f` modulo one prime.
struct Pattern {
    p: u64,
    ddf: Vec<(usize, ModPoly)>,
}

impl Pattern {
    fn factor_count(&self) -> usize {
        self.ddf.iter().map(|(k, g)| (g.len() - 1) / k).sum()
    }

    /// `sums[j]` is true when some subset of the local factors has degree `j`.
    fn subset_sums(&self, n: usize) -> Vec<bool> {
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for (k, g) in &self.ddf {
            for _ in 0..(g.len() - 1) / k {
                for j in (*k..=n).rev() {
                    if sums[j - k] {
                        sums[j] = true;
                    }
                }
            }
        }
        sums
    }
}

/// Irreducible factors of a squarefree primitive `f` with positive leading
/// coefficient; each returned factor is primitive with positive leading
/// coefficient.
pub fn factor_squarefree(f: &IntPoly, seed: u64) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    if f.coeff(0).is_zero() {
        let rest = f.strip_zero_roots();
        let mut out = vec![IntPoly::z()];
        if rest.deg() > 0 {
            out.extend(factor_squarefree(&rest, seed));
        }
        return out;
    }
    let lc = f.leading().unwrap().clone();
    let mut possible = vec![true; n + 1];
    let mut best: Option<Pattern> = None;
    let mut seen = 0;
    let wanted = if n > LARGE_DEGREE { PATTERN_PRIMES_LARGE } else { PATTERN_PRIMES_SMALL };
    let mut p = 3u64;
    while seen < wanted && p < 1 << 16 {
        if is_prime_u64(p) && !(&lc % p).is_zero() {
            let fp = Zp::new(p);
            let fbar = f.to_mod(&fp);
            if is_good_prime(&fp, &fbar, n) {
                let monic = crate::exactnum::modpoly::monic(&fp, &fbar);
                let pattern = Pattern { p, ddf: distinct_degree(&fp, &monic) };
                seen += 1;
                for (slot, ok) in possible.iter_mut().zip(pattern.subset_sums(n)) {
                    *slot &= ok;
                }
                if pattern.factor_count() == 1 || possible.iter().filter(|&&b| b).count() == 2 {
                    return vec![f.clone()];
                }
                if best.as_ref().is_none_or(|b| pattern.factor_count() < b.factor_count()) {
                    best = Some(pattern);
                }
            }
        }
        p += 2;
    }
    let best = best.expect("some prime below 2^16 is good for a squarefree polynomial");
    let fp = Zp::new(best.p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ best.p);
    let mut local: Vec<ModPoly> = Vec::new();
    for (k, g) in &best.ddf {
        local.extend(equal_degree(&fp, g, *k, &mut rng));
    }
    local.sort();
    recombine(f, &local, best.p, &possible)
}

/// Smallest `levels` with `p^(2^levels) > 2 |lc| 2^n ||f||_2`.
fn lift_levels(f: &IntPoly, p: u64) -> u32 {
    let bound: BigInt = BigInt::from(2) * f.leading().unwrap().abs() * (BigInt::one() << f.deg()) * f.norm2_ceil();
    let mut m = BigInt::from(p);
    let mut levels = 0;
    while m <= bound {
        m = &m * &m;
        levels += 1;
    }
    levels
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

fn recombine(f: &IntPoly, local: &[ModPoly], p: u64, possible: &[bool]) -> Vec<IntPoly> {
    let levels = lift_levels(f, p);
    let (lifted, m) = hensel::lift(f, local, p, levels);
    let half = &m >> 1;
    let mut f = f.clone();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut out = Vec::new();
    let mut s = 1;
    'sizes: while 2 * s <= remaining.len() {
        for subset in remaining.iter().copied().combinations(s) {
            let deg: usize = subset.iter().map(|&i| lifted[i].len() - 1).sum();
            if !possible[deg] {
                continue;
            }
            let lc = f.leading().unwrap().clone();
            let c0 = subset.iter().fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(&m));
            let c0 = symmetric(&c0, &m, &half);
            if c0.is_zero() || !(&lc * f.coeff(0)).is_multiple_of(&c0) {
                continue;
            }
            let mut g = vec![lc.clone()];
            for &i in &subset {
                let mut prod = vec![BigInt::zero(); g.len() + lifted[i].len() - 1];
                for (a, x) in g.iter().enumerate() {
                    for (b, y) in lifted[i].iter().enumerate() {
                        prod[a + b] += x * y;
                    }
                }
                g = prod.iter().map(|c| c.mod_floor(&m)).collect();
            }
            let g = IntPoly::new(g.iter().map(|c| symmetric(c, &m, &half)).collect()).primitive_part();
            if let Some(q) = f.div_exact(&g) {
                out.push(g);
                f = q.primitive_part();
                remaining.retain(|i| !subset.contains(i));
                continue 'sizes;
            }
        }
        s += 1;
    }
    if f.deg() > 0 {
        out.push(f.primitive_part());
    }
    out
}
