//! Primality, small-prime enumeration and integer factor finding.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The primes `< bound`, by sieve.
pub fn primes_below(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Primes in increasing order starting at `start`.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| is_prime_u64(n))
}

/// Miller–Rabin with the first twelve prime bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return is_probable_prime(&-n);
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().expect("n > 1");
    let d = &nm1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard–Brent rho; `None` when `budget` iterations find nothing.
pub fn pollard_brent(n: &BigInt, budget: u64) -> Option<BigInt> {
    let n = n.abs();
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let one = BigInt::one();
    let mut spent = 0u64;
    for c in 1u64.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % &n;
        let (mut y, mut r, mut q) = (BigInt::from(2), 1u64, BigInt::one());
        let mut g;
        let mut x;
        let mut ys;
        let m = 64u64;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            loop {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % &n;
                }
                g = q.gcd(&n);
                k += m;
                spent += m;
                if k >= r || g != one {
                    break;
                }
            }
            r *= 2;
            if g != one || spent > budget {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(&n);
                if g != one {
                    break;
                }
            }
        }
        if g != one && g != n {
            return Some(g);
        }
        if spent > budget {
            return None;
        }
    }
    None
}

/// Outcome of a prime-factor search with a work budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorSearch {
    /// A prime factor of the input.
    Prime(BigInt),
    /// No prime factor was isolated; this composite cofactor resisted.
    Unresolved(BigInt),
}

const TRIAL_BOUND: u64 = 10_000;

/// Finds some prime factor of `|n| > 1`, preferring small ones.
pub fn find_prime_factor(n: &BigInt, budget: u64) -> FactorSearch {
    let n = n.abs();
    debug_assert!(n > BigInt::one());
    for p in primes_below(TRIAL_BOUND) {
        if (&n % p).is_zero() {
            return FactorSearch::Prime(BigInt::from(p));
        }
    }
    let mut m = n;
    loop {
        if is_probable_prime(&m) {
            return FactorSearch::Prime(m);
        }
        match pollard_brent(&m, budget) {
            Some(d) => {
                let other = &m / &d;
                m = d.min(other);
            }
            None => return FactorSearch::Unresolved(m),
        }
    }
}

/// Full factorization of a nonzero integer; the second component holds any
/// cofactor that could not be split within the budget.
pub fn factorize(n: &BigInt, budget: u64) -> (Vec<(BigInt, u32)>, Option<BigInt>) {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut push = |p: BigInt, e: u32| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += e,
        None => out.push((p, e)),
    };
    let mut stuck = None;
    while n > BigInt::one() {
        match find_prime_factor(&n, budget) {
            FactorSearch::Prime(p) => {
                let mut e = 0;
                while (&n % &p).is_zero() {
                    n /= &p;
                    e += 1;
                }
                push(p, e);
            }
            FactorSearch::Unresolved(c) => {
                stuck = Some(c);
                break;
            }
        }
    }
    out.sort();
    (out, stuck)
}

/// Removes every prime of `primes` from `n`.
pub fn strip_primes(n: &BigInt, primes: &BTreeSet<u64>) -> BigInt {
    let mut n = n.clone();
    for &p in primes {
        let p = BigInt::from(p);
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            n = q;
        }
    }
    n
}
