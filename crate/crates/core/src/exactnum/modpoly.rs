//! Dense polynomials over a word-sized prime field, as bare `Vec<u64>`
//! coefficient vectors in ascending degree (empty = zero).

use num_bigint::BigUint;

use super::zp::Zp;

pub type ModPoly = Vec<u64>;

pub fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add(f: &Zp, a: &[u64], b: &[u64]) -> ModPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn sub(f: &Zp, a: &[u64], b: &[u64]) -> ModPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn scale(f: &Zp, a: &[u64], c: u64) -> ModPoly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &Zp, a: &[u64], b: &[u64]) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &Zp, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = f.inv(*b.last().unwrap());
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = f.mul(r[k + db], inv);
        q[k] = c;
        if c == 0 {
            continue;
        }
        let nc = f.neg(c);
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = f.add(r[k + j], f.mul(nc, bj));
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(f: &Zp, a: &[u64], b: &[u64]) -> ModPoly {
    divrem(f, a, b).1
}

pub fn monic(f: &Zp, a: &[u64]) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(f, a, f.inv(lc)),
    }
}

/// Monic greatest common divisor.
pub fn gcd(f: &Zp, a: &[u64], b: &[u64]) -> ModPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// `(g, s, t)` with `s a + t b = g` and `g` monic.
pub fn ext_gcd(f: &Zp, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last() {
        None => (Vec::new(), s0, t0),
        Some(&lc) => {
            let inv = f.inv(lc);
            (scale(f, &r0, inv), scale(f, &s0, inv), scale(f, &t0, inv))
        }
    }
}

pub fn derivative(f: &Zp, a: &[u64]) -> ModPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
            .collect(),
    )
}

pub fn mulmod(f: &Zp, a: &[u64], b: &[u64], m: &[u64]) -> ModPoly {
    rem(f, &mul(f, a, b), m)
}

/// `a^e mod m`.
pub fn powmod(f: &Zp, a: &[u64], e: &BigUint, m: &[u64]) -> ModPoly {
    let mut acc = vec![1u64];
    let base = rem(f, a, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(f, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(f, &acc, &base, m);
        }
    }
    rem(f, &acc, m)
}
