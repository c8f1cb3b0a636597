//! Word-sized prime-field arithmetic with Barrett reduction.

/// The field `Z/pZ` for a prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zp {
    p: u64,
    barrett: u64,
}

impl Zp {
    pub fn new(p: u64) -> Zp {
        assert!((2..1 << 31).contains(&p), "modulus out of range");
        Zp { p, barrett: u64::MAX / p }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces any `x < 2^64`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    /// Image of a big integer.
    pub fn from_bigint(&self, n: &num_bigint::BigInt) -> u64 {
        use num_traits::ToPrimitive;
        let r = n % num_bigint::BigInt::from(self.p);
        let r = r.to_i64().expect("residue fits");
        if r < 0 {
            (r + self.p as i64) as u64
        } else {
            r as u64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barrett_matches_remainder() {
        let f = Zp::new(2_147_483_629);
        for x in [0u64, 1, 2_147_483_629, u64::MAX, 1 << 62, 123_456_789_012_345] {
            assert_eq!(f.reduce(x), x % 2_147_483_629);
        }
        let g = Zp::new(7);
        assert_eq!(g.mul(g.inv(3), 3), 1);
        assert_eq!(g.from_bigint(&num_bigint::BigInt::from(-1)), 6);
    }
}
