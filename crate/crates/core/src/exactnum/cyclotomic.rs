use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::IntPoly;

/// Möbius function by trial division.
pub fn moebius(mut n: u64) -> i8 {
    assert!(n > 0);
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// The `m`-th cyclotomic polynomial, from `prod_{d|m} (z^d - 1)^mu(m/d)`.
pub fn cyclotomic(m: usize) -> IntPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in (1..=m).filter(|d| m % d == 0) {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = -BigInt::one();
        c[d] = BigInt::one();
        let zd = IntPoly::new(c);
        match moebius((m / d) as u64) {
            1 => num = &num * &zd,
            -1 => den = &den * &zd,
            _ => {}
        }
    }
    num.div_exact(&den).expect("Möbius product is exact")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), IntPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_and_mu() {
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
        assert_eq!(moebius(1), 1);
    }

    #[test]
    fn division_oracle() {
        // Phi_6 = (z^6 - 1) / (Phi_1 Phi_2 Phi_3)
        let z6 = IntPoly::from_i64(&[-1, 0, 0, 0, 0, 0, 1]);
        let lower = &(&cyclotomic(1) * &cyclotomic(2)) * &cyclotomic(3);
        assert_eq!(z6.div_exact(&lower).unwrap(), cyclotomic(6));
    }
}
