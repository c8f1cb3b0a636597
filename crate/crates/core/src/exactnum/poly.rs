//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::modpoly::{self, ModPoly};
use super::primes::primes_from;
use super::rat::Rat;
use super::zp::Zp;

/// Polynomial in `z` with coefficients in ascending degree order.
///
/// The zero polynomial has no coefficients; every other value has a nonzero
/// leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    /// `c z^k`.
    pub fn monomial(c: BigInt, k: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPoly::new(coeffs)
    }

    /// The identity polynomial `z`.
    pub fn z() -> IntPoly {
        IntPoly::monomial(BigInt::one(), 1)
    }

    /// `den z^n - num` for `beta = num/den`: the cleared form of `z^n - beta`.
    pub fn binomial(n: usize, beta: &Rat) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -beta.numer().clone();
        coeffs[n] += beta.denom();
        IntPoly::new(coeffs)
    }

    /// `b z - a`, the primitive linear polynomial vanishing at `a/b`.
    pub fn linear_root(q: &Rat) -> IntPoly {
        IntPoly::new(vec![-q.numer().clone(), q.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &IntPoly::constant(c.clone());
        }
        acc
    }

    /// `self(z^k)`.
    pub fn inflate(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly::new(coeffs)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + Rat::from_integer(c.clone()))
    }

    /// `sum c_i x^i y^(degree - i)`: the homogenization of formal degree
    /// `degree` evaluated at `(x, y)`.
    pub fn eval_hom(&self, x: &BigInt, y: &BigInt, degree: usize) -> BigInt {
        debug_assert!(self.coeffs.len() <= degree + 1);
        let mut acc = BigInt::zero();
        let mut ypow = BigInt::one();
        let mut coeffs: Vec<BigInt> = self.coeffs.clone();
        coeffs.resize(degree + 1, BigInt::zero());
        // Horner in x, with the y powers accumulated from the top.
        for c in coeffs.iter().rev() {
            acc = acc * x + c * &ypow;
            ypow *= y;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, sign-normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Exact quotient in `Z[z]`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let (n, m) = (self.deg(), d.deg());
        if n < m {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = &r[k + m];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        r.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) self mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero());
        let m = d.deg();
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > m && !r.is_empty() {
            let k = r.len() - 1 - m;
            let top = r.pop().unwrap();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (j, dj) in d.coeffs.iter().take(m).enumerate() {
                r[k + j] -= &top * dj;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly::new(r)
    }

    /// Greatest common divisor in `Z[z]` with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    /// Multiplicity of `z = 0` as a root.
    pub fn zero_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `self / z^k` for `k = zero_order`.
    pub fn strip_zero_roots(&self) -> IntPoly {
        IntPoly::new(self.coeffs[self.zero_order()..].to_vec())
    }

    /// `den^deg * self(z + a/den)`, an integer polynomial whose roots are
    /// the roots of `self` minus `a/den`.
    pub fn shift(&self, by: &Rat) -> IntPoly {
        let n = self.deg();
        // sum c_i (den z + a)^i den^(n-i)
        let lin = IntPoly::new(vec![by.numer().clone(), by.denom().clone()]);
        let mut acc = IntPoly::zero();
        let mut lin_pow = IntPoly::one();
        let mut parts = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            parts.push(lin_pow.clone());
            lin_pow = &lin_pow * &lin;
        }
        let mut den_pow = BigInt::one();
        for i in (0..=n).rev() {
            let c = self.coeff(i);
            if !c.is_zero() {
                acc = &acc + &parts[i].scale(&(c * &den_pow));
            }
            den_pow *= by.denom();
        }
        acc
    }

    /// `z^deg self(1/z)`.
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// Smallest integer `>= ||self||_2`.
    pub fn norm2_ceil(&self) -> BigInt {
        let sq: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let r = sq.sqrt();
        if &r * &r == sq {
            r
        } else {
            r + 1
        }
    }

    pub fn norm1(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn to_mod(&self, f: &Zp) -> ModPoly {
        modpoly::trim(self.coeffs.iter().map(|c| f.from_bigint(c)).collect())
    }

    /// Squarefree test by a gcd modulo a few primes, falling back to `Z[z]`.
    pub fn is_squarefree(&self) -> bool {
        if self.deg() <= 1 {
            return !self.is_zero();
        }
        let lc = self.leading().unwrap();
        let d = self.derivative();
        for p in primes_from(1 << 20).take(3) {
            if (lc % p).is_zero() {
                continue;
            }
            let f = Zp::new(p);
            if modpoly::gcd(&f, &self.to_mod(&f), &d.to_mod(&f)).len() == 1 {
                return true;
            }
        }
        self.gcd(&d).deg() == 0
    }

    /// Squarefree decomposition of the primitive part: pairs `(s_i, i)` with
    /// `pp(self) = prod s_i^i`, each `s_i` squarefree, primitive and of
    /// positive degree.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let f = self.primitive_part();
        if f.deg() == 0 {
            return Vec::new();
        }
        if f.is_squarefree() {
            return vec![(f, 1)];
        }
        let mut g = f.gcd(&f.derivative());
        let mut w = f.div_exact(&g).expect("gcd divides");
        let mut out = Vec::new();
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&g);
            let z = w.div_exact(&y).expect("gcd divides");
            if z.deg() > 0 {
                out.push((z.primitive_part(), i));
            }
            g = g.div_exact(&y).expect("gcd divides");
            w = y;
            i += 1;
        }
        out
    }
}

impl IntPoly {
    /// Exact Newton interpolation through `(xs[i], ys[i])`; panics unless the
    /// interpolant has integer coefficients.
    pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPoly {
        let n = xs.len();
        assert!(n > 0 && n == ys.len());
        let mut dd: Vec<Rat> = ys.iter().map(|y| Rat::from_integer(y.clone())).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / Rat::from_integer(&xs[i] - &xs[i - level]);
            }
        }
        let mut acc: Vec<Rat> = vec![dd[n - 1].clone()];
        for i in (0..n - 1).rev() {
            let mut next = vec![Rat::zero(); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * Rat::from_integer(xs[i].clone());
            }
            next[0] += &dd[i];
            acc = next;
        }
        IntPoly::new(
            acc.into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "interpolant is not integral");
                    c.to_integer()
                })
                .collect(),
        )
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{a}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{a}z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<IntPoly, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::rat;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, 0, -4, 0, 1]).to_string(), "z^4 - 4z^2 + 2");
        assert_eq!(p(&[0, -1]).to_string(), "-z");
        assert_eq!(p(&[-1, 0, 4]).to_string(), "4z^2 - 1");
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 0, 1]).compose(&p(&[-1, 0, 1])), p(&[0, 0, -2, 0, 1]));
        assert_eq!(p(&[-2, 0, 1]).inflate(2), p(&[-2, 0, 0, 0, 1]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn content_and_primitive_part() {
        let f = p(&[6, -4, -2]);
        assert_eq!(f.content(), BigInt::from(2));
        assert_eq!(f.primitive_part(), p(&[-3, 2, 1]));
    }

    #[test]
    fn exact_division() {
        let f = p(&[-16, 0, 0, 0, 1]);
        assert_eq!(f.div_exact(&p(&[-2, 1])), Some(p(&[8, 4, 2, 1])));
        assert_eq!(f.div_exact(&p(&[-3, 1])), None);
        assert_eq!(p(&[1, 0, 2]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = &p(&[-2, 1]) * &p(&[1, 0, 1]);
        let b = &p(&[-2, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-2, 1]));
        assert_eq!(a.scale(&BigInt::from(6)).gcd(&b.scale(&BigInt::from(4))), p(&[-4, 2]));
    }

    #[test]
    fn squarefree_split() {
        // (z-1)^3 (z+2)^2 z
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2)) * &p(&[0, 1]);
        let mut sq = f.squarefree_decomposition();
        sq.sort_by_key(|(_, i)| *i);
        assert_eq!(sq, vec![(p(&[0, 1]), 1), (p(&[2, 1]), 2), (p(&[-1, 1]), 3)]);
        assert!(!f.is_squarefree());
        assert!(p(&[-2, 0, 1]).is_squarefree());
    }

    #[test]
    fn shift_moves_roots() {
        // roots 3 +- sqrt 2  ->  shift by 3 gives z^2 - 2
        let f = p(&[7, -6, 1]);
        assert_eq!(f.shift(&rat(3, 1)), p(&[-2, 0, 1]));
        // f(z + 1/2) * 4 for f = 2z - 1 -> 2(z + 1/2) - 1 = 2z, times 2
        assert_eq!(p(&[-1, 2]).shift(&rat(1, 2)), p(&[0, 4]));
    }

    #[test]
    fn homogeneous_evaluation() {
        // z^2 - 2 at (3, 2): 9 - 8 = 1
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.eval_hom(&BigInt::from(3), &BigInt::from(2), 2), BigInt::from(1));
        // formal degree 3: X^2 Y - 2 Y^3 at (3, 2) = 18 - 16
        assert_eq!(f.eval_hom(&BigInt::from(3), &BigInt::from(2), 3), BigInt::from(2));
        assert_eq!(f.eval_rat(&rat(3, 2)), rat(1, 4));
    }

    #[test]
    fn json_round_trip() {
        let f = p(&[2, 0, -4, 0, 1]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["2","0","-4","0","1"]"#);
        assert_eq!(serde_json::from_str::<IntPoly>(&s).unwrap(), f);
    }
}
