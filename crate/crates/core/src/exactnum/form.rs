//! Binary forms `F(X, Y) = sum c_i X^i Y^(d-i)` of a fixed formal degree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::IntPoly;

/// A homogeneous form in `X, Y` with coefficients in ascending powers of `X`.
///
/// Unlike [`IntPoly`] the top coefficients may vanish: the formal degree is
/// `coeffs.len() - 1`, and the number of vanishing top coefficients is the
/// multiplicity of the root `[1:0]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "IntPolyCoeffs", try_from = "IntPolyCoeffs")]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct IntPolyCoeffs(Vec<String>);

impl From<BinaryForm> for IntPolyCoeffs {
    fn from(f: BinaryForm) -> Self {
        IntPolyCoeffs(f.coeffs.iter().map(ToString::to_string).collect())
    }
}

impl TryFrom<IntPolyCoeffs> for BinaryForm {
    type Error = String;
    fn try_from(raw: IntPolyCoeffs) -> Result<Self, String> {
        if raw.0.is_empty() {
            return Err("a form needs at least one coefficient".into());
        }
        let coeffs = raw
            .0
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BinaryForm { coeffs })
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<BigInt>) -> BinaryForm {
        assert!(!coeffs.is_empty(), "a form needs a formal degree");
        BinaryForm { coeffs }
    }

    /// Homogenizes `p` to formal degree `degree >= deg p`.
    pub fn from_poly(p: &IntPoly, degree: usize) -> BinaryForm {
        assert!(p.is_zero() || p.deg() <= degree, "degree below polynomial degree");
        let mut coeffs = p.coeffs().to_vec();
        coeffs.resize(degree + 1, BigInt::zero());
        BinaryForm { coeffs }
    }

    /// `X^d`.
    pub fn x_pow(d: usize) -> BinaryForm {
        BinaryForm::from_poly(&IntPoly::monomial(BigInt::one(), d), d)
    }

    /// `Y^d`.
    pub fn y_pow(d: usize) -> BinaryForm {
        BinaryForm::from_poly(&IntPoly::one(), d)
    }

    /// `y X - x Y`, vanishing exactly at `[x:y]`.
    pub fn linear_through(x: &BigInt, y: &BigInt) -> BinaryForm {
        BinaryForm::new(vec![-x.clone(), y.clone()])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `F(z, 1)`.
    pub fn dehomogenize(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    /// Multiplicity of `[1:0]` as a root; the full degree for the zero form.
    pub fn infinity_multiplicity(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.dehomogenize().eval_hom(x, y, self.degree())
    }

    pub fn scale(&self, c: &BigInt) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "forms of different degree");
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::new(out)
    }

    pub fn pow(&self, e: usize) -> BinaryForm {
        let mut acc = BinaryForm::new(vec![BigInt::one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self(A, B)` for forms `A`, `B` of a common degree.
    pub fn compose(&self, a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
        assert_eq!(a.degree(), b.degree(), "substituted forms of different degree");
        let d = self.degree();
        let mut a_pows = vec![BinaryForm::new(vec![BigInt::one()])];
        let mut b_pows = vec![BinaryForm::new(vec![BigInt::one()])];
        for i in 0..d {
            a_pows.push(a_pows[i].mul(a));
            b_pows.push(b_pows[i].mul(b));
        }
        let mut acc = BinaryForm::new(vec![BigInt::zero(); d * a.degree() + 1]);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&a_pows[i].mul(&b_pows[d - i]).scale(c));
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content and makes the first nonzero coefficient, read
    /// from the `X^d` end, positive.
    pub fn primitive(&self) -> BinaryForm {
        let mut c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        if self.coeffs.iter().rev().find(|x| !x.is_zero()).unwrap().is_negative() {
            c = -c;
        }
        BinaryForm::new(self.coeffs.iter().map(|x| x / &c).collect())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm(deg {}: {})", self.degree(), self.dehomogenize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn infinity_multiplicity_counts_top_zeros() {
        assert_eq!(form(&[1, 0, 0]).infinity_multiplicity(), 2);
        assert_eq!(form(&[0, 0, 1]).infinity_multiplicity(), 0);
        assert_eq!(form(&[1, 1, 0]).infinity_multiplicity(), 1);
    }

    #[test]
    fn composition_matches_substitution() {
        // F = X^2 - Y^2 composed with itself: (X^2-Y^2)^2 - (Y^2)^2
        let f = form(&[-1, 0, 1]);
        let g = form(&[1, 0, 0]);
        let ff = f.compose(&f, &g);
        assert_eq!(ff.dehomogenize(), IntPoly::from_i64(&[0, 0, -2, 0, 1]));
        assert_eq!(ff.degree(), 4);
        let gg = g.compose(&f, &g);
        assert_eq!(gg, form(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn evaluation() {
        // X^2 + Y^2 at (2, 1)
        assert_eq!(form(&[1, 0, 1]).eval(&BigInt::from(2), &BigInt::from(1)), BigInt::from(5));
        assert_eq!(form(&[0, 1, 0]).eval(&BigInt::from(2), &BigInt::from(1)), BigInt::from(2));
    }
}
