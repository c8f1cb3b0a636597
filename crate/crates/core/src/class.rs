//! Galois orbits over `Q`, stored as primitive irreducible binary forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::dynamics::ProjPoint;
use crate::error::{Error, Result};
use crate::exactnum::form::BinaryForm;
use crate::exactnum::poly::IntPoly;
use crate::exactnum::rat::Rat;
use crate::factor::factor_over_q;

/// A full set of conjugates in `P^1(Qbar)`: the roots of one primitive
/// irreducible form. The point `[1:0]` is the class of the form `Y`.
///
/// There is no accessor for an individual root, so nothing computed from a
/// class can depend on a choice of embedding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjugateClass {
    form: BinaryForm,
}

impl ConjugateClass {
    /// Trusted constructor: `form` must already be primitive, irreducible and
    /// sign-normalized.
    pub(crate) fn from_form_unchecked(form: BinaryForm) -> ConjugateClass {
        debug_assert!(form.degree() >= 1);
        ConjugateClass { form }
    }

    /// Trusted constructor from an irreducible primitive polynomial.
    pub(crate) fn from_minpoly_unchecked(f: &IntPoly) -> ConjugateClass {
        ConjugateClass::from_form_unchecked(BinaryForm::from_poly(f, f.deg()).primitive())
    }

    pub fn rational(q: &Rat) -> ConjugateClass {
        ConjugateClass::from_point(&ProjPoint::from_rat(q))
    }

    pub fn infinity() -> ConjugateClass {
        ConjugateClass::from_point(&ProjPoint::infinity())
    }

    pub fn from_point(p: &ProjPoint) -> ConjugateClass {
        ConjugateClass::from_form_unchecked(BinaryForm::linear_through(p.x(), p.y()).primitive())
    }

    /// Checks irreducibility by factoring; the polynomial must have positive
    /// degree.
    pub fn from_irreducible(f: &IntPoly) -> Result<ConjugateClass> {
        if f.is_zero() || f.deg() == 0 {
            return Err(Error::NotIrreducible(format!("{f} has no roots")));
        }
        if !factor_over_q(f)?.is_irreducible() {
            return Err(Error::NotIrreducible(f.to_string()));
        }
        Ok(ConjugateClass::from_minpoly_unchecked(f))
    }

    /// The class of `m`-th primitive roots of unity.
    pub fn roots_of_unity(m: usize) -> ConjugateClass {
        ConjugateClass::from_minpoly_unchecked(&crate::exactnum::cyclotomic(m))
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    /// The minimal polynomial `F(z, 1)`; the constant `1` for `[1:0]`.
    pub fn minpoly(&self) -> IntPoly {
        self.form.dehomogenize()
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn is_infinity(&self) -> bool {
        self.form.degree() == 1 && self.form.coeffs()[1].is_zero()
    }

    /// The single point of a degree-one class.
    pub fn as_point(&self) -> Option<ProjPoint> {
        if self.degree() != 1 {
            return None;
        }
        // form = b X - a Y  ->  [a : b]
        let c = self.form.coeffs();
        Some(ProjPoint::new(-&c[0], c[1].clone()).expect("nonzero linear form"))
    }

    pub fn as_rat(&self) -> Option<Rat> {
        self.as_point().and_then(|p| p.to_rat())
    }

    /// `true` when every root is an algebraic integer (monic minimal
    /// polynomial) and the class is finite.
    pub fn is_integral(&self) -> bool {
        !self.is_infinity() && self.minpoly().leading().is_some_and(One::is_one)
    }
}

impl fmt::Display for ConjugateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_point() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "[{}]", self.minpoly()),
        }
    }
}

impl Serialize for ConjugateClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for ConjugateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConjugateClass({self})")
    }
}

/// Integer `n` as a class.
pub fn int_class(n: i64) -> ConjugateClass {
    ConjugateClass::rational(&Rat::from_integer(BigInt::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::rat;

    #[test]
    fn rational_and_infinite_classes() {
        let c = ConjugateClass::rational(&rat(-3, 8));
        assert_eq!(c.minpoly(), IntPoly::from_i64(&[3, 8]));
        assert_eq!(c.as_rat(), Some(rat(-3, 8)));
        let inf = ConjugateClass::infinity();
        assert!(inf.is_infinity());
        assert_eq!(inf.as_point(), Some(ProjPoint::infinity()));
        assert_eq!(inf.to_string(), "inf");
    }

    #[test]
    fn irreducibility_is_checked() {
        assert!(ConjugateClass::from_irreducible(&IntPoly::from_i64(&[-2, 0, 1])).is_ok());
        assert!(ConjugateClass::from_irreducible(&IntPoly::from_i64(&[-4, 0, 1])).is_err());
        assert!(ConjugateClass::from_irreducible(&IntPoly::from_i64(&[3])).is_err());
        let c = ConjugateClass::from_irreducible(&IntPoly::from_i64(&[2, 0, -1])).unwrap();
        assert_eq!(c.minpoly(), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(c.to_string(), "[z^2 - 2]");
    }
}
