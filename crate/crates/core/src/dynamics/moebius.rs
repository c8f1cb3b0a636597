use num_bigint::BigInt;
use num_traits::Zero;

use super::point::ProjPoint;
use crate::class::ConjugateClass;
use crate::error::{Error, Result};
use crate::exactnum::form::BinaryForm;

/// `[X : Y] -> [aX + bY : cX + dY]` with `ad - bc != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Moebius {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Moebius {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Moebius> {
        let m = Moebius { a, b, c, d };
        if m.determinant().is_zero() {
            return Err(Error::Degenerate("singular linear fractional map".into()));
        }
        Ok(m)
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(&self.a * p.x() + &self.b * p.y(), &self.c * p.x() + &self.d * p.y()).expect("invertible")
    }

    /// The class of the images of all conjugates: `A(dX - bY, -cX + aY)`.
    pub fn apply_class(&self, gamma: &ConjugateClass) -> ConjugateClass {
        let x = BinaryForm::new(vec![-&self.b, self.d.clone()]);
        let y = BinaryForm::new(vec![self.a.clone(), -&self.c]);
        ConjugateClass::from_form_unchecked(gamma.form().compose(&x, &y).primitive())
    }
}
