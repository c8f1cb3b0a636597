use std::fmt;

use serde::Serialize;

use super::map::RationalMap;
use crate::class::ConjugateClass;
use crate::error::Result;
use crate::factor::factor_over_q;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorTerm {
    pub class: ConjugateClass,
    pub mult: i64,
}

/// A finite formal sum of conjugate classes, kept sorted with distinct
/// classes and no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Divisor {
    terms: Vec<DivisorTerm>,
}

impl Divisor {
    pub fn new() -> Divisor {
        Divisor::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (ConjugateClass, i64)>>(terms: I) -> Divisor {
        let mut d = Divisor::new();
        for (c, m) in terms {
            d.add_term(c, m);
        }
        d
    }

    pub fn add_term(&mut self, class: ConjugateClass, mult: i64) {
        match self.terms.binary_search_by(|t| t.class.cmp(&class)) {
            Ok(i) => {
                self.terms[i].mult += mult;
                if self.terms[i].mult == 0 {
                    self.terms.remove(i);
                }
            }
            Err(i) if mult != 0 => self.terms.insert(i, DivisorTerm { class, mult }),
            Err(_) => {}
        }
    }

    pub fn terms(&self) -> &[DivisorTerm] {
        &self.terms
    }

    /// Number of points counted with multiplicity.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|t| t.mult * t.class.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.iter().all(|t| t.mult >= 0)
    }

    pub fn multiplicity(&self, class: &ConjugateClass) -> i64 {
        self.terms.iter().find(|t| &t.class == class).map_or(0, |t| t.mult)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.mult != 1 {
                write!(f, "{}*", t.mult)?;
            }
            write!(f, "({})", t.class)?;
        }
        Ok(())
    }
}

/// `phi^*(beta)`: the classes of the fiber over every conjugate of `beta`,
/// weighted by ramification. Its degree is `d * deg(beta)`.
pub fn pullback_divisor(phi: &RationalMap, beta: &ConjugateClass) -> Result<Divisor> {
    let h = beta.form().compose(phi.f(), phi.g());
    let mut div = Divisor::new();
    let k = h.infinity_multiplicity();
    if k > 0 {
        div.add_term(ConjugateClass::infinity(), k as i64);
    }
    let affine = h.dehomogenize();
    if affine.deg() > 0 {
        for f in factor_over_q(&affine)?.factors {
            div.add_term(ConjugateClass::from_minpoly_unchecked(&f.poly), f.multiplicity as i64);
        }
    }
    Ok(div)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::int_class;
    use crate::exactnum::poly::IntPoly;

    #[test]
    fn documented_pullbacks() {
        let sq = RationalMap::monomial(2);
        let d = pullback_divisor(&sq, &int_class(1)).unwrap();
        assert_eq!(d, Divisor::from_terms([(int_class(1), 1), (int_class(-1), 1)]));
        let d = pullback_divisor(&sq, &int_class(0)).unwrap();
        assert_eq!(d, Divisor::from_terms([(int_class(0), 2)]));
        let d = pullback_divisor(&sq, &int_class(2)).unwrap();
        let c = ConjugateClass::from_irreducible(&IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(d, Divisor::from_terms([(c, 1)]));
        assert_eq!(d.degree(), 2);
    }

    #[test]
    fn pullback_of_infinity_and_of_a_quadratic_class() {
        let m = RationalMap::from_polys(&IntPoly::from_i64(&[1, 0, 1]), &IntPoly::from_i64(&[0, 1])).unwrap();
        let d = pullback_divisor(&m, &ConjugateClass::infinity()).unwrap();
        assert_eq!(d, Divisor::from_terms([(int_class(0), 1), (ConjugateClass::infinity(), 1)]));
        let c = ConjugateClass::from_irreducible(&IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        let d = pullback_divisor(&RationalMap::monomial(2), &c).unwrap();
        assert_eq!(d.degree(), 4);
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms()[0].class.minpoly(), IntPoly::from_i64(&[-2, 0, 0, 0, 1]));
    }

    #[test]
    fn merging_and_effectivity() {
        let mut d = Divisor::from_terms([(int_class(3), 2), (int_class(0), -1)]);
        assert!(!d.is_effective());
        d.add_term(int_class(0), 1);
        assert!(d.is_effective());
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.to_string(), "2*(3)");
    }
}
