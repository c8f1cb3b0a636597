use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::point::ProjPoint;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactnum::form::BinaryForm;
use crate::exactnum::modpoly;
use crate::exactnum::poly::IntPoly;
use crate::exactnum::primes::factorize;
use crate::exactnum::resultant::form_resultant;
use crate::exactnum::zp::Zp;

/// Above this degree `evaluate` does not compute `Res(F, G)` just to
/// shortcut a gcd.
const CHEAP_RESULTANT_DEGREE: usize = 16;

/// Work budget for factoring resultants into bad primes.
const RESULTANT_FACTOR_BUDGET: u64 = 1 << 22;

/// A self-map `[F : G]` of `P^1` over `Q` of degree `d >= 2`, in normalized
/// form: the joint content of `F` and `G` is 1, `F` and `G` have no common
/// root, and the highest-`X` nonzero coefficient of `G` is positive.
#[derive(Clone)]
pub struct RationalMap {
    f: BinaryForm,
    g: BinaryForm,
    res: OnceLock<BigInt>,
}

impl PartialEq for RationalMap {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.g == other.g
    }
}

impl Eq for RationalMap {}

impl Hash for RationalMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.f.hash(state);
        self.g.hash(state);
    }
}

impl RationalMap {
    pub fn new(f: BinaryForm, g: BinaryForm) -> Result<RationalMap> {
        if f.degree() != g.degree() {
            return Err(Error::InvalidMap("forms of different degree".into()));
        }
        if f.degree() < 2 {
            return Err(Error::InvalidMap("degree must be at least 2".into()));
        }
        if form_resultant(&f, &g).is_zero() {
            return Err(Error::InvalidMap("the forms share a root".into()));
        }
        Ok(RationalMap::normalized(f, g))
    }

    /// Divides out the joint content and fixes the sign; no other checks.
    fn normalized(f: BinaryForm, g: BinaryForm) -> RationalMap {
        let mut c = f.content().gcd(&g.content());
        let lead = g.coeffs().iter().rev().find(|x| !x.is_zero());
        if lead.is_some_and(|x| x.is_negative()) {
            c = -c;
        }
        RationalMap { f: f.scale_div(&c), g: g.scale_div(&c), res: OnceLock::new() }
    }

    /// `z -> num(z) / den(z)`.
    pub fn from_polys(num: &IntPoly, den: &IntPoly) -> Result<RationalMap> {
        if den.is_zero() {
            return Err(Error::InvalidMap("zero denominator".into()));
        }
        let d = num.degree().unwrap_or(0).max(den.deg());
        RationalMap::new(BinaryForm::from_poly(num, d), BinaryForm::from_poly(den, d))
    }

    pub fn polynomial(f: &IntPoly) -> Result<RationalMap> {
        RationalMap::from_polys(f, &IntPoly::one())
    }

    /// `z -> z^d`.
    pub fn monomial(d: usize) -> RationalMap {
        RationalMap::new(BinaryForm::x_pow(d), BinaryForm::y_pow(d)).expect("z^d is a valid map")
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn f(&self) -> &BinaryForm {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm {
        &self.g
    }

    pub fn resultant(&self) -> BigInt {
        self.res.get_or_init(|| form_resultant(&self.f, &self.g)).clone()
    }

    /// `Some((f, c))` when the map is `z -> f(z) / c`.
    pub fn as_polynomial(&self) -> Option<(IntPoly, BigInt)> {
        let g = self.g.coeffs();
        g[1..].iter().all(Zero::is_zero).then(|| (self.f.dehomogenize(), g[0].clone()))
    }

    /// `true` for `z -> +-z^d`.
    pub fn is_monomial(&self) -> bool {
        let d = self.degree();
        let single = |f: &BinaryForm, at: usize| f.coeffs().iter().enumerate().all(|(i, c)| (i == at) != c.is_zero());
        single(&self.f, d) && single(&self.g, 0) && self.g.coeffs()[0].is_one() && self.f.coeffs()[d].abs().is_one()
    }

    /// `self o other`.
    pub fn compose(&self, other: &RationalMap) -> RationalMap {
        let f = self.f.compose(&other.f, &other.g);
        let g = self.g.compose(&other.f, &other.g);
        RationalMap::normalized(f, g)
    }

    /// `phi^n` for `n >= 1`, refused when `d^n` exceeds the degree cap.
    pub fn iterate(&self, n: u32, cfg: &Config) -> Result<RationalMap> {
        assert!(n >= 1, "iterate needs n >= 1");
        check_degree(self.degree(), n, cfg)?;
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    pub fn evaluate(&self, p: &ProjPoint) -> ProjPoint {
        let x = self.f.eval(p.x(), p.y());
        let y = self.g.eval(p.x(), p.y());
        if self.degree() > CHEAP_RESULTANT_DEGREE && self.res.get().is_none() {
            return ProjPoint::new(x, y).expect("a common zero of F and G would contradict Res != 0");
        }
        // For coprime inputs gcd(F(x,y), G(x,y)) divides Res(F, G), so the
        // full-size gcd is avoided.
        let r = self.res.get_or_init(|| form_resultant(&self.f, &self.g));
        let g = (&x % r).gcd(r);
        let g = (&y % &g).gcd(&g);
        ProjPoint::with_common_factor(x, y, g)
    }

    /// The `n`-fold image of `p`.
    pub fn evaluate_n(&self, p: &ProjPoint, n: usize) -> ProjPoint {
        (0..n).fold(p.clone(), |q, _| self.evaluate(&q))
    }
}

/// `d^n` as a degree, checked against the cap.
pub(crate) fn check_degree(d: usize, n: u32, cfg: &Config) -> Result<usize> {
    let needed = (d as u128).checked_pow(n).unwrap_or(u128::MAX);
    if needed > cfg.degree_cap as u128 {
        return Err(Error::DegreeCap { needed, cap: cfg.degree_cap });
    }
    Ok(needed as usize)
}

impl BinaryForm {
    /// Exact division of every coefficient by `c`.
    pub(crate) fn scale_div(&self, c: &BigInt) -> BinaryForm {
        BinaryForm::new(self.coeffs().iter().map(|x| x / c).collect())
    }
}

/// Primes at which `phi` fails to have good reduction: the prime divisors
/// of `Res(F, G)`, each confirmed by reducing the map.
pub fn bad_reduction_primes(phi: &RationalMap) -> Result<BTreeSet<u64>> {
    let res = phi.resultant();
    let (primes, stuck) = factorize(&res, RESULTANT_FACTOR_BUDGET);
    if let Some(c) = stuck {
        return Err(Error::Unsupported(format!("could not factor the resultant cofactor {c}")));
    }
    let mut out = BTreeSet::new();
    for (p, _) in primes {
        let p = p.to_u64().ok_or_else(|| Error::Unsupported(format!("bad prime {p} exceeds 64 bits")))?;
        if p < 1 << 31 {
            assert!(reduction_degenerates(phi, p), "prime {p} divides the resultant but reduction keeps the degree");
        }
        out.insert(p);
    }
    Ok(out)
}

/// Direct test: the reduction of `phi` mod `p` has a common root of the two
/// forms (so the reduced map drops degree).
pub fn reduction_degenerates(phi: &RationalMap, p: u64) -> bool {
    let fp = Zp::new(p);
    let reduce = |f: &BinaryForm| -> Vec<u64> { f.coeffs().iter().map(|c| fp.from_bigint(c)).collect() };
    let (f, g) = (reduce(&phi.f), reduce(&phi.g));
    let (fz, gz) = (modpoly::trim(f.clone()), modpoly::trim(g.clone()));
    if fz.is_empty() || gz.is_empty() {
        return true;
    }
    let d = phi.degree();
    if f[d] == 0 && g[d] == 0 {
        return true;
    }
    modpoly::gcd(&fp, &fz, &gz).len() > 1
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_polynomial() {
            Some((num, c)) if c.is_one() => write!(f, "{num}"),
            Some((num, c)) => write!(f, "({num})/{c}"),
            None => write!(f, "({})/({})", self.f.dehomogenize(), self.g.dehomogenize()),
        }
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMap({self})")
    }
}

impl Serialize for RationalMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalMap", 3)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("F", &self.f)?;
        st.serialize_field("G", &self.g)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn evaluation_examples() {
        let sq = RationalMap::monomial(2);
        assert_eq!(sq.evaluate(&"3/2".parse().unwrap()).to_string(), "9/4");
        assert_eq!(sq.evaluate(&ProjPoint::from_int(0)), ProjPoint::from_int(0));
        let m = RationalMap::from_polys(&poly(&[1, 0, 1]), &poly(&[0, 1])).unwrap();
        assert_eq!(m.evaluate(&ProjPoint::from_int(2)).to_string(), "5/2");
    }

    #[test]
    fn normalization_and_validation() {
        let m = RationalMap::from_polys(&poly(&[2, 0, 4]), &poly(&[0, -6])).unwrap();
        assert_eq!(m.g().coeffs(), &[BigInt::zero(), BigInt::from(3), BigInt::zero()]);
        assert_eq!(m.f().coeffs()[0], BigInt::from(-1));
        assert!(RationalMap::from_polys(&poly(&[-1, 0, 1]), &poly(&[-1, 1])).is_err());
        assert!(RationalMap::polynomial(&poly(&[0, 3])).is_err());
        assert!(RationalMap::monomial(3).is_monomial());
        assert!(!RationalMap::polynomial(&poly(&[-1, 0, 1])).unwrap().is_monomial());
    }

    #[test]
    fn bad_primes() {
        assert!(bad_reduction_primes(&RationalMap::monomial(2)).unwrap().is_empty());
        let m = RationalMap::new(BinaryForm::x_pow(2), BinaryForm::y_pow(2).scale(&BigInt::from(5))).unwrap();
        assert_eq!(bad_reduction_primes(&m).unwrap(), BTreeSet::from([5]));
        let m = RationalMap::from_polys(&poly(&[1, 0, 1]), &poly(&[0, 2])).unwrap();
        assert_eq!(m.resultant().abs(), BigInt::from(4));
        assert_eq!(bad_reduction_primes(&m).unwrap(), BTreeSet::from([2]));
    }

    #[test]
    fn iterates_compose() {
        let m = RationalMap::polynomial(&poly(&[-1, 0, 1])).unwrap();
        let m2 = m.iterate(2, &Config::default()).unwrap();
        assert_eq!(m2.as_polynomial().unwrap().0, poly(&[0, 0, -2, 0, 1]));
        let cfg = Config { degree_cap: 8, ..Config::default() };
        assert!(matches!(m.iterate(4, &cfg), Err(Error::DegreeCap { needed: 16, cap: 8 })));
    }
}
