use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::dynamics::ProjPoint;
use crate::error::{Error, Result};
use crate::exactnum::primes::is_prime_u64;
use crate::exactnum::rat::{int_valuation, ln_abs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Place {
    Archimedean,
    Finite(u64),
}

impl Place {
    pub fn finite(p: u64) -> Result<Place> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Place::Finite(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// A set of places; the archimedean place always belongs to it, so only the
/// finite primes are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PlaceSet {
    finite_primes: BTreeSet<u64>,
}

impl PlaceSet {
    /// `S = {inf}`.
    pub fn archimedean() -> PlaceSet {
        PlaceSet::default()
    }

    pub fn with_primes<I: IntoIterator<Item = u64>>(primes: I) -> Result<PlaceSet> {
        let mut s = PlaceSet::default();
        for p in primes {
            s.insert(p)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, p: u64) -> Result<()> {
        Place::finite(p)?;
        self.finite_primes.insert(p);
        Ok(())
    }

    pub fn finite_primes(&self) -> &BTreeSet<u64> {
        &self.finite_primes
    }

    pub fn contains(&self, v: Place) -> bool {
        match v {
            Place::Archimedean => true,
            Place::Finite(p) => self.finite_primes.contains(&p),
        }
    }

    pub fn contains_big(&self, p: &BigInt) -> bool {
        u64::try_from(p).is_ok_and(|p| self.finite_primes.contains(&p))
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{inf")?;
        for p in &self.finite_primes {
            write!(f, ",{p}")?;
        }
        write!(f, "}}")
    }
}

/// Comma-separated primes, optionally with `inf`, in braces or not:
/// `"2,7"`, `"{inf,2}"`, `""`.
impl FromStr for PlaceSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<PlaceSet> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut out = PlaceSet::default();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if matches!(tok, "inf" | "oo" | "∞" | "infinity") {
                continue;
            }
            let p: u64 = tok.parse().map_err(|_| Error::Parse(format!("bad prime {tok:?} in place set")))?;
            out.insert(p)?;
        }
        Ok(out)
    }
}

/// The chordal distance between two rational points at one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "place", rename_all = "kebab-case")]
pub enum Chordal {
    /// `p^-exponent`; no exponent means the points coincide.
    Finite { prime: u64, exponent: Option<u64> },
    Archimedean { value: f64 },
}

impl Chordal {
    pub fn value(&self) -> f64 {
        match *self {
            Chordal::Finite { exponent: None, .. } => 0.0,
            Chordal::Finite { prime, exponent: Some(e) } => (prime as f64).powi(-(e as i32)),
            Chordal::Archimedean { value } => value,
        }
    }
}

fn cross(p: &ProjPoint, q: &ProjPoint) -> BigInt {
    p.x() * q.y() - q.x() * p.y()
}

fn ln_max_coord(p: &ProjPoint) -> f64 {
    ln_abs(if p.x().abs() >= p.y().abs() { p.x() } else { p.y() })
}

pub fn chordal(p: &ProjPoint, q: &ProjPoint, v: Place) -> Chordal {
    let det = cross(p, q);
    match v {
        Place::Finite(prime) => Chordal::Finite { prime, exponent: int_valuation(&det, prime) },
        Place::Archimedean if det.is_zero() => Chordal::Archimedean { value: 0.0 },
        Place::Archimedean => {
            Chordal::Archimedean { value: (ln_abs(&det) - ln_max_coord(p) - ln_max_coord(q)).exp().min(1.0) }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalHeight {
    pub place: Place,
    /// At a finite place the height is `valuation * ln p`.
    pub valuation: Option<u64>,
    pub value: f64,
}

/// `-ln chordal(p, q, v)`.
pub fn local_height(p: &ProjPoint, q: &ProjPoint, v: Place) -> Result<LocalHeight> {
    let det = cross(p, q);
    if det.is_zero() {
        return Err(Error::InfiniteLocalHeight);
    }
    Ok(match v {
        Place::Finite(prime) => {
            let e = int_valuation(&det, prime).expect("nonzero");
            LocalHeight { place: v, valuation: Some(e), value: e as f64 * (prime as f64).ln() }
        }
        Place::Archimedean => LocalHeight {
            place: v,
            valuation: None,
            value: (ln_max_coord(p) + ln_max_coord(q) - ln_abs(&det)).max(0.0),
        },
    })
}

/// `v_p` of the cross determinant: the local height at `p` in units of
/// `ln p`, or `None` when the points coincide.
pub fn local_valuation(p: &ProjPoint, q: &ProjPoint, prime: u64) -> Option<u64> {
    int_valuation(&cross(p, q), prime)
}

/// Two rational points are S-integral relative to each other iff their cross
/// determinant is a nonzero S-unit.
pub fn points_s_integral(p: &ProjPoint, q: &ProjPoint, s: &PlaceSet) -> bool {
    let det = cross(p, q);
    !det.is_zero() && crate::exactnum::primes::strip_primes(&det, s.finite_primes()).abs() == BigInt::from(1)
}
