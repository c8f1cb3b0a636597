use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::rat::{parse_rat, Rat};

/// A point `[x : y]` of `P^1(Q)` with coprime integer coordinates,
/// `y >= 0`, and `x > 0` when `y = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    x: BigInt,
    y: BigInt,
}

impl ProjPoint {
    pub fn new(x: BigInt, y: BigInt) -> Result<ProjPoint> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::Degenerate("[0:0] is not a point".into()));
        }
        let mut g = x.gcd(&y);
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            g = -g;
        }
        Ok(ProjPoint { x: x / &g, y: y / &g })
    }

    /// Divides out `g = gcd(x, y)`, which the caller has already computed.
    pub(crate) fn with_common_factor(x: BigInt, y: BigInt, mut g: BigInt) -> ProjPoint {
        debug_assert!(!g.is_zero());
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            g = -g;
        }
        if g.is_one() {
            return ProjPoint { x, y };
        }
        ProjPoint { x: x / &g, y: y / &g }
    }

    pub fn from_rat(q: &Rat) -> ProjPoint {
        ProjPoint { x: q.numer().clone(), y: q.denom().clone() }
    }

    pub fn from_int(n: i64) -> ProjPoint {
        ProjPoint { x: BigInt::from(n), y: BigInt::one() }
    }

    pub fn infinity() -> ProjPoint {
        ProjPoint { x: BigInt::one(), y: BigInt::zero() }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    pub fn to_rat(&self) -> Option<Rat> {
        (!self.is_infinity()).then(|| Rat::new(self.x.clone(), self.y.clone()))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.y.is_one() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "{}/{}", self.x, self.y)
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.x, self.y)
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    /// Accepts `inf`, `oo`, `[x:y]`, or a rational `a/b`.
    fn from_str(s: &str) -> Result<ProjPoint> {
        let t = s.trim();
        match t {
            "inf" | "oo" | "∞" | "infinity" => return Ok(ProjPoint::infinity()),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (a, b) = inner.split_once(':').ok_or_else(|| Error::Parse(format!("bad point {s:?}")))?;
            let parse = |v: &str| v.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("{v:?}: {e}")));
            return ProjPoint::new(parse(a)?, parse(b)?);
        }
        Ok(ProjPoint::from_rat(&parse_rat(t)?))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let p = ProjPoint::new(BigInt::from(-6), BigInt::from(-4)).unwrap();
        assert_eq!((p.x().clone(), p.y().clone()), (BigInt::from(3), BigInt::from(2)));
        let inf = ProjPoint::new(BigInt::from(-5), BigInt::zero()).unwrap();
        assert_eq!(inf, ProjPoint::infinity());
        assert!(ProjPoint::new(BigInt::zero(), BigInt::zero()).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("3/2".parse::<ProjPoint>().unwrap().to_string(), "3/2");
        assert_eq!("[4:-6]".parse::<ProjPoint>().unwrap().to_string(), "-2/3");
        assert_eq!("oo".parse::<ProjPoint>().unwrap(), ProjPoint::infinity());
        assert!("z".parse::<ProjPoint>().is_err());
    }
}
