//! Parser for rational functions of `z` such as `z^2 - 1`, `(z^2+1)/z`,
//! `z^2 + 3z - 3` or `1/4 z^2`.

use num_bigint::BigInt;
use num_traits::Signed;

use super::map::RationalMap;
use crate::error::{Error, Result};
use crate::exactnum::poly::IntPoly;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var,
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("digits")));
            }
            'z' | 'x' => {
                out.push(Tok::Var);
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
    }
    Ok(out)
}

/// `num / den` with integer polynomials.
#[derive(Debug, Clone)]
struct Frac {
    num: IntPoly,
    den: IntPoly,
}

impl Frac {
    fn constant(c: BigInt) -> Frac {
        Frac { num: IntPoly::constant(c), den: IntPoly::one() }
    }
    fn add(&self, o: &Frac, sign: i32) -> Frac {
        let right = &o.num * &self.den;
        let right = if sign < 0 { -right } else { right };
        Frac { num: &(&self.num * &o.den) + &right, den: &self.den * &o.den }
    }
    fn mul(&self, o: &Frac) -> Frac {
        Frac { num: &self.num * &o.num, den: &self.den * &o.den }
    }
    fn div(&self, o: &Frac) -> Result<Frac> {
        if o.num.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(Frac { num: &self.num * &o.den, den: &self.den * &o.num })
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?, 1);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(Frac { num: -inner.num, den: inner.den });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return Err(Error::Parse("exponent must be a nonnegative integer".into()));
            };
            self.pos += 1;
            let e: u32 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            return Ok(Frac { num: base.num.pow(e), den: base.den.pow(e) });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Frac::constant(n))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(Frac { num: IntPoly::z(), den: IntPoly::one() })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing closing parenthesis".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a rational function of `z` (or `x`) into a normalized map.
pub fn parse_map(s: &str) -> Result<RationalMap> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    let g = f.num.gcd(&f.den);
    let (num, den) = if g.deg() > 0 {
        (f.num.div_exact(&g).expect("gcd divides"), f.den.div_exact(&g).expect("gcd divides"))
    } else {
        (f.num, f.den)
    };
    if num.is_zero() && den.is_zero() {
        return Err(Error::Parse("empty expression".into()));
    }
    RationalMap::from_polys(&num, &den)
}

/// Parses a polynomial in `z` with rational coefficients; denominators are
/// cleared, so `z^2/4 - 1` gives `z^2 - 4`.
pub fn parse_poly(s: &str) -> Result<IntPoly> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    let g = f.num.gcd(&f.den);
    let den = f.den.div_exact(&g).expect("gcd divides");
    if den.deg() > 0 {
        return Err(Error::Parse(format!("{s:?} is not a polynomial")));
    }
    let num = f.num.div_exact(&g).expect("gcd divides");
    Ok(if den.coeff(0).is_negative() { -num } else { num })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_maps() {
        assert_eq!(parse_map("z^2 - 1").unwrap(), RationalMap::polynomial(&IntPoly::from_i64(&[-1, 0, 1])).unwrap());
        assert_eq!(parse_map("z^2+3z-3").unwrap(), RationalMap::polynomial(&IntPoly::from_i64(&[-3, 3, 1])).unwrap());
        let m = parse_map("(z^2+1)/z").unwrap();
        assert_eq!(m.evaluate(&"2".parse().unwrap()).to_string(), "5/2");
        let m = parse_map("z^2/4 - 1/2").unwrap();
        assert_eq!(m.evaluate(&"2".parse().unwrap()).to_string(), "1/2");
        let m = parse_map("z(z+1)(z-1) / (z - 2)^2 * 2").unwrap();
        assert_eq!(m.degree(), 3);
    }

    #[test]
    fn rejects_garbage_and_degenerate_maps() {
        assert!(parse_map("z^").is_err());
        assert!(parse_map("z + y").is_err());
        assert!(parse_map("(z^2 - 1)/(z - 1)").is_err());
        assert!(parse_map("3").is_err());
        assert!(parse_poly("1/z").is_err());
    }

    #[test]
    fn parses_polynomials() {
        assert_eq!(parse_poly("z^4 - 10z^2 + 1").unwrap(), IntPoly::from_i64(&[1, 0, -10, 0, 1]));
        assert_eq!(parse_poly("z^2/4 - 1").unwrap(), IntPoly::from_i64(&[-4, 0, 1]));
        assert_eq!(parse_poly("-(z-1)^2").unwrap(), IntPoly::from_i64(&[-1, 2, -1]));
        assert_eq!(parse_poly("7").unwrap(), IntPoly::from_i64(&[7]));
    }
}
