//! Text form of polynomials: a small hand-rolled parser and the canonical
//! display (terms in descending grlex, integer-normalized rationals).

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::{Coeff, Monomial, MonomialOrder, Polynomial};
use crate::{Error, Result};

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn nat(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    /// coeff := ['-'] NAT ['/' NAT]
    fn coeff(&mut self) -> Result<Coeff> {
        let neg = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        let num = self.nat()?;
        let den = if self.peek() == Some(b'/') {
            self.bump();
            let d = self.nat()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            d
        } else {
            BigInt::one()
        };
        let c = BigRational::new(num, den);
        Ok(if neg { -c } else { c })
    }

    /// factor := 'x' NAT ['^' NAT]
    fn factor(&mut self) -> Result<(u32, u32)> {
        if self.bump() != Some(b'x') {
            return self.err("expected a variable");
        }
        let v = self.nat()?;
        let v: u32 = match v.try_into() {
            Ok(v) if v >= 1 => v,
            _ => return self.err("variable index out of range"),
        };
        let e = if self.peek() == Some(b'^') {
            self.bump();
            let e = self.nat()?;
            match e.try_into() {
                Ok(e) => e,
                Err(_) => return self.err("exponent out of range"),
            }
        } else {
            1u32
        };
        Ok((v, e))
    }

    /// sterm := [coeff '*'] factor ('*' factor)* | coeff
    fn sterm(&mut self) -> Result<(Monomial, Coeff)> {
        let mut c = Coeff::one();
        let mut pairs = Vec::new();
        match self.peek() {
            Some(b'x') => pairs.push(self.factor()?),
            Some(c0) if c0 == b'-' || c0.is_ascii_digit() => {
                c = self.coeff()?;
                if self.peek() == Some(b'*') {
                    self.bump();
                    pairs.push(self.factor()?);
                }
            }
            _ => return self.err("expected a term"),
        }
        while self.peek() == Some(b'*') {
            self.bump();
            pairs.push(self.factor()?);
        }
        Ok((Monomial::from_pairs(pairs), c))
    }
}

/// Parse the polynomial grammar
/// `poly := sterm (('+'|'-') sterm)*` with
/// `sterm := [coeff '*'] factor ('*' factor)* | coeff`,
/// `factor := 'x' NAT ['^' NAT]`, `coeff := ['-'] NAT ['/' NAT]`.
/// A leading '-' on the first term is also accepted so canonical output
/// round-trips.
pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    let mut p = Parser::new(s);
    let mut sign = match p.peek() {
        Some(b'-') => {
            // Could be "-x1" (leading sign) or "-2*x1" (signed coeff); the
            // sterm rule handles the latter, so only consume the sign when a
            // variable follows.
            let save = p.pos;
            p.bump();
            if p.peek() == Some(b'x') {
                Coeff::from_integer(BigInt::from(-1))
            } else {
                p.pos = save;
                Coeff::one()
            }
        }
        _ => Coeff::one(),
    };
    let mut terms = Vec::new();
    loop {
        let (m, c) = p.sterm()?;
        terms.push((m, c * &sign));
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.bump();
                sign = Coeff::one();
            }
            Some(b'-') => {
                p.bump();
                sign = Coeff::from_integer(BigInt::from(-1));
            }
            _ => return p.err("expected '+' or '-'"),
        }
    }
    Ok(Polynomial::from_terms(terms))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ord = MonomialOrder::grlex();
        let mut terms: Vec<(&Monomial, &Coeff)> = self.terms().collect();
        terms.sort_by(|a, b| ord.compare(b.0, a.0));
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coeff;

    #[test]
    fn parses_and_prints_canonically() {
        let p = parse_polynomial("x1*x2 - x1 - x2 + 1").unwrap();
        let q = &Polynomial::var_minus(1, 1) * &Polynomial::var_minus(2, 1);
        assert_eq!(p, q);
        assert_eq!(p.to_string(), "x1*x2 - x1 - x2 + 1");
    }

    #[test]
    fn coefficients_and_powers() {
        let p = parse_polynomial("-2*x1^2 + 1/2*x2 - 3").unwrap();
        assert_eq!(p.coefficient(&Monomial::from_pairs([(1, 2)])), coeff(-2));
        assert_eq!(
            p.coefficient(&Monomial::var(2)),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        assert_eq!(p.coefficient(&Monomial::one()), coeff(-3));
        assert_eq!(p.to_string(), "-2*x1^2 + 1/2*x2 - 3");
    }

    #[test]
    fn leading_minus_on_variable() {
        let p = parse_polynomial("-x1 + 1").unwrap();
        assert_eq!(p, -&Polynomial::var_minus(1, 1));
        assert_eq!(p.to_string(), "-x1 + 1");
    }

    #[test]
    fn whitespace_insignificant_and_roundtrip() {
        let p = parse_polynomial("  x1 *x2^2-  x2 ^ 3 ").unwrap();
        assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("x0").is_err());
        assert!(parse_polynomial("x1 +").is_err());
        assert!(parse_polynomial("1/0").is_err());
        assert!(parse_polynomial("x1 x2").is_err());
    }
}
