//! Infix rendering and parsing, e.g. `3*x1^2*x2 - 1/2*x3 + 7`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Coefficient, Polynomial};
use crate::error::Error;
use crate::symmetry::Variable;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut parser = Parser { src: s.as_bytes(), pos: 0 };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.product()?;
            } else if self.eat(b'-') {
                acc = acc - self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                match d.leading_term() {
                    Some((m, c)) if m.is_one() => acc = acc.scale(&c.recip()),
                    _ => {
                        self.pos = at;
                        return Err(self.error("division by a non-constant or zero"));
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, Error> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.digits().ok_or_else(|| self.error("expected exponent"))?;
            let e: u32 = e.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Polynomial, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(p)
            }
            Some(b'x') => {
                self.pos += 1;
                let v = self
                    .digits()
                    .and_then(|d| d.parse().ok())
                    .and_then(Variable::new)
                    .ok_or_else(|| self.error("expected variable x1, x2 or x3"))?;
                Ok(Polynomial::var(v))
            }
            Some(c) if c.is_ascii_digit() => {
                let int = self.digits().unwrap();
                let mut value = Coefficient::from_integer(int.parse::<BigInt>().unwrap());
                if self.src.get(self.pos) == Some(&b'.') {
                    self.pos += 1;
                    let frac = self.digits().ok_or_else(|| self.error("expected digits after `.`"))?;
                    let scale = BigInt::from(10u32).pow(frac.len() as u32);
                    let frac = frac.parse::<BigInt>().unwrap();
                    value += Coefficient::new(frac, scale);
                }
                Ok(Polynomial::constant(value))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_canonical_form() {
        let p: Polynomial = "-x2 + x1^2".parse().unwrap();
        assert_eq!(p.to_string(), "x1^2 - x2");
        let q: Polynomial = "1/2*x3 - 3*x1*x2^2 + 7".parse().unwrap();
        assert_eq!(q.to_string(), "-3*x1*x2^2 + 1/2*x3 + 7");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert!(Polynomial::zero().is_zero());
    }

    #[test]
    fn parses_nested_and_decimal() {
        let p: Polynomial = "(x1 + 1)^2 - 0.5*x2".parse().unwrap();
        assert_eq!(p.to_string(), "x1^2 - 1/2*x2 + 2*x1 + 1");
        assert!(Polynomial::from_str("x4").is_err());
        assert!(Polynomial::from_str("x1 / x2").is_err());
        assert!(Polynomial::from_str("x1 +").is_err());
        assert!(Polynomial::zero().to_string().parse::<Polynomial>().unwrap().is_zero());
    }
}
