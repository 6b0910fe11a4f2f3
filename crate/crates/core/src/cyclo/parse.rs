//! Parser for the value grammar
//!
//! ```text
//! value := term ("+" term)*
//! term  := RAT | RAT "*" root | root | "-" root
//! root  := "e(" RAT ")"
//! RAT   := "-"? digits ("/" digits)?
//! ```
//!
//! Whitespace between tokens is ignored.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Cyclotomic, Rational, RootOfUnity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ValueParseError {
    /// 1-based character column within the parsed text.
    pub column: usize,
    pub message: String,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> ValueParseError {
        ValueParseError {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ValueParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", b as char)))
        }
    }

    fn digits(&mut self) -> Result<BigInt, ValueParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn rational(&mut self) -> Result<Rational, ValueParseError> {
        let negative = self.eat(b'-');
        let numer = self.digits()?;
        let denom = if self.eat(b'/') {
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(ValueParseError {
                    column: at + 1,
                    message: "zero denominator".into(),
                });
            }
            d
        } else {
            BigInt::one()
        };
        let r = Rational::new(numer, denom);
        Ok(if negative { -r } else { r })
    }

    fn root(&mut self) -> Result<Rational, ValueParseError> {
        self.expect(b'e')?;
        self.expect(b'(')?;
        let q = self.rational()?;
        self.expect(b')')?;
        Ok(q)
    }

    fn term(&mut self) -> Result<Cyclotomic, ValueParseError> {
        match self.peek() {
            Some(b'e') => Ok(Cyclotomic::root_of_unity(&self.root()?)),
            Some(b'-') if self.src.get(self.pos + 1..).is_some_and(|rest| {
                rest.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'e')
            }) =>
            {
                self.pos += 1;
                Ok(-Cyclotomic::root_of_unity(&self.root()?))
            }
            Some(_) => {
                let c = self.rational()?;
                if self.eat(b'*') {
                    Ok(Cyclotomic::root_of_unity(&self.root()?).scale(&c))
                } else {
                    Ok(Cyclotomic::from_rational(&c))
                }
            }
            None => Err(self.error("expected a term")),
        }
    }

    fn value(&mut self) -> Result<Cyclotomic, ValueParseError> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc += &self.term()?;
        }
        if self.peek().is_some() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(acc)
    }
}

impl FromStr for Cyclotomic {
    type Err = ValueParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Cursor::new(s).value()
    }
}

/// Accepts any value in the grammar that is exactly a root of unity, so
/// `e(1/2)`, `-1` and `-1*e(0/1)` all parse to the same twist.
impl FromStr for RootOfUnity {
    type Err = ValueParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value: Cyclotomic = s.parse()?;
        value
            .root_exponent()
            .map(RootOfUnity::new)
            .ok_or_else(|| ValueParseError {
                column: 1,
                message: format!("'{}' is not a root of unity", s.trim()),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let x: Cyclotomic = "1+e(1/4)".parse().unwrap();
        assert_eq!(x, Cyclotomic::one() + Cyclotomic::e(1, 4));
        let y: Cyclotomic = " 1/2 + -3*e(1/5) ".parse().unwrap();
        assert_eq!(y.to_string(), "1/2+-3*e(1/5)");
        let z: Cyclotomic = "-e(1/3)".parse().unwrap();
        assert_eq!(z, -Cyclotomic::e(1, 3));
        assert_eq!("-1".parse::<Cyclotomic>().unwrap(), Cyclotomic::from_integer(-1));
        assert_eq!("e(0/1)".parse::<Cyclotomic>().unwrap(), Cyclotomic::one());
    }

    #[test]
    fn rejects_malformed() {
        let err = "e(1/3".parse::<Cyclotomic>().unwrap_err();
        assert_eq!(err.column, 6);
        assert!("1/0".parse::<Cyclotomic>().is_err());
        assert!("".parse::<Cyclotomic>().is_err());
        assert!("1 2".parse::<Cyclotomic>().is_err());
        assert!("2*".parse::<Cyclotomic>().is_err());
    }

    #[test]
    fn twists_must_be_roots() {
        assert_eq!("-1".parse::<RootOfUnity>().unwrap(), RootOfUnity::from_fraction(1, 2));
        assert!("2".parse::<RootOfUnity>().is_err());
        assert!("1+e(1/4)".parse::<RootOfUnity>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-7/3", "e(2/3)", "1+e(1/4)", "1/2+-3*e(1/5)", "e(1/8)+e(3/8)"] {
            let x: Cyclotomic = s.parse().unwrap();
            let printed = x.to_string();
            let back: Cyclotomic = printed.parse().unwrap();
            assert_eq!(back, x);
            assert_eq!(back.to_string(), printed);
        }
    }
}
