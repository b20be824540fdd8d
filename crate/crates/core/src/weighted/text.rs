//! Text form of Laurent polynomials.
//!
//! Terms are joined by `+` or `-`. A term is an optional integer coefficient
//! followed by factors `ti` or `ti^k`, `k` a possibly negative integer, with
//! optional `*` between them. Whitespace is ignored between tokens.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::point::Point;

use super::LaurentPoly;

/// Parses with the number of variables taken from the largest index used
/// (at least one).
pub fn parse_laurent(text: &str) -> Result<LaurentPoly> {
    let terms = Parser::new(text).polynomial()?;
    let dim = terms
        .iter()
        .flat_map(|(exps, _)| exps.iter().map(|(i, _)| *i))
        .max()
        .unwrap_or(1);
    build(dim, terms)
}

/// Parses in exactly `dim` variables.
pub fn parse_laurent_in(text: &str, dim: usize) -> Result<LaurentPoly> {
    let terms = Parser::new(text).polynomial()?;
    if let Some(i) = terms
        .iter()
        .flat_map(|(exps, _)| exps.iter().map(|(i, _)| *i))
        .find(|&i| i > dim)
    {
        return Err(Error::Precondition(format!(
            "variable t{i} exceeds dimension {dim}"
        )));
    }
    build(dim, terms)
}

type RawTerm = (Vec<(usize, Int)>, Int);

fn build(dim: usize, terms: Vec<RawTerm>) -> Result<LaurentPoly> {
    let items = terms.into_iter().map(|(factors, coef)| {
        let mut exp = vec![Int::zero(); dim];
        for (i, k) in factors {
            exp[i - 1] += k;
        }
        (Point::new(exp), coef)
    });
    LaurentPoly::from_terms(dim, items)
}

/// Terms in descending exponent order, e.g. `3*t1^2*t2^-1 - t1 + 5`.
pub fn print_laurent(p: &LaurentPoly) -> String {
    let mut out = String::new();
    for (k, (exp, coef)) in p.terms().items().iter().rev().enumerate() {
        let mut monomial = String::new();
        for (i, e) in exp.coords().iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if !monomial.is_empty() {
                monomial.push('*');
            }
            if e.is_one() {
                write!(monomial, "t{}", i + 1).unwrap();
            } else {
                write!(monomial, "t{}^{}", i + 1, e).unwrap();
            }
        }
        let magnitude = coef.abs();
        let body = if monomial.is_empty() {
            magnitude.to_string()
        } else if magnitude.is_one() {
            monomial
        } else {
            format!("{magnitude}*{monomial}")
        };
        match (k, coef.is_negative()) {
            (0, false) => out.push_str(&body),
            (0, true) => write!(out, "-{body}").unwrap(),
            (_, false) => write!(out, " + {body}").unwrap(),
            (_, true) => write!(out, " - {body}").unwrap(),
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            column: self.pos + 1,
            message: message.into(),
        })
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

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn polynomial(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            None => return self.error("empty polynomial"),
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(_) => false,
        };
        loop {
            let (factors, coef) = self.term()?;
            terms.push((factors, if negative { -coef } else { coef }));
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => return self.error(format!("unexpected '{}'", c as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<RawTerm> {
        let coef = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let v: Int = d.parse().expect("digits parse");
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b't') {
                        return self.error("expected a variable after '*'");
                    }
                }
                Some(v)
            }
            Some(b't') => None,
            Some(_) | None => return self.error("expected a coefficient or a variable"),
        };
        let mut factors = Vec::new();
        while self.peek() == Some(b't') {
            factors.push(self.factor()?);
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if self.peek() != Some(b't') {
                    return self.error("expected a variable after '*'");
                }
            }
        }
        Ok((factors, coef.unwrap_or_else(Int::one)))
    }

    fn factor(&mut self) -> Result<(usize, Int)> {
        self.pos += 1;
        let Some(d) = self.digits() else {
            return self.error("expected a variable index");
        };
        let index: usize = match d.parse() {
            Ok(i) if i >= 1 => i,
            _ => {
                self.pos -= d.len();
                return self.error("variable index must be a positive integer");
            }
        };
        if self.src.get(self.pos) != Some(&b'^') {
            return Ok((index, Int::one()));
        }
        self.pos += 1;
        let negative = match self.src.get(self.pos) {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let Some(e) = self.digits() else {
            return self.error("expected an exponent");
        };
        let e: Int = e.parse().expect("digits parse");
        Ok((index, if negative { -e } else { e }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = parse_laurent("1 + t1 - t2^-3").unwrap();
        assert_eq!(print_laurent(&p), "t1 + 1 - t2^-3");
        assert_eq!(parse_laurent(&print_laurent(&p)).unwrap(), p);
    }

    #[test]
    fn like_terms_collect() {
        let p = parse_laurent("t1*t1").unwrap();
        assert_eq!(print_laurent(&p), "t1^2");
        assert_eq!(
            parse_laurent("2t1 + 3*t1").unwrap(),
            parse_laurent("5t1").unwrap()
        );
        assert_eq!(
            parse_laurent("3t1^2t2^-1 - 3t1^2t2^-1").unwrap_err(),
            Error::ZeroPolynomial
        );
        assert_eq!(parse_laurent("0").unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn printing_forms() {
        let p = parse_laurent("-3 t1^2 t2^-1 + 7 - t2").unwrap();
        assert_eq!(print_laurent(&p), "-3*t1^2*t2^-1 - t2 + 7");
    }

    #[test]
    fn syntax_errors_carry_columns() {
        assert!(matches!(
            parse_laurent("1 + x"),
            Err(Error::Syntax { column: 5, .. })
        ));
        assert!(matches!(
            parse_laurent("t0"),
            Err(Error::Syntax { column: 2, .. })
        ));
        assert!(matches!(
            parse_laurent("t1^"),
            Err(Error::Syntax { column: 4, .. })
        ));
        assert!(matches!(parse_laurent(""), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_laurent("2 * + t1"),
            Err(Error::Syntax { .. })
        ));
        assert!(parse_laurent_in("t3", 2).is_err());
        assert_eq!(parse_laurent_in("t1", 3).unwrap().dim(), 3);
    }
}
