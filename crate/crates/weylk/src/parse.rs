//! Parser for the canonical polynomial text form, the inverse of `Display`.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := coef ('*' factor)* | factor ('*' factor)*
//! coef   := nat ['/' (nat | '2^' nat)]
//! factor := var ['^' nat]
//! var    := ('e' | 'w') nat          -- 1-based variable index
//! ```

use num_bigint::BigInt;
use thiserror::Error;

use crate::coeff::Coefficient;
use crate::monomial::Monomial;
use crate::polynomial::{Basis, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at offset {at}")]
    Unexpected { found: char, at: usize },
    #[error("unexpected end of input")]
    Eof,
    #[error("variable index {index} out of range 1..={rank}")]
    VarOutOfRange { index: usize, rank: usize },
    #[error("mixed variable bases in one polynomial")]
    MixedBasis,
    #[error("zero denominator")]
    ZeroDenominator,
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_nat(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return match self.peek() {
                Some(found) => Err(ParseError::Unexpected {
                    found,
                    at: self.pos,
                }),
                None => Err(ParseError::Eof),
            };
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }
}

/// Parses a polynomial of the given rank. The basis is inferred from the
/// variable letters (`e` or `w`); a constant defaults to the e-basis.
pub fn parse_polynomial(text: &str, rank: usize) -> Result<Polynomial, ParseError> {
    let mut sc = Scanner::new(text);
    let mut basis: Option<Basis> = None;
    let mut terms: Vec<(Monomial, Coefficient)> = Vec::new();

    let mut sign = match sc.peek() {
        Some('-') => {
            sc.bump();
            -1
        }
        Some('+') => {
            sc.bump();
            1
        }
        _ => 1,
    };

    loop {
        let (m, c) = parse_term(&mut sc, rank, &mut basis)?;
        let c = if sign < 0 { c.neg() } else { c };
        terms.push((m, c));
        match sc.peek() {
            Some('+') => {
                sc.bump();
                sign = 1;
            }
            Some('-') => {
                sc.bump();
                sign = -1;
            }
            Some(found) => return Err(ParseError::Unexpected { found, at: sc.pos }),
            None => break,
        }
    }
    Ok(Polynomial::from_terms(
        rank,
        basis.unwrap_or(Basis::E),
        terms,
    ))
}

fn parse_term(
    sc: &mut Scanner,
    rank: usize,
    basis: &mut Option<Basis>,
) -> Result<(Monomial, Coefficient), ParseError> {
    let mut coeff = Coefficient::one();
    let mut exps = vec![0u32; rank];
    let mut saw_factor = false;

    // optional leading numeric coefficient
    if sc.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
        let numer = sc.expect_nat()?;
        coeff = if sc.eat('/') {
            if sc.eat('2') {
                if sc.eat('^') {
                    let k = sc.expect_nat()?;
                    let k: i64 = k.try_into().map_err(|_| ParseError::Eof)?;
                    Coefficient::dyadic(numer, -k)
                } else {
                    // plain denominator starting with the digit 2
                    let mut digits = BigInt::from(2);
                    while sc.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
                        digits = digits * 10 + sc.expect_digit_value()?;
                    }
                    Coefficient::rational(numer, digits)
                }
            } else {
                let denom = sc.expect_nat()?;
                if denom == BigInt::from(0) {
                    return Err(ParseError::ZeroDenominator);
                }
                Coefficient::rational(numer, denom)
            }
        } else {
            Coefficient::Integer(numer)
        };
        if !sc.eat('*') {
            return Ok((Monomial::new(exps), coeff));
        }
    }

    loop {
        match sc.peek() {
            Some(letter @ ('e' | 'w')) => {
                sc.bump();
                let b = if letter == 'e' {
                    Basis::E
                } else {
                    Basis::Omega
                };
                match basis {
                    Some(prev) if *prev != b => return Err(ParseError::MixedBasis),
                    Some(_) => {}
                    None => *basis = Some(b),
                }
                let idx: usize = sc.expect_nat()?.try_into().map_err(|_| ParseError::Eof)?;
                if idx == 0 || idx > rank {
                    return Err(ParseError::VarOutOfRange { index: idx, rank });
                }
                let power: u32 = if sc.eat('^') {
                    sc.expect_nat()?.try_into().map_err(|_| ParseError::Eof)?
                } else {
                    1
                };
                exps[idx - 1] += power;
                saw_factor = true;
                if !sc.eat('*') {
                    break;
                }
            }
            Some(found) if !saw_factor => return Err(ParseError::Unexpected { found, at: sc.pos }),
            _ if !saw_factor => return Err(ParseError::Eof),
            _ => break,
        }
    }
    Ok((Monomial::new(exps), coeff))
}

impl Scanner<'_> {
    fn expect_digit_value(&mut self) -> Result<BigInt, ParseError> {
        match self.bump() {
            Some(c) if c.is_ascii_digit() => Ok(BigInt::from(c as u8 - b'0')),
            Some(found) => Err(ParseError::Unexpected {
                found,
                at: self.pos,
            }),
            None => Err(ParseError::Eof),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Polynomial;

    #[test]
    fn parses_canonical_examples() {
        let p = parse_polynomial("2*e1^2*e2 - e3^3", 3).unwrap();
        assert_eq!(p.to_string(), "2*e1^2*e2 - e3^3");
        let q = parse_polynomial("3/2^2*e1 + 1", 3).unwrap();
        assert_eq!(q.to_string(), "3/2^2*e1 + 1");
        let r = parse_polynomial("-w1*w2 + 2/3", 2).unwrap();
        assert_eq!(r.to_string(), "-w1*w2 + 2/3");
        assert!(parse_polynomial("0", 4).unwrap().is_zero());
    }

    #[test]
    fn roundtrips_display() {
        let cases = [
            Polynomial::from_int_terms(3, Basis::E, &[(&[2, 1, 0], 2), (&[0, 0, 3], -1)]),
            Polynomial::from_int_terms(2, Basis::Omega, &[(&[1, 1], -4), (&[0, 0], 1)]),
            Polynomial::zero(5, Basis::E),
            Polynomial::from_terms(
                2,
                Basis::E,
                [
                    (Monomial::new(vec![1, 0]), Coefficient::dyadic(-3, -1)),
                    (Monomial::new(vec![0, 0]), Coefficient::rational(2, 5)),
                ],
            ),
        ];
        for p in cases {
            let text = p.to_string();
            let q = parse_polynomial(&text, p.rank()).unwrap();
            if p.is_zero() {
                assert!(q.is_zero());
            } else {
                assert_eq!(p, q, "roundtrip failed for {text}");
            }
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_polynomial("e9", 3).is_err());
        assert!(parse_polynomial("2**e1", 3).is_err());
        assert!(parse_polynomial("e1 + ", 3).is_err());
        assert!(parse_polynomial("e1*w2", 3).is_err());
        assert!(parse_polynomial("1/0", 3).is_err());
        assert!(parse_polynomial("x1", 3).is_err());
    }

    #[test]
    fn whitespace_tolerated() {
        let p = parse_polynomial("  2 * e1 ^ 2 * e2  -  e3 ^ 3 ", 3).unwrap();
        assert_eq!(p.to_string(), "2*e1^2*e2 - e3^3");
    }
}
