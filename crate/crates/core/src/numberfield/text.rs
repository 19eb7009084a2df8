//! Text form of field elements: `a/b + c/d*sqrt(D) - ...`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::multiquad::MultiQuadElement;
use super::quadratic::{is_squarefree, QuadraticFieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {position}")]
pub struct TextError {
    pub position: usize,
    pub message: String,
}

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    /// Offset of `src` inside the caller's full input, for error positions.
    base: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str, base: usize) -> Self {
        Self { src, pos: 0, base }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> TextError {
        TextError { position: self.base + self.pos, message: message.into() }
    }

    pub(crate) fn position(&self) -> usize {
        self.base + self.pos
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    pub(crate) fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, token: &str) -> Result<(), TextError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    pub(crate) fn integer(&mut self) -> Result<BigInt, TextError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    pub(crate) fn small_integer(&mut self) -> Result<i64, TextError> {
        let start = self.pos;
        let n = self.integer()?;
        i64::try_from(n).map_err(|_| TextError {
            position: self.base + start,
            message: "integer out of range".into(),
        })
    }

    /// `INT ("/" INT)?`, unsigned.
    fn rational(&mut self) -> Result<BigRational, TextError> {
        let num = self.integer()?;
        let den = if self.eat("/") { self.integer()? } else { BigInt::one() };
        if den.is_zero() {
            return Err(self.error("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    /// Parses a signed sum of terms `r` and `r*sqrt(n)`, returning
    /// `(coefficient, radicand)` pairs with radicand 1 for rational terms.
    fn terms(&mut self) -> Result<Vec<(BigRational, i64, usize)>, TextError> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = if self.eat("-") {
                -BigRational::one()
            } else if self.eat("+") || first {
                BigRational::one()
            } else {
                break;
            };
            first = false;
            self.skip_ws();
            let at = self.base + self.pos;
            let (coeff, rad) = if self.eat("sqrt(") {
                let n = self.small_integer()?;
                self.expect(")")?;
                (BigRational::one(), n)
            } else {
                let r = self.rational()?;
                if self.eat("*") {
                    self.expect("sqrt(")?;
                    let n = self.small_integer()?;
                    self.expect(")")?;
                    (r, n)
                } else {
                    (r, 1)
                }
            };
            out.push((sign * coeff, rad, at));
        }
        Ok(out)
    }

    pub(crate) fn multiquad(&mut self) -> Result<MultiQuadElement, TextError> {
        let mut x = MultiQuadElement::zero();
        for (c, rad, at) in self.terms()? {
            let term = MultiQuadElement::scaled_sqrt(c, rad).ok_or_else(|| TextError {
                position: at,
                message: format!("sqrt({rad}) is outside Q(sqrt 2, sqrt 3, sqrt 5)"),
            })?;
            x = &x + &term;
        }
        Ok(x)
    }
}

/// Parses an element of the multiquadratic field.
pub fn parse_multiquad(text: &str) -> Result<MultiQuadElement, TextError> {
    let mut c = Cursor::new(text, 0);
    let x = c.multiquad()?;
    if !c.at_end() {
        return Err(c.error("trailing input"));
    }
    Ok(x)
}

/// Parses `a + b*sqrt(D)`; every radical term must use the same squarefree `D`.
pub fn parse_quadratic(text: &str) -> Result<QuadraticFieldElement, TextError> {
    let mut c = Cursor::new(text, 0);
    let terms = c.terms()?;
    if !c.at_end() {
        return Err(c.error("trailing input"));
    }
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    let mut d = 1i64;
    for (coeff, rad, at) in terms {
        if rad == 1 {
            a += coeff;
            continue;
        }
        if !is_squarefree(rad) || (d != 1 && d != rad) {
            return Err(TextError {
                position: at,
                message: format!("radical sqrt({rad}) does not match the field"),
            });
        }
        d = rad;
        b += coeff;
    }
    Ok(QuadraticFieldElement::new(a, b, d))
}
