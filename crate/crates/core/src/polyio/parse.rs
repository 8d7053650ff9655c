use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FactoredPoly, ParsedPoly};
use crate::{Error, QPoly, Rational, Result};

/// Parses either an expanded polynomial such as `x^2 - 3*x + 2` or a factored
/// one such as `3*(x - 1/5)*(x - 2)^2`. Whitespace is ignored.
pub fn parse_poly(text: &str) -> Result<ParsedPoly> {
    let mut parser = Parser::new(text);
    if text.contains('(') {
        parser.factored().map(ParsedPoly::Factored)
    } else {
        parser.expression().map(ParsedPoly::Dense)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    end: usize,
    idx: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            end: text.len(),
            idx: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn position(&self) -> usize {
        self.chars.get(self.idx).map_or(self.end, |&(p, _)| p)
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            position: self.position(),
            expected: expected.to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(&format!("'{c}'"))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.error("end of input"),
        }
    }

    fn sign(&mut self) -> bool {
        if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.idx;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.idx += 1;
        }
        if start == self.idx {
            return self.error("a decimal integer");
        }
        let digits: String = self.chars[start..self.idx].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn number(&mut self) -> Result<Rational> {
        let numer = self.uint()?;
        if self.eat('/') {
            let denom = self.uint()?;
            if denom.is_zero() {
                self.idx -= 1;
                return self.error("a nonzero denominator");
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat('^') {
            return Ok(1);
        }
        let e = self.uint()?;
        match usize::try_from(e) {
            Ok(e) if e <= u32::MAX as usize => Ok(e),
            _ => self.error("an exponent below 2^32"),
        }
    }

    /// term := number ['*' 'x' ['^' k]] | 'x' ['^' k]
    fn term(&mut self) -> Result<(Rational, usize)> {
        match self.peek() {
            Some('x') => {
                self.idx += 1;
                Ok((Rational::one(), self.exponent()?))
            }
            Some(c) if c.is_ascii_digit() => {
                let c = self.number()?;
                if self.eat('*') {
                    if !self.eat('x') {
                        return self.error("'x'");
                    }
                    Ok((c, self.exponent()?))
                } else {
                    Ok((c, 0))
                }
            }
            _ => self.error("a term"),
        }
    }

    fn expression(&mut self) -> Result<QPoly> {
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut negative = self.sign();
        loop {
            let (c, k) = self.term()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            if negative {
                coeffs[k] -= c;
            } else {
                coeffs[k] += c;
            }
            match self.peek() {
                Some('+') | Some('-') => negative = self.sign(),
                _ => break,
            }
        }
        self.finish()?;
        Ok(QPoly::new(coeffs))
    }

    /// factor := '(' 'x' [('+' | '-') number] ')' ['^' k]
    fn factor(&mut self) -> Result<(Rational, u32)> {
        self.expect('(')?;
        if !self.eat('x') {
            return self.error("'x'");
        }
        let root = match self.peek() {
            Some('-') => {
                self.idx += 1;
                self.number()?
            }
            Some('+') => {
                self.idx += 1;
                -self.number()?
            }
            _ => Rational::zero(),
        };
        self.expect(')')?;
        let at = self.idx;
        let e = self.exponent()?;
        if e == 0 {
            self.idx = at + 1;
            return self.error("a positive exponent");
        }
        Ok((root, e as u32))
    }

    fn factored(&mut self) -> Result<FactoredPoly> {
        let negative = self.eat('-');
        let mut unit = Rational::one();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            unit = self.number()?;
            self.expect('*')?;
        }
        if negative {
            unit = -unit;
        }
        let mut roots = vec![self.factor()?];
        while self.eat('*') {
            roots.push(self.factor()?);
        }
        self.finish()?;
        FactoredPoly::new(unit, roots)
    }
}
