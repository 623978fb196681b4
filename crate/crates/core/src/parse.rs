//! Recursive-descent parser for symbol expressions.
//!
//! ```text
//! expression := sign? term (('+' | '-') term)*
//! term       := factor ('*' factor)*
//! factor     := atom ('^' nonneg-integer)?
//! atom       := rational | 'i' | 'z1' | 'z2' | 'conj(' expression ')' | '(' expression ')'
//! rational   := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is ignored between tokens.

use num_bigint::BigInt;

use crate::error::ParseError;
use crate::poly::{LaurentPoly, MonomialIndex};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Maximum number of decimal digits in one integer literal. `None`
    /// means arbitrary precision.
    pub max_integer_digits: Option<usize>,
    /// Maximum exponent accepted after `^`.
    pub max_exponent: Option<u32>,
}

pub fn parse_symbol(text: &str) -> Result<LaurentPoly, ParseError> {
    parse_symbol_with(text, &ParseOptions::default())
}

pub fn parse_symbol_with(text: &str, opts: &ParseOptions) -> Result<LaurentPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        opts,
    };
    let out = p.expression()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    opts: &'a ParseOptions,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let w = word.as_bytes();
        if self.src[self.pos..].starts_with(w) {
            // keywords must not run into an identifier character
            let next = self.src.get(self.pos + w.len()).copied();
            if word.ends_with('(') || !next.is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
            {
                self.pos += w.len();
                return true;
            }
        }
        false
    }

    fn expression(&mut self) -> Result<LaurentPoly, ParseError> {
        let negate_first = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate_first { -&first } else { first };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let n = self.integer()?;
            let exp: u32 = n
                .try_into()
                .map_err(|_| ParseError::Syntax {
                    position: start,
                    message: "exponent too large".into(),
                })?;
            if let Some(limit) = self.opts.max_exponent {
                if exp > limit {
                    return Err(ParseError::Syntax {
                        position: start,
                        message: format!("exponent {exp} above limit {limit}"),
                    });
                }
            }
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentPoly, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(LaurentPoly::constant(Scalar::real(r)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expression()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(_) => {
                if self.keyword("conj(") {
                    let e = self.expression()?;
                    self.expect(b')')?;
                    Ok(e.conjugate())
                } else if self.keyword("z1") {
                    Ok(LaurentPoly::z1())
                } else if self.keyword("z2") {
                    Ok(LaurentPoly::z2())
                } else if self.keyword("i") {
                    Ok(LaurentPoly::constant(Scalar::i()))
                } else {
                    Err(self.error("expected a number, `i`, `z1`, `z2`, `conj(` or `(`"))
                }
            }
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.integer()?;
        // only a digit may follow '/' inside a literal
        let save = self.pos;
        if self.eat(b'/') {
            self.skip_ws();
            let start = self.pos;
            if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos = save;
                return Err(self.error("expected a positive integer denominator after `/`"));
            }
            let den = self.integer()?;
            if den == BigInt::from(0) {
                return Err(ParseError::Syntax {
                    position: start,
                    message: "zero denominator".into(),
                });
            }
            return Ok(Rational::from_bigints(num, den));
        }
        Ok(Rational::from_bigints(num, BigInt::from(1)))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = self.pos - start;
        if let Some(limit) = self.opts.max_integer_digits {
            if digits > limit {
                return Err(ParseError::Overflow {
                    position: start,
                    digits,
                    limit,
                });
            }
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }
}

/// Convenience for tests and the catalog: the monomial `z1^i z2^j`.
pub fn monomial(i: i64, j: i64) -> LaurentPoly {
    LaurentPoly::monomial(MonomialIndex::new(i, j), Scalar::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(i: i64, j: i64) -> MonomialIndex {
        MonomialIndex::new(i, j)
    }

    #[test]
    fn grammar_examples() {
        let f = parse_symbol("1 + 2*z1 + (3/2)*conj(z2)").unwrap();
        let expected = LaurentPoly::from_terms([
            (m(0, 0), Scalar::one()),
            (m(1, 0), Scalar::from_integer(2)),
            (m(0, -1), Scalar::from_ratio(3, 2)),
        ]);
        assert_eq!(f, expected);
        assert_eq!(parse_symbol("z1*conj(z2)").unwrap(), monomial(1, -1));
        assert_eq!(
            parse_symbol("i*z1^2").unwrap(),
            LaurentPoly::monomial(m(2, 0), Scalar::i())
        );
    }

    #[test]
    fn rational_literal_binds_tighter_than_product() {
        assert_eq!(
            parse_symbol("3/2*z1").unwrap(),
            LaurentPoly::monomial(m(1, 0), Scalar::from_ratio(3, 2))
        );
        assert_eq!(parse_symbol("i^2").unwrap(), LaurentPoly::from_integer(-1));
        assert_eq!(parse_symbol(" - z2 ").unwrap(), -&monomial(0, 1));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_symbol("z1 + * z2").unwrap_err();
        assert_eq!(err.position(), 5);
        assert!(parse_symbol("z3").is_err());
        assert!(parse_symbol("1/0").is_err());
        assert!(parse_symbol("z1/2").is_err());
        assert!(parse_symbol("conj(z1").is_err());
        assert!(parse_symbol("(z1))").is_err());
        assert!(parse_symbol("").is_err());
        assert!(parse_symbol("z1^-1").is_err());
    }

    #[test]
    fn digit_limit_reports_overflow() {
        let opts = ParseOptions {
            max_integer_digits: Some(4),
            ..Default::default()
        };
        assert!(parse_symbol_with("1234*z1", &opts).is_ok());
        assert!(matches!(
            parse_symbol_with("z1 + 12345", &opts),
            Err(ParseError::Overflow { position: 5, .. })
        ));
        // default is arbitrary precision
        let huge = "123456789012345678901234567890";
        let f = parse_symbol(huge).unwrap();
        assert_eq!(f.constant_term().re.to_string(), huge);
    }
}
