//! Recursive-descent parser for integer polynomials in `x` and `y`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'x' | 'y' | '(' expr ')'
//! ```

use std::fmt;

use curvetop::polycore::BivariatePolynomial;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Exponents above this are rejected to keep expansion bounded.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer {n}"),
        Tok::X => "'x'".into(),
        Tok::Y => "'y'".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'e' || bytes[i] == b'E') {
                    return err(i, "non-integer coefficient");
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            b'x' => Tok::X,
            b'y' => Tok::Y,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'/' | b'.' => return err(i, "non-integer coefficient"),
            _ => {
                let ch = text[i..].chars().next().expect("char boundary");
                return err(i, format!("unexpected character '{ch}'"));
            }
        };
        out.push((tok, i));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Int(_) | Tok::X | Tok::Y | Tok::LParen => {
                    return err(self.offset(), "implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BivariatePolynomial, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let e = match self.bump() {
            Tok::Int(n) => n,
            Tok::Minus => return err(at, "negative exponent"),
            t => return err(at, format!("expected an integer exponent, found {}", describe(&t))),
        };
        let e = match e.to_u32() {
            Some(e) if e <= MAX_EXPONENT => e,
            _ => return err(at, format!("exponent larger than {MAX_EXPONENT}")),
        };
        if *self.peek() == Tok::Caret {
            return err(self.offset(), "chained exponents are ambiguous; add parentheses");
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(BivariatePolynomial::constant(n)),
            Tok::X => Ok(BivariatePolynomial::x()),
            Tok::Y => Ok(BivariatePolynomial::y()),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    t => err(close, format!("expected ')', found {}", describe(&t))),
                }
            }
            t => err(at, format!("expected a number, 'x', 'y' or '(', found {}", describe(&t))),
        }
    }
}

/// Parses and expands a polynomial.
pub fn parse_polynomial(text: &str) -> Result<BivariatePolynomial, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let f = p.expr()?;
    match p.peek() {
        Tok::End => Ok(f),
        Tok::RParen => err(p.offset(), "unmatched ')'"),
        t => err(p.offset(), format!("unexpected {}", describe(t))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(u32, u32, i64)]) -> BivariatePolynomial {
        BivariatePolynomial::from_i64_terms(t)
    }

    #[test]
    fn examples() {
        assert_eq!(parse_polynomial("x^2 + y^2 - 1").unwrap(), bp(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]));
        assert_eq!(parse_polynomial("y^2 - x^2*(x+1)").unwrap(), bp(&[(0, 2, 1), (3, 0, -1), (2, 0, -1)]));
        assert_eq!(parse_polynomial("x*y - 1").unwrap(), bp(&[(1, 1, 1), (0, 0, -1)]));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_polynomial("-x^2").unwrap(), bp(&[(2, 0, -1)]));
        assert_eq!(parse_polynomial("2*x - 3*y + 4").unwrap(), bp(&[(1, 0, 2), (0, 1, -3), (0, 0, 4)]));
        assert_eq!(parse_polynomial("(x - y)^2").unwrap(), bp(&[(2, 0, 1), (1, 1, -2), (0, 2, 1)]));
        assert_eq!(parse_polynomial("--x").unwrap(), bp(&[(1, 0, 1)]));
        assert_eq!(parse_polynomial("x - x").unwrap(), BivariatePolynomial::zero());
        assert_eq!(parse_polynomial("123456789012345678901234567890").unwrap().to_text(), "123456789012345678901234567890");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_polynomial("2x").unwrap_err();
        assert_eq!(e.position, 1);
        assert!(e.message.contains("implicit"));
        assert_eq!(parse_polynomial("x + 1.5").unwrap_err().position, 5);
        assert!(parse_polynomial("x/2").unwrap_err().message.contains("non-integer"));
        assert_eq!(parse_polynomial("(x + y").unwrap_err().position, 6);
        assert_eq!(parse_polynomial("x + ").unwrap_err().position, 4);
        assert_eq!(parse_polynomial("x)").unwrap_err().position, 1);
        assert_eq!(parse_polynomial("x^-1").unwrap_err().position, 2);
        assert_eq!(parse_polynomial("x^2^2").unwrap_err().position, 3);
        assert_eq!(parse_polynomial("z").unwrap_err().position, 0);
        assert_eq!(parse_polynomial("").unwrap_err().position, 0);
        assert_eq!(parse_polynomial("(x)(y)").unwrap_err().position, 3);
        assert_eq!(parse_polynomial("x^99999").unwrap_err().position, 2);
    }
}
