//! Parser for rational expressions such as `(1 - q^2)/(1 - q)` or `2*eta*q^-1`.
//!
//! Grammar (usual precedence, `^` binds tightest and takes an integer exponent):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' ['-'] integer | '^' '(' ['-'] integer ')')?
//! atom   := integer | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::field::{Field, Rational};
use super::ExactError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>, ExactError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Int(digits.parse().unwrap()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(ExactError::Parse(format!("unexpected character '{c}' in \"{src}\"")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse(format!("{msg} in \"{}\"", self.src))
    }

    fn expect_op(&mut self, op: char) -> Result<(), ExactError> {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{op}'")))
        }
    }

    fn expr<F: Field>(&mut self) -> Result<F, ExactError> {
        let mut acc = self.term::<F>()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term::<F>()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term<F: Field>(&mut self) -> Result<F, ExactError> {
        let mut acc = self.unary::<F>()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary::<F>()?;
            acc = if op == '*' {
                acc * rhs
            } else {
                acc.div_checked(&rhs).ok_or(ExactError::DivisionByZero)?
            };
        }
        Ok(acc)
    }

    fn unary<F: Field>(&mut self) -> Result<F, ExactError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary::<F>()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<F: Field>(&mut self) -> Result<F, ExactError> {
        let base = self.atom::<F>()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let paren = self.peek_op() == Some('(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek_op() == Some('-');
        if neg {
            self.pos += 1;
        }
        let exp = match self.tokens.get(self.pos) {
            Some(Token::Int(n)) => {
                i64::try_from(n.clone()).map_err(|_| self.err("exponent out of range"))?
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        self.pos += 1;
        if paren {
            self.expect_op(')')?;
        }
        let exp = if neg { -exp } else { exp };
        base.pow_i(exp).ok_or(ExactError::DivisionByZero)
    }

    fn atom<F: Field>(&mut self) -> Result<F, ExactError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(F::from_rational(&Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                F::variable(&name).ok_or_else(|| self.err(&format!("unknown variable '{name}'")))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect_op(')')?;
                Ok(v)
            }
            _ => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses an expression into the field `F`; variables must be indeterminates of `F`.
pub fn parse_field<F: Field>(src: &str) -> Result<F, ExactError> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(ExactError::Parse("empty expression".to_string()));
    }
    let mut p = Parser { tokens, pos: 0, src };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses a value given as numerator and denominator strings.
pub fn parse_parts<F: Field>(num: &str, den: &str) -> Result<F, ExactError> {
    let n: F = parse_field(num)?;
    let d: F = parse_field(den)?;
    n.div_checked(&d).ok_or(ExactError::DivisionByZero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratfunc::Fq;
    use num_traits::One;

    #[test]
    fn parses_rationals() {
        let x: Rational = parse_field("3/6 - 1").unwrap();
        assert_eq!(x, Rational::new((-1).into(), 2.into()));
        let y: Rational = parse_field("2^-2").unwrap();
        assert_eq!(y, Rational::new(1.into(), 4.into()));
    }

    #[test]
    fn parses_powers_and_precedence() {
        let a: Fq = parse_field("1/q^2").unwrap();
        let b: Fq = parse_field("q^(-2)").unwrap();
        assert_eq!(a, b);
        let c: Fq = parse_field("-q^2").unwrap();
        assert_eq!(c.to_string(), "-q^2");
        let d: Fq = parse_field("(q + 1)*(q - 1) - q^2").unwrap();
        assert_eq!(d, -Fq::one());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_field::<Fq>("eta").is_err());
        assert!(parse_field::<Fq>("1/(q - q)").is_err());
        assert!(parse_field::<Fq>("q +").is_err());
        assert!(parse_field::<Fq>("q $ 1").is_err());
        assert!(parse_field::<Rational>("q").is_err());
    }
}
