//! Recursive-descent parser for integer polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('-')? factor ('*' factor)*
//! factor := base ('^' natural)?
//! base   := integer | variable | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Errors carry 1-based line and column.

use num_bigint::BigInt;

use super::poly::MultiPolynomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: tl, column: tc });
            i += 1;
            column += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            column += i - start;
            let v: BigInt = digits.parse().expect("ascii digits");
            out.push(Token { tok: Tok::Int(v), line: tl, column: tc });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: tl,
                column: tc,
            });
        } else {
            return Err(Error::Parse {
                line: tl,
                column: tc,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, tok: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: tok.line,
            column: tok.column,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<MultiPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
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

    fn term(&mut self) -> Result<MultiPolynomial> {
        let negate = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn factor(&mut self) -> Result<MultiPolynomial> {
        let base = self.base()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let tok = self.bump();
            return match &tok.tok {
                Tok::Int(k) => match u32::try_from(k) {
                    Ok(k) if k <= 1024 => Ok(base.pow(k)),
                    _ => self.error(&tok, "exponent too large"),
                },
                _ => self.error(&tok, "expected a natural-number exponent"),
            };
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MultiPolynomial> {
        let n = self.vars.len();
        let tok = self.bump();
        match &tok.tok {
            Tok::Int(v) => Ok(MultiPolynomial::constant(n, v.clone())),
            Tok::Ident(name) => match self.vars.iter().position(|v| v == name) {
                Some(j) => Ok(MultiPolynomial::variable(n, j)),
                None => self.error(&tok, format!("unknown variable '{name}'")),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return self.error(&close, "expected ')'");
                }
                Ok(inner)
            }
            Tok::End => self.error(&tok, "unexpected end of expression"),
            _ => self.error(&tok, "expected an integer, variable or '('"),
        }
    }
}

/// Parses an expression over the named variables.
pub fn parse_polynomial(src: &str, vars: &[String]) -> Result<MultiPolynomial> {
    let tokens = tokenize(src)?;
    let mut parser = Parser { tokens, pos: 0, vars };
    let poly = parser.expr()?;
    let tail = parser.peek().clone();
    if tail.tok != Tok::End {
        return parser.error(&tail, "unexpected trailing input");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn parses_cusp() {
        let p = parse_polynomial("y^2 - x^3", &vars()).unwrap();
        assert_eq!(p, MultiPolynomial::from_terms(2, [(vec![0, 2], 1), (vec![3, 0], -1)]));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let p = parse_polynomial("-x^2", &vars()).unwrap();
        assert_eq!(p, MultiPolynomial::from_terms(2, [(vec![2, 0], -1)]));
        let q = parse_polynomial("x - -y", &vars()).unwrap();
        assert_eq!(q, MultiPolynomial::from_terms(2, [(vec![1, 0], 1), (vec![0, 1], 1)]));
    }

    #[test]
    fn parentheses_and_big_integers() {
        let p = parse_polynomial(" ( x + 1 ) ^ 2 * 123456789012345678901234567890 ", &vars()).unwrap();
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.terms().count(), 3);
    }

    #[test]
    fn reports_positions() {
        match parse_polynomial("x +\n  * y", &vars()) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_polynomial("x + z", &vars()) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (1, 5));
                assert!(message.contains("'z'"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_polynomial("2x", &vars()), Err(Error::Parse { column: 2, .. })));
        assert!(matches!(parse_polynomial("(x", &vars()), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x $ y", &vars()), Err(Error::Parse { column: 3, .. })));
    }
}
