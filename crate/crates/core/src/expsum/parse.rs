//! Lexer and recursive-descent parser for exponential-sum expressions.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/")? unary)*      juxtaposition multiplies
//! unary   := ("+" | "-") unary | power
//! power   := primary ("^" integer)?
//! primary := number | "i" | "sqrt" d | "sqrt(" d ")" | "z" k | "z"
//!          | "exp(" expr ")" | "(" expr ")"
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '0'..='9' | '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                let lit = &text[start..i];
                out.push((
                    start,
                    Token::Number(
                        decimal(lit).ok_or_else(|| syntax(start, format!("bad number {lit:?}")))?,
                    ),
                ));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character {other:?}"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

fn decimal(lit: &str) -> Option<BigRational> {
    let (int, frac) = match lit.split_once('.') {
        Some((a, b)) => (a, b),
        None => (lit, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(num, den))
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Kind {
    Number(BigRational),
    Imaginary,
    /// `sqrt(d)` for a positive integer `d`.
    Sqrt(u64),
    /// Variable index, 1-based; 0 for a bare `z`.
    Var(usize),
    Exp(Box<Node>),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Node {
    pub pos: usize,
    pub kind: Kind,
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.at)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Node {
                        pos,
                        kind: Kind::Add(Box::new(lhs), Box::new(rhs)),
                    };
                }
                Some(Token::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Node {
                        pos,
                        kind: Kind::Sub(Box::new(lhs), Box::new(rhs)),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Node {
                        pos,
                        kind: Kind::Mul(Box::new(lhs), Box::new(rhs)),
                    };
                }
                Some(Token::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Node {
                        pos,
                        kind: Kind::Div(Box::new(lhs), Box::new(rhs)),
                    };
                }
                Some(Token::Number(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    let rhs = self.power()?;
                    lhs = Node {
                        pos,
                        kind: Kind::Mul(Box::new(lhs), Box::new(rhs)),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        let pos = self.pos();
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                let inner = self.unary()?;
                Ok(Node {
                    pos,
                    kind: Kind::Neg(Box::new(inner)),
                })
            }
            Some(Token::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            let pos = self.pos();
            self.bump();
            let epos = self.pos();
            let e = match self.bump() {
                Some(Token::Number(x)) if x.is_integer() => x
                    .to_integer()
                    .try_into()
                    .map_err(|_| syntax(epos, "exponent too large"))?,
                _ => return Err(syntax(epos, "expected a nonnegative integer exponent")),
            };
            return Ok(Node {
                pos,
                kind: Kind::Pow(Box::new(base), e),
            });
        }
        Ok(base)
    }

    fn integer_literal(&mut self) -> Result<u64> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Number(x)) if x.is_integer() && !x.is_zero() => x
                .to_integer()
                .try_into()
                .map_err(|_| syntax(pos, "integer too large")),
            _ => Err(syntax(pos, "expected a positive integer")),
        }
    }

    fn primary(&mut self) -> Result<Node> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Number(x)) => Ok(Node {
                pos,
                kind: Kind::Number(x),
            }),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => self.identifier(pos, &name),
            Some(_) => Err(syntax(pos, "expected a number, variable or function")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }

    fn identifier(&mut self, pos: usize, name: &str) -> Result<Node> {
        match name {
            "i" | "I" => Ok(Node {
                pos,
                kind: Kind::Imaginary,
            }),
            "exp" => {
                self.expect(Token::LParen, "'(' after exp")?;
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(Node {
                    pos,
                    kind: Kind::Exp(Box::new(inner)),
                })
            }
            "sqrt" => {
                self.expect(Token::LParen, "'(' after sqrt")?;
                let d = self.integer_literal()?;
                self.expect(Token::RParen, "')'")?;
                Ok(Node {
                    pos,
                    kind: Kind::Sqrt(d),
                })
            }
            "z" => Ok(Node {
                pos,
                kind: Kind::Var(0),
            }),
            _ => {
                if let Some(rest) = name.strip_prefix("sqrt") {
                    if let Ok(d) = rest.parse::<u64>() {
                        if d > 0 {
                            return Ok(Node {
                                pos,
                                kind: Kind::Sqrt(d),
                            });
                        }
                    }
                }
                if let Some(rest) = name.strip_prefix('z') {
                    if let Ok(k) = rest.parse::<usize>() {
                        if k > 0 {
                            return Ok(Node {
                                pos,
                                kind: Kind::Var(k),
                            });
                        }
                    }
                }
                Err(syntax(pos, format!("unknown identifier {name:?}")))
            }
        }
    }
}

pub(crate) fn parse(text: &str) -> Result<Node> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut p = Parser {
        tokens,
        at: 0,
        end: text.len(),
    };
    let node = p.expr()?;
    if p.at < p.tokens.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(decimal("1.5"), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(decimal(".25"), Some(BigRational::new(1.into(), 4.into())));
        assert_eq!(decimal("1.2.3"), None);
    }

    #[test]
    fn error_positions() {
        match parse("exp(z1) + $") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        match parse("exp(z1") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse("").is_err());
        assert!(parse("2 +").is_err());
        assert!(parse("foo(1)").is_err());
    }

    #[test]
    fn juxtaposition_multiplies() {
        let n = parse("2exp(z)").unwrap();
        assert!(matches!(n.kind, Kind::Mul(_, _)));
    }
}
