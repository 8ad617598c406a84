//! Formula grammar:
//!
//! ```text
//! formula := or ( "->" formula )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "!" unary | "E" var unary | "A" var unary | primary
//! primary := "(" formula ")" | Name "(" var ("," var)* ")" | var "=" var | var "!=" var
//! ```
//!
//! Quantifiers are prefix operators with the same binding strength as `!`,
//! so `E x R(x) & S(x)` reads as `(E x R(x)) & S(x)`.

use crate::error::{Error, Result};
use crate::fo::Formula;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Not,
    And,
    Or,
    Arrow,
    Eq,
    Neq,
    End,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
}

fn lex(text: &str) -> Result<Lexer> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut toks = Vec::new();
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'=' => Tok::Eq,
            b'!' if b.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::Neq
            }
            b'!' | b'~' => Tok::Not,
            b'-' if b.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'\'')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{}`", c as char),
                })
            }
        };
        i += 1;
        toks.push((start, tok));
    }
    toks.push((text.len(), Tok::End));
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].1
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.i].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].1.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn var(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.err("expected a variable"),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(q) if (q == "E" || q == "A") && matches!(self.peek_at(1), Tok::Ident(_)) => {
                self.bump();
                let x = self.var()?;
                let body = self.unary()?;
                Ok(if q == "E" {
                    Formula::exists(&x, body)
                } else {
                    Formula::forall(&x, body)
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.bump();
                match self.peek() {
                    Tok::LParen => {
                        self.bump();
                        let mut args = vec![self.var()?];
                        while *self.peek() == Tok::Comma {
                            self.bump();
                            args.push(self.var()?);
                        }
                        self.expect(Tok::RParen, "`)` after arguments")?;
                        Ok(Formula::Atom(name, args))
                    }
                    Tok::Eq => {
                        self.bump();
                        let y = self.var()?;
                        Ok(Formula::VarEqual(name, y))
                    }
                    Tok::Neq => {
                        self.bump();
                        let y = self.var()?;
                        Ok(Formula::not(Formula::VarEqual(name, y)))
                    }
                    _ => self.err("expected `(`, `=` or `!=` after identifier"),
                }
            }
            Tok::End => self.err("unexpected end of formula"),
            _ => self.err("expected a formula"),
        }
    }
}

/// Parse a formula. Error positions are byte offsets into `text`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let lx = lex(text)?;
    let mut p = Parser {
        toks: lx.toks,
        i: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(f)
}
