//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := ident ('^' uint)?
//! coeff  := int | int '/' uint
//! ```
//!
//! Whitespace is insignificant; identifiers match `[A-Za-z][A-Za-z0-9_]*`
//! and must be among the declared variables.

use num::{BigInt, Zero};

use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Checks that a variable list has valid, pairwise distinct identifiers.
pub fn validate_vars(vars: &[String]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        if !is_ident(v) {
            return Err(Error::InvalidVariables(format!("`{v}` is not an identifier")));
        }
        if vars[..i].contains(v) {
            return Err(Error::InvalidVariables(format!("`{v}` is declared twice")));
        }
    }
    Ok(())
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '0'..='9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..=i];
                Tok::Int(digits.parse::<BigInt>().map_err(|e| Error::MalformedRational {
                    pos: start,
                    msg: e.to_string(),
                })?)
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{c}`") })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let arity = self.vars.len();
        let mut out = Polynomial::zero(arity);
        let mut negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negate { -c } else { c });
            negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                Tok::End => return Ok(out),
                t => {
                    return Err(Error::Syntax {
                        pos: self.pos(),
                        msg: format!("expected `+`, `-` or end of input, found {}", describe(t)),
                    })
                }
            };
            self.bump();
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let arity = self.vars.len();
        let mut mono = Monomial::one(arity);
        let (coeff, need_factor) = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                (self.coeff_tail(n)?, false)
            }
            _ => (Rational::from_integer(BigInt::from(1)), true),
        };
        if need_factor {
            mono = mono.mul(&self.factor()?);
        }
        while *self.peek() == Tok::Star {
            self.bump();
            mono = mono.mul(&self.factor()?);
        }
        Ok((mono, coeff))
    }

    fn coeff_tail(&mut self, num: BigInt) -> Result<Rational> {
        if *self.peek() != Tok::Slash {
            return Ok(Rational::from_integer(num));
        }
        let slash = self.pos();
        self.bump();
        match self.bump() {
            Tok::Int(d) if d.is_zero() => {
                Err(Error::MalformedRational { pos: slash, msg: "zero denominator".into() })
            }
            Tok::Int(d) => Ok(Rational::new(num, d)),
            t => Err(Error::MalformedRational {
                pos: slash,
                msg: format!("expected denominator after `/`, found {}", describe(&t)),
            }),
        }
    }

    fn factor(&mut self) -> Result<Monomial> {
        let pos = self.pos();
        let name = match self.bump() {
            Tok::Ident(name) => name,
            t => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("expected a variable, found {}", describe(&t)),
                })
            }
        };
        let i = self
            .vars
            .iter()
            .position(|v| *v == name)
            .ok_or(Error::UnknownVariable { name, pos })?;
        let mut e = 1u32;
        if *self.peek() == Tok::Caret {
            self.bump();
            let epos = self.pos();
            e = match self.bump() {
                Tok::Int(n) => u32::try_from(n).map_err(|_| Error::Syntax {
                    pos: epos,
                    msg: "exponent too large".into(),
                })?,
                t => {
                    return Err(Error::Syntax {
                        pos: epos,
                        msg: format!("expected an exponent, found {}", describe(&t)),
                    })
                }
            };
        }
        Ok(Monomial::one(self.vars.len()).with_exponent(i, e))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses polynomial text over the given (ordered) variable names.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Polynomial> {
    validate_vars(vars)?;
    let toks = tokenize(text)?;
    Parser { toks, at: 0, vars }.expr()
}

/// Parses a signed rational literal such as `3`, `-1/2` or `+7/3`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, vars: &[] };
    let neg = match p.peek() {
        Tok::Minus => {
            p.bump();
            true
        }
        Tok::Plus => {
            p.bump();
            false
        }
        _ => false,
    };
    let pos = p.pos();
    let r = match p.bump() {
        Tok::Int(n) => p.coeff_tail(n)?,
        t => {
            return Err(Error::MalformedRational {
                pos,
                msg: format!("expected a number, found {}", describe(&t)),
            })
        }
    };
    if *p.peek() != Tok::End {
        return Err(Error::MalformedRational { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(if neg { -r } else { r })
}
