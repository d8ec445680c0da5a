//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := ['-'] base ('^' nonneg-int)?
//! base   := rational-literal | 'x' | 'y' | 'z' | 't' | '(' expr ')'
//! ```
//!
//! Implicit multiplication is rejected. Expansion is bounded so that hostile
//! input cannot exhaust memory.

use num_bigint::BigInt;
use num_traits::Zero;

use super::mpoly::{MPoly, Var};
use super::rat::Rat;

pub const MAX_EXPONENT: u32 = 1024;
pub const MAX_TERMS: usize = 5_000;
pub const MAX_TOTAL_DEGREE: u32 = 4096;
pub const MAX_DEPTH: usize = 128;
pub const MAX_LITERAL_DIGITS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("exponent at position {pos} is not a non-negative integer literal")]
    BadExponent { pos: usize },
    #[error("division by zero in literal at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("expression too large at position {pos}: {msg}")]
    TooLarge { pos: usize, msg: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownIdentifier { pos, .. }
            | ParseError::BadExponent { pos }
            | ParseError::ZeroDenominator { pos }
            | ParseError::TooLarge { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
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

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos - start > MAX_LITERAL_DIGITS {
            return Err(ParseError::TooLarge {
                pos: start,
                msg: "numeric literal too long".into(),
            });
        }
        // Only ASCII digits were consumed.
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("0"))
    }

    fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        self.skip_ws();
        let pos = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((pos, Tok::End));
        };
        let single = |t: Tok| Ok((pos, t));
        match c {
            b'+' => {
                self.pos += 1;
                single(Tok::Plus)
            }
            b'-' => {
                self.pos += 1;
                single(Tok::Minus)
            }
            b'*' => {
                self.pos += 1;
                single(Tok::Star)
            }
            b'^' => {
                self.pos += 1;
                single(Tok::Caret)
            }
            b'(' => {
                self.pos += 1;
                single(Tok::LParen)
            }
            b')' => {
                self.pos += 1;
                single(Tok::RParen)
            }
            b'0'..=b'9' => {
                let n: BigInt = self.digits()?.parse().unwrap_or_default();
                if self.src.get(self.pos) == Some(&b'.') {
                    return Err(ParseError::Syntax {
                        pos: self.pos,
                        msg: "decimal literals are not accepted; use a fraction".into(),
                    });
                }
                if self.src.get(self.pos) == Some(&b'/') {
                    let slash = self.pos;
                    self.pos += 1;
                    if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        return Err(ParseError::Syntax {
                            pos: slash,
                            msg: "expected digits after '/' in rational literal".into(),
                        });
                    }
                    let d: BigInt = self.digits()?.parse().unwrap_or_default();
                    if d.is_zero() {
                        return Err(ParseError::ZeroDenominator { pos });
                    }
                    Ok((pos, Tok::Num(Rat::new(n, d))))
                } else {
                    Ok((pos, Tok::Int(n)))
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                Ok((pos, Tok::Ident(name)))
            }
            _ => {
                let ch = std::str::from_utf8(&self.src[pos..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| format!("byte 0x{c:02x}"));
                Err(ParseError::Syntax {
                    pos,
                    msg: format!("unexpected character `{ch}`"),
                })
            }
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<(), ParseError> {
        let (pos, tok) = self.lexer.next()?;
        self.pos = pos;
        self.tok = tok;
        Ok(())
    }

    fn check_size(&self, p: &MPoly, pos: usize) -> Result<(), ParseError> {
        if p.num_terms() > MAX_TERMS {
            return Err(ParseError::TooLarge {
                pos,
                msg: format!("more than {MAX_TERMS} terms"),
            });
        }
        if p.total_degree().unwrap_or(0) > MAX_TOTAL_DEGREE {
            return Err(ParseError::TooLarge {
                pos,
                msg: format!("total degree above {MAX_TOTAL_DEGREE}"),
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::TooLarge {
                pos: self.pos,
                msg: "nesting too deep".into(),
            });
        }
        let mut neg = false;
        match self.tok {
            Tok::Plus => self.advance()?,
            Tok::Minus => {
                neg = true;
                self.advance()?;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.tok {
                Tok::Plus => {
                    self.advance()?;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.advance()?;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
            self.check_size(&acc, self.pos)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.tok == Tok::Star {
            let pos = self.pos;
            self.advance()?;
            let rhs = self.factor()?;
            self.guard_product(&acc, &rhs, pos)?;
            acc = acc.mul(&rhs);
            self.check_size(&acc, pos)?;
        }
        Ok(acc)
    }

    fn guard_product(&self, a: &MPoly, b: &MPoly, pos: usize) -> Result<(), ParseError> {
        let deg = a.total_degree().unwrap_or(0) as u64 + b.total_degree().unwrap_or(0) as u64;
        let terms = a.num_terms() as u64 * b.num_terms() as u64;
        if deg > MAX_TOTAL_DEGREE as u64 || terms > 20 * MAX_TERMS as u64 {
            return Err(ParseError::TooLarge {
                pos,
                msg: "product too large".into(),
            });
        }
        Ok(())
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let mut negate = false;
        while self.tok == Tok::Minus {
            negate = !negate;
            self.advance()?;
        }
        let base = self.power()?;
        Ok(if negate { base.neg() } else { base })
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.base()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.advance()?;
        let pos = self.pos;
        let e = match &self.tok {
            Tok::Int(n) => n.clone(),
            _ => return Err(ParseError::BadExponent { pos }),
        };
        self.advance()?;
        if e > BigInt::from(MAX_EXPONENT) {
            return Err(ParseError::TooLarge {
                pos,
                msg: format!("exponent above {MAX_EXPONENT}"),
            });
        }
        let e: u32 = e.try_into().unwrap_or(0);
        if e == 0 {
            return Ok(MPoly::one());
        }
        let deg = base.total_degree().unwrap_or(0) as u64 * e as u64;
        if deg > MAX_TOTAL_DEGREE as u64 || multiset_bound(base.num_terms(), e) > MAX_TERMS as u64 {
            return Err(ParseError::TooLarge {
                pos,
                msg: "power too large".into(),
            });
        }
        let mut acc = MPoly::one();
        for _ in 0..e {
            self.guard_product(&acc, &base, pos)?;
            acc = acc.mul(&base);
            self.check_size(&acc, pos)?;
        }
        Ok(acc)
    }

    fn base(&mut self) -> Result<MPoly, ParseError> {
        let pos = self.pos;
        match std::mem::replace(&mut self.tok, Tok::End) {
            Tok::Int(n) => {
                self.advance()?;
                Ok(MPoly::constant(Rat::from_integer(n)))
            }
            Tok::Num(r) => {
                self.advance()?;
                Ok(MPoly::constant(r))
            }
            Tok::Ident(name) => match Var::from_name(&name) {
                Some(v) => {
                    self.advance()?;
                    Ok(MPoly::var(v))
                }
                None => Err(ParseError::UnknownIdentifier { pos, name }),
            },
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(ParseError::Syntax {
                        pos: self.pos,
                        msg: "expected `)`".into(),
                    });
                }
                self.advance()?;
                Ok(inner)
            }
            Tok::End => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected {}", describe(&other)),
            }),
        }
    }
}

/// Upper bound on the number of terms of a `k`-term polynomial raised to `e`:
/// the number of multisets of size `e` drawn from `k` terms, saturating.
fn multiset_bound(k: usize, e: u32) -> u64 {
    if k <= 1 {
        return 1;
    }
    let mut acc: u64 = 1;
    for i in 1..k as u64 {
        acc = acc.saturating_mul(e as u64 + i) / i;
        if acc > u32::MAX as u64 {
            return u64::MAX;
        }
    }
    acc
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Num(_) | Tok::Int(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::End => "end of input",
    }
}

/// Parses and fully expands an expression into canonical form.
pub fn parse(text: &str) -> Result<MPoly, ParseError> {
    let mut parser = Parser {
        lexer: Lexer {
            src: text.as_bytes(),
            pos: 0,
        },
        tok: Tok::End,
        pos: 0,
        depth: 0,
    };
    parser.advance()?;
    let p = parser.expr()?;
    if parser.tok != Tok::End {
        let msg = match &parser.tok {
            Tok::Ident(_) | Tok::Int(_) | Tok::Num(_) | Tok::LParen => {
                "implicit multiplication is not accepted; insert `*`".to_string()
            }
            other => format!("unexpected {}", describe(other)),
        };
        return Err(ParseError::Syntax {
            pos: parser.pos,
            msg,
        });
    }
    Ok(p)
}

/// Bytes-in entry point used by fuzzing: never panics on arbitrary input.
pub fn parse_bytes(data: &[u8]) -> Result<MPoly, ParseError> {
    match std::str::from_utf8(data) {
        Ok(s) => parse(s),
        Err(e) => Err(ParseError::Syntax {
            pos: e.valid_up_to(),
            msg: "input is not valid UTF-8".into(),
        }),
    }
}
