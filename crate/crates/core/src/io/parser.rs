//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr    := sign? term (("+" | "-") term)*
//! term    := unary (("*" | "/")? unary)*      juxtaposition multiplies
//! unary   := "-" unary | power
//! power   := atom ("^" UINT)?
//! atom    := INT | VAR | "(" expr ")"
//! VAR     := z1..zn | z_1..z_n | x | y | z     (also v_i, u_i with `Aliases::Local`)
//! ```
//!
//! Division is allowed only by a nonzero constant, so `1/2*z1` and
//! `(z1+z2)/3` are accepted. The canonical printer emits this grammar.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

/// Largest exponent literal accepted, to keep expansion bounded.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Aliases {
    /// `z_i`, and `x, y, z` for the first three variables.
    Ambient,
    /// Additionally `v_i` and `u_i`, used for chart and local coordinates.
    Local,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn variable(name: &str, nvars: usize, aliases: Aliases) -> Option<usize> {
    let idx = match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => {
            let mut chars = name.chars();
            let head = chars.next()?;
            let ok_head = head == 'z' || (aliases == Aliases::Local && (head == 'v' || head == 'u'));
            if !ok_head {
                return None;
            }
            let rest = chars.as_str();
            let rest = rest.strip_prefix('_').unwrap_or(rest);
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
                return None;
            }
            rest.parse::<usize>().ok().map(|i| i - 1)
        }
    }?;
    (idx < nvars).then_some(idx)
}

fn tokenize(text: &str, nvars: usize, aliases: Aliases) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let advance = |n: usize, column: &mut usize| *column += n;
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut column);
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(err(l, col + (i - start), "decimal literals are not supported; use a/b"));
            }
            let s: String = chars[start..i].iter().collect();
            advance(i - start, &mut column);
            out.push(Spanned {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l,
                column: col,
            });
            continue;
        }
        if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            advance(i - start, &mut column);
            let idx = variable(&name, nvars, aliases)
                .ok_or_else(|| err(l, col, format!("unknown identifier `{name}`")))?;
            out.push(Spanned {
                tok: Tok::Var(idx),
                line: l,
                column: col,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{00b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(l, col, format!("unexpected character `{c}`"))),
        };
        out.push(Spanned { tok, line: l, column: col });
        advance(1, &mut column);
        i += 1;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        err(t.line, t.column, message)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek().tok {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            Tok::Minus => {
                self.bump();
                -&self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.peek().clone();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(err(at.line, at.column, "division only by a nonzero constant"));
                    }
                    let inv = Rational::one() / d.constant_term();
                    acc = acc.scale(&inv);
                }
                Tok::Int(_) | Tok::Var(_) | Tok::LParen => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => {
                let e: u32 = u32::try_from(n)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| err(t.line, t.column, format!("exponent exceeds {MAX_EXPONENT}")))?;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(err(t.line, t.column, "negative exponent")),
            _ => Err(err(t.line, t.column, "exponent must be a non-negative integer literal")),
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(Polynomial::constant(self.nvars, Rational::from_integer(n))),
            Tok::Var(i) => Ok(Polynomial::var(self.nvars, i)),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.here("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(err(t.line, t.column, "unexpected end of input")),
            _ => Err(err(t.line, t.column, "expected a number, variable or `(`")),
        }
    }
}

/// Parse in `nvars` variables.
pub fn parse_in(text: &str, nvars: usize, aliases: Aliases) -> Result<Polynomial> {
    let toks = tokenize(text, nvars, aliases)?;
    let mut p = Parser { toks, pos: 0, nvars };
    if p.peek().tok == Tok::End {
        return Err(p.here("empty expression"));
    }
    let out = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.here("unexpected token"));
    }
    Ok(out)
}

/// Parse a polynomial in `z1, z2, z3`.
pub fn parse(text: &str) -> Result<Polynomial> {
    parse_in(text, 3, Aliases::Ambient)
}

/// Parse a two-variable local normal form written in the second and third
/// local coordinates, e.g. `v2*v3` or `v2^2 + v3^2`; `z2, z3` are accepted too.
pub fn parse_local_form(text: &str) -> Result<Polynomial> {
    let p = parse_in(text, 3, Aliases::Local)?;
    p.project(&[1, 2]).ok_or_else(|| err(1, 1, "local normal form must not involve the first coordinate"))
}

/// Parse a rational literal `a`, `-a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let p = parse_in(text, 0, Aliases::Ambient)?;
    if !p.is_constant() {
        return Err(err(1, 1, "expected a rational constant"));
    }
    Ok(p.constant_term())
}

/// Canonical text of a polynomial; `parse_in(&print(p), p.nvars(), _) == p`.
pub fn print(p: &Polynomial) -> String {
    p.to_string()
}

/// Canonical text of a local form in `v2, v3`.
pub fn print_local_form(p: &Polynomial) -> String {
    let s = p.embed(3, &[1, 2]).to_string();
    s.replace('z', "v")
}
