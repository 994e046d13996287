//! Human-readable polynomial syntax.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | variable | '(' expr ')'
//! ```
//!
//! Variables are `x1 .. xn`; `x`, `y`, `z` alias `x1`, `x2`, `x3`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
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
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(v)));
                continue;
            }
            b'x' | b'y' | b'z' => {
                i += 1;
                if c == b'x' && i < bytes.len() && bytes[i].is_ascii_digit() {
                    let ds = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let k: usize = src[ds..i].parse().map_err(|_| Error::Parse {
                        pos: ds,
                        msg: "variable index too large".into(),
                    })?;
                    if k == 0 {
                        return Err(Error::Parse {
                            pos: ds,
                            msg: "variables are numbered from x1".into(),
                        });
                    }
                    out.push((start, Tok::Var(k - 1)));
                } else {
                    out.push((start, Tok::Var((c - b'x') as usize)));
                }
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!(
                        "unexpected character `{}`",
                        src[start..].chars().next().unwrap()
                    ),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Num(Rational),
    Var(usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ast::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e = e.to_u32().ok_or_else(|| Error::Parse {
                        pos: self.offset(),
                        msg: "exponent too large".into(),
                    })?;
                    Ok(Ast::Pow(Box::new(base), e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.pos += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(den)) if !den.is_zero() => {
                            self.pos += 1;
                            Ok(Ast::Num(Rational::new(num, den)))
                        }
                        Some(Tok::Int(_)) => self.err("zero denominator"),
                        _ => self.err("expected an integer denominator"),
                    }
                } else {
                    Ok(Ast::Num(Rational::from_integer(num)))
                }
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Ast::Var(i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn max_var(ast: &Ast) -> Option<usize> {
    match ast {
        Ast::Num(_) => None,
        Ast::Var(i) => Some(*i),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => max_var(a).max(max_var(b)),
        Ast::Neg(a) | Ast::Pow(a, _) => max_var(a),
    }
}

fn eval(ast: &Ast, n: usize) -> Polynomial {
    match ast {
        Ast::Num(c) => Polynomial::constant(n, c.clone()),
        Ast::Var(i) => Polynomial::var(n, *i),
        Ast::Add(a, b) => &eval(a, n) + &eval(b, n),
        Ast::Sub(a, b) => &eval(a, n) - &eval(b, n),
        Ast::Neg(a) => -&eval(a, n),
        Ast::Mul(a, b) => &eval(a, n) * &eval(b, n),
        Ast::Pow(a, e) => eval(a, n).pow(*e),
    }
}

/// Parses the text syntax. With `vars = None` the variable count is the
/// largest index used (at least one).
pub fn parse_text(src: &str, vars: Option<usize>) -> Result<Polynomial> {
    let toks = lex(src)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let ast = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("trailing input");
    }
    let used = max_var(&ast).map(|i| i + 1).unwrap_or(1);
    let n = match vars {
        Some(0) => return Err(Error::NoVariables),
        Some(n) if used > n => {
            return Err(Error::VariableOutOfRange {
                index: used,
                vars: n,
            })
        }
        Some(n) => n,
        None => used,
    };
    Ok(eval(&ast, n))
}

fn format_coeff(c: &Rational, float: bool) -> String {
    if float {
        format!("{}", c.to_f64().unwrap_or(f64::NAN))
    } else {
        c.to_string()
    }
}

/// Renders in canonical order, e.g. `x^3 + 3*x*y + y^3`. With `float`
/// coefficients print as decimals (display only).
pub fn format_polynomial(p: &Polynomial, float: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&format_coeff(&abs, float));
        } else {
            if !abs.is_one() {
                out.push_str(&format_coeff(&abs, float));
                out.push('*');
            }
            out.push_str(&m.to_string());
        }
    }
    out
}
