//! Expression trees for functions of one complex variable `z`.

use std::fmt;

use num_complex::Complex64 as C64;

use super::series::Series;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

/// Exponent of `^`, fixed at parse time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Power {
    Int(i64),
    Real(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    I,
    Pi,
    Z,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    /// `base ^ exponent`; `power` is the exponent's value.
    Pow {
        base: Box<Expr>,
        exponent: Box<Expr>,
        power: Power,
    },
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn contains_z(&self) -> bool {
        match self {
            Expr::Z => true,
            Expr::Num(_) | Expr::I | Expr::Pi => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.contains_z(),
            Expr::Bin(_, a, b) => a.contains_z() || b.contains_z(),
            Expr::Pow { base, .. } => base.contains_z(),
        }
    }

    /// Pointwise value with principal branches.
    pub fn eval(&self, z: C64) -> C64 {
        match self {
            Expr::Num(x) => C64::new(*x, 0.0),
            Expr::I => C64::i(),
            Expr::Pi => C64::new(std::f64::consts::PI, 0.0),
            Expr::Z => z,
            Expr::Neg(a) => -a.eval(z),
            Expr::Bin(op, a, b) => {
                let (x, y) = (a.eval(z), b.eval(z));
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => x / y,
                }
            }
            Expr::Pow { base, power, .. } => {
                let x = base.eval(z);
                match *power {
                    Power::Int(k) => x.powi(k as i32),
                    Power::Real(a) => {
                        if x == C64::new(0.0, 0.0) {
                            if a > 0.0 {
                                C64::new(0.0, 0.0)
                            } else {
                                C64::new(f64::INFINITY, 0.0)
                            }
                        } else {
                            (x.ln() * a).exp()
                        }
                    }
                }
            }
            Expr::Call(f, a) => {
                let x = a.eval(z);
                match f {
                    Func::Exp => x.exp(),
                    Func::Log => x.ln(),
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sqrt => x.sqrt(),
                }
            }
        }
    }

    /// Truncated Laurent series about `center` with `len` terms per leaf.
    pub fn series(&self, center: C64, len: usize) -> Result<Series> {
        Ok(match self {
            Expr::Num(_) | Expr::I | Expr::Pi => Series::constant(self.eval(center), len),
            Expr::Z => Series::variable(center, len),
            Expr::Neg(a) => a.series(center, len)?.neg(),
            Expr::Bin(op, a, b) => {
                let (x, y) = (a.series(center, len)?, b.series(center, len)?);
                match op {
                    BinOp::Add => x.add(&y),
                    BinOp::Sub => x.sub(&y),
                    BinOp::Mul => x.mul(&y),
                    BinOp::Div => x.div(&y)?,
                }
            }
            Expr::Pow { base, power, .. } => {
                let x = base.series(center, len)?;
                match *power {
                    Power::Int(k) => x.powi(k)?,
                    Power::Real(a) => x.powf(a)?,
                }
            }
            Expr::Call(f, a) => {
                let x = a.series(center, len)?;
                match f {
                    Func::Exp => x.exp()?,
                    Func::Log => x.ln()?,
                    Func::Sin => x.sin()?,
                    Func::Cos => x.cos()?,
                    Func::Sqrt => x.sqrt()?,
                }
            }
        })
    }
}

/// Canonical, fully parenthesised form. Parsing it gives back the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x:?}"),
            Expr::I => write!(f, "i"),
            Expr::Pi => write!(f, "pi"),
            Expr::Z => write!(f, "z"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Bin(op, a, b) => {
                let c = match op {
                    BinOp::Add => '+',
                    BinOp::Sub => '-',
                    BinOp::Mul => '*',
                    BinOp::Div => '/',
                };
                write!(f, "({a}{c}{b})")
            }
            Expr::Pow { base, exponent, .. } => write!(f, "({base}^{exponent})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            // optional exponent, only when digits follow
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut k = i + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    i = k;
                }
            }
            let s = &text[start..i];
            let v: f64 = s.parse().map_err(|_| Error::Syntax { pos: start, msg: format!("malformed number '{s}'") })?;
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else if c == '(' {
            out.push((i, Tok::LParen));
            i += 1;
        } else if c == ')' {
            out.push((i, Tok::RParen));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character '{c}'") });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Recursive-descent parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect_rparen(&mut self) -> Result<()> {
        if self.peek() == &Tok::RParen {
            self.bump();
            Ok(())
        } else {
            self.fail("expected ')'")
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.unary()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let exponent = self.unary()?;
        if exponent.contains_z() {
            return Err(Error::Syntax { pos, msg: "exponent must not depend on z".into() });
        }
        let v = exponent.eval(C64::new(0.0, 0.0));
        if !v.re.is_finite() || v.im.abs() > 1e-14 * v.re.abs().max(1.0) {
            return Err(Error::Syntax { pos, msg: "exponent must be a finite real constant".into() });
        }
        let r = v.re;
        let power = if r == r.round() && r.abs() < 1e9 { Power::Int(r as i64) } else { Power::Real(r) };
        Ok(Expr::Pow { base: Box::new(base), exponent: Box::new(exponent), power })
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == &Tok::Op('-') {
            self.bump();
            Ok(Expr::Neg(Box::new(self.atom()?)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "z" => Ok(Expr::Z),
                "i" => Ok(Expr::I),
                "pi" => Ok(Expr::Pi),
                _ => {
                    let Some(func) = Func::from_name(&name) else {
                        return Err(Error::Syntax { pos, msg: format!("unknown identifier '{name}'") });
                    };
                    if self.peek() != &Tok::LParen {
                        return self.fail(format!("expected '(' after {name}"));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    Ok(Expr::Call(func, Box::new(arg)))
                }
            },
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            t => Err(Error::Syntax { pos, msg: format!("unexpected token {t:?}") }),
        }
    }
}

/// Parses `text` against the expression grammar.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return p.fail("trailing input");
    }
    Ok(e)
}
