//! A tiny infix expression language over the chart coordinates `u` and `v`.
//!
//! ```text
//! pair  := expr ',' expr
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number | 'u' | 'v' | 'pi' | func '(' expr ')' | '(' expr ')'
//! func  := 'sin' | 'cos' | 'exp'
//! ```
//!
//! Whitespace is ignored, names are case-sensitive and `^` is
//! right-associative and binds tighter than unary minus.

use std::fmt;

use thiserror::Error;

use super::scalar::Number;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: expected {expected}, found {found}")]
pub struct ParseError {
    /// Character offset into the source text.
    pub position: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Pi,
    Var(Var),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// True when the expression mentions neither `u` nor `v`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Pi => true,
            Expr::Var(_) => false,
            Expr::Neg(e) | Expr::Call(_, e) => e.is_constant(),
            Expr::Binary(_, a, b) => a.is_constant() && b.is_constant(),
        }
    }

    /// Evaluates with `u` and `v` bound to values of any supported number type.
    pub fn eval<N: Number>(&self, u: N, v: N) -> Result<N> {
        Ok(match self {
            Expr::Const(c) => N::constant(*c),
            Expr::Pi => N::constant(std::f64::consts::PI),
            Expr::Var(Var::U) => u,
            Expr::Var(Var::V) => v,
            Expr::Neg(e) => -e.eval(u, v)?,
            Expr::Call(f, e) => {
                let x = e.eval(u, v)?;
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Exp => x.exp(),
                }
            }
            Expr::Binary(op, a, b) => {
                let x = a.eval(u, v)?;
                match op {
                    BinOp::Add => x + b.eval(u, v)?,
                    BinOp::Sub => x - b.eval(u, v)?,
                    BinOp::Mul => x * b.eval(u, v)?,
                    BinOp::Div => x.div(b.eval(u, v)?)?,
                    BinOp::Pow if b.is_constant() => x.powf(b.eval(0.0, 0.0)?)?,
                    BinOp::Pow => x.pow(b.eval(u, v)?)?,
                }
            }
        })
    }

    /// Parses a single expression.
    pub fn parse(source: &str) -> Result<Expr, ParseError> {
        let mut p = Parser::new(source)?;
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized; re-parsing yields the identical tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Pi => f.write_str("pi"),
            Expr::Var(Var::U) => f.write_str("u"),
            Expr::Var(Var::V) => f.write_str("v"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Call(func, e) => {
                let name = match func {
                    Func::Sin => "sin",
                    Func::Cos => "cos",
                    Func::Exp => "exp",
                };
                write!(f, "{name}({e})")
            }
            Expr::Binary(op, a, b) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                write!(f, "({a} {sym} {b})")
            }
        }
    }
}

/// Parses `"EXPR , EXPR"` into the `(ū, v̄)` pair.
pub fn parse_pair(source: &str) -> Result<(Expr, Expr), ParseError> {
    let mut p = Parser::new(source)?;
    let first = p.expr()?;
    p.expect(&Tok::Comma, "','")?;
    let second = p.expr()?;
    p.expect_end()?;
    Ok((first, second))
}

/// Parses a constant expression such as `3*pi/8` (also `3pi/8`).
pub fn parse_constant(source: &str) -> Result<f64> {
    let normalized = insert_implicit_pi_product(source);
    let e = Expr::parse(&normalized)?;
    if !e.is_constant() {
        return Err(Error::InvalidArgument(format!(
            "`{source}` is not a constant"
        )));
    }
    e.eval(0.0, 0.0)
}

fn insert_implicit_pi_product(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    let mut prev_digit = false;
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c == 'p' && prev_digit && chars.peek() == Some(&'i') {
            out.push('*');
        }
        prev_digit = c.is_ascii_digit() || c == '.';
        out.push(c);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number {x}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(source: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            c if c.is_ascii_digit() || c == '.' => {
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        while j < chars.len() && chars[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let value = text.parse::<f64>().map_err(|_| ParseError {
                    position: start,
                    expected: "a number".into(),
                    found: format!("`{text}`"),
                })?;
                toks.push((start, Tok::Num(value)));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError {
                    position: start,
                    expected: "an expression".into(),
                    found: format!("character `{other}`"),
                })
            }
        };
        toks.push((start, tok));
        i += 1;
    }
    toks.push((chars.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn new(source: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(source)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let (position, tok) = &self.toks[self.pos];
        ParseError {
            position: *position,
            expected: expected.to_string(),
            found: tok.describe(),
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.error("an operator or end of input")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        const OPERAND: &str = "a number, `u`, `v`, `pi`, a function call or '('";
        match self.peek().clone() {
            Tok::Num(x) => {
                self.bump();
                Ok(Expr::Const(x))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "u" => {
                        self.bump();
                        return Ok(Expr::Var(Var::U));
                    }
                    "v" => {
                        self.bump();
                        return Ok(Expr::Var(Var::V));
                    }
                    "pi" => {
                        self.bump();
                        return Ok(Expr::Pi);
                    }
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "exp" => Func::Exp,
                    _ => return Err(self.error(OPERAND)),
                };
                self.bump();
                self.expect(&Tok::LParen, "'(' after function name")?;
                let arg = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::DualScalar;

    fn v(e: &Expr, u: f64, w: f64) -> f64 {
        e.eval(u, w).unwrap()
    }

    #[test]
    fn precedence_and_associativity() {
        let e = Expr::parse("1 + 2*3").unwrap();
        assert_eq!(v(&e, 0.0, 0.0), 7.0);
        let e = Expr::parse("2^3^2").unwrap();
        assert_eq!(v(&e, 0.0, 0.0), 512.0);
        let e = Expr::parse("-2^2").unwrap();
        assert_eq!(v(&e, 0.0, 0.0), -4.0);
        let e = Expr::parse("8 / 4 / 2").unwrap();
        assert_eq!(v(&e, 0.0, 0.0), 1.0);
        let e = Expr::parse("u - v - 1").unwrap();
        assert_eq!(v(&e, 5.0, 1.0), 3.0);
        let e = Expr::parse("2^-1").unwrap();
        assert_eq!(v(&e, 0.0, 0.0), 0.5);
    }

    #[test]
    fn functions_and_constants() {
        let e = Expr::parse(" sin( pi/2 ) + cos(0)*exp(0) + 1.5e1").unwrap();
        assert!((v(&e, 0.0, 0.0) - 17.0).abs() < 1e-15);
    }

    #[test]
    fn pair_examples() {
        let (a, b) = parse_pair("u - v, u + v").unwrap();
        assert_eq!(v(&a, 2.0, 0.5), 1.5);
        assert_eq!(v(&b, 2.0, 0.5), 2.5);
        assert!(parse_pair("sin(u)*v, 0").is_ok());
        let err = parse_pair("u + * v, 0").unwrap_err();
        assert_eq!(err.position, 4);
        assert_eq!(err.found, "'*'");
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse_pair("u").unwrap_err().position, 1);
        assert_eq!(parse_pair("u, v, w").unwrap_err().position, 4);
        assert_eq!(Expr::parse("tan(u)").unwrap_err().position, 0);
        assert_eq!(Expr::parse("Sin(u)").unwrap_err().position, 0);
        assert_eq!(Expr::parse("(u + v").unwrap_err().expected, "')'");
        assert_eq!(Expr::parse("u # v").unwrap_err().position, 2);
        assert_eq!(Expr::parse("").unwrap_err().position, 0);
    }

    #[test]
    fn printing_reparses_to_identical_tree() {
        for src in [
            "u - v",
            "-(u^2)/3 + sin(u*v)",
            "exp(-u)^0.5",
            "2^3^2",
            "1e-7*pi - -v",
        ] {
            let e = Expr::parse(src).unwrap();
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e, "{src} -> {e}");
        }
    }

    #[test]
    fn guarded_operations_report_domain_errors() {
        let e = Expr::parse("1/(u - v)").unwrap();
        assert!(matches!(e.eval(1.0, 1.0), Err(Error::DualDivisionByZero)));
        let e = Expr::parse("u^0.5").unwrap();
        assert!(matches!(e.eval(-1.0, 0.0), Err(Error::Domain(_))));
        let e = Expr::parse("u^v").unwrap();
        assert!(matches!(e.eval(-1.0, 2.0), Err(Error::Domain(_))));
        // integer powers of negative bases are fine
        let e = Expr::parse("u^3").unwrap();
        assert_eq!(v(&e, -2.0, 0.0), -8.0);
    }

    #[test]
    fn dual_evaluation_differentiates() {
        let e = Expr::parse("u^3 + u*v").unwrap();
        let d = e
            .eval(DualScalar::variable(2.0), DualScalar::constant(5.0))
            .unwrap();
        assert_eq!(d, DualScalar::new(18.0, 17.0));
    }

    #[test]
    fn constants_with_pi() {
        assert!((parse_constant("pi/8").unwrap() - std::f64::consts::FRAC_PI_8).abs() < 1e-16);
        assert!(
            (parse_constant("3pi/8").unwrap() - 3.0 * std::f64::consts::FRAC_PI_8).abs() < 1e-15
        );
        assert!(
            (parse_constant("3*pi/8").unwrap() - 3.0 * std::f64::consts::FRAC_PI_8).abs() < 1e-15
        );
        assert!(parse_constant("u/8").is_err());
    }
}
