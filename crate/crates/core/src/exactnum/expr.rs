//! Scalar expressions shared by every text format.
//!
//! Grammar: sums, products (explicit `*` or juxtaposition), quotients, integer powers,
//! parentheses, the unit `i`, the formal variable `t`, `sqrt(t)`, named parameters and
//! basis symbols such as `e1` or `f2` that make the value a vector.

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;

use super::{GaussianRational, RatFun};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {col}: {msg}")]
pub struct ParseError {
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Ident(String),
    Sqrt(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push((col, Tok::Int(digits.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((col, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((col, Tok::Op(c)));
            k += 1;
        } else {
            return Err(ParseError { col, msg: format!("unexpected character '{}'", c) });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { col: self.col(), msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let exp = match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                i32::try_from(n).or_else(|_| self.err("exponent too large"))?
            }
            _ => return self.err("expected integer exponent"),
        };
        if paren && !self.eat(')') {
            return self.err("expected ')'");
        }
        Ok(Expr::Pow(Box::new(base), if neg { -exp } else { exp }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "sqrt" {
                    if !self.eat('(') {
                        return self.err("expected '(' after sqrt");
                    }
                    let inner = self.sum()?;
                    if !self.eat(')') {
                        return self.err("expected ')'");
                    }
                    return Ok(Expr::Sqrt(Box::new(inner)));
                }
                Ok(Expr::Ident(name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(tok) => self.err(format!("unexpected token {:?}", tok)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, end_col: s.chars().count() + 1 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// How the symbol `t` is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TMode {
    /// `t` is the field generator; `sqrt(t)` is rejected.
    #[default]
    Plain,
    /// Arithmetic runs in ℚ(i)(s) with `t = s²` and `sqrt(t) = s`.
    Sqrt,
    /// No formal variable is allowed.
    Forbidden,
}

/// Evaluation environment: parameter values, basis symbols and the meaning of `t`.
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub params: BTreeMap<String, RatFun>,
    pub basis: Vec<String>,
    pub t_mode: TMode,
}

impl Env {
    pub fn with_param(mut self, name: &str, v: RatFun) -> Self {
        self.params.insert(name.to_string(), v);
        self
    }
}

/// A scalar part plus coordinates along the environment's basis symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearValue {
    pub scalar: RatFun,
    pub vector: Vec<RatFun>,
}

impl LinearValue {
    fn scalar(v: RatFun, dim: usize) -> Self {
        LinearValue { scalar: v, vector: vec![RatFun::zero(); dim] }
    }

    fn is_scalar(&self) -> bool {
        self.vector.iter().all(|x| x.is_zero())
    }

    fn map(&self, f: impl Fn(&RatFun) -> RatFun) -> Self {
        LinearValue { scalar: f(&self.scalar), vector: self.vector.iter().map(f).collect() }
    }

    fn zip(&self, o: &Self, f: impl Fn(&RatFun, &RatFun) -> RatFun) -> Self {
        LinearValue {
            scalar: f(&self.scalar, &o.scalar),
            vector: self.vector.iter().zip(&o.vector).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Expr {
    pub fn eval_linear(&self, env: &Env) -> Result<LinearValue, String> {
        let dim = env.basis.len();
        Ok(match self {
            Expr::Int(n) => LinearValue::scalar(
                RatFun::constant(GaussianRational::new(
                    num::BigRational::from_integer(n.clone()),
                    num::BigRational::default(),
                )),
                dim,
            ),
            Expr::Ident(name) => {
                if let Some(k) = env.basis.iter().position(|b| b == name) {
                    let mut v = LinearValue::scalar(RatFun::zero(), dim);
                    v.vector[k] = RatFun::one();
                    v
                } else if name == "i" {
                    LinearValue::scalar(RatFun::constant(GaussianRational::i()), dim)
                } else if name == "t" {
                    let t = match env.t_mode {
                        TMode::Plain => RatFun::t(),
                        TMode::Sqrt => RatFun::t().powi(2).expect("power"),
                        TMode::Forbidden => return Err("the variable t is not allowed here".into()),
                    };
                    LinearValue::scalar(t, dim)
                } else if let Some(v) = env.params.get(name) {
                    LinearValue::scalar(v.clone(), dim)
                } else {
                    return Err(format!("unknown symbol '{}'", name));
                }
            }
            Expr::Sqrt(inner) => {
                if **inner != Expr::Ident("t".into()) {
                    return Err("only sqrt(t) is supported".into());
                }
                if env.t_mode != TMode::Sqrt {
                    return Err("sqrt(t) requires uses_sqrt".into());
                }
                LinearValue::scalar(RatFun::t(), dim)
            }
            Expr::Neg(a) => a.eval_linear(env)?.map(|x| -x),
            Expr::Add(a, b) => a.eval_linear(env)?.zip(&b.eval_linear(env)?, |x, y| x + y),
            Expr::Sub(a, b) => a.eval_linear(env)?.zip(&b.eval_linear(env)?, |x, y| x - y),
            Expr::Mul(a, b) => {
                let (x, y) = (a.eval_linear(env)?, b.eval_linear(env)?);
                match (x.is_scalar(), y.is_scalar()) {
                    (true, _) => y.map(|v| &x.scalar * v),
                    (false, true) => x.map(|v| v * &y.scalar),
                    (false, false) => return Err("product of two basis vectors".into()),
                }
            }
            Expr::Div(a, b) => {
                let (x, y) = (a.eval_linear(env)?, b.eval_linear(env)?);
                if !y.is_scalar() {
                    return Err("division by a basis vector".into());
                }
                let inv = y.scalar.inv().map_err(|e| e.to_string())?;
                x.map(|v| v * &inv)
            }
            Expr::Pow(a, k) => {
                let x = a.eval_linear(env)?;
                if !x.is_scalar() {
                    return Err("power of a basis vector".into());
                }
                LinearValue::scalar(x.scalar.powi(*k).map_err(|e| e.to_string())?, dim)
            }
        })
    }

    /// Evaluates an expression that must not contain basis symbols.
    pub fn eval_scalar(&self, env: &Env) -> Result<RatFun, String> {
        let v = self.eval_linear(env)?;
        if !v.is_scalar() {
            return Err("expected a scalar".into());
        }
        Ok(v.scalar)
    }

    pub fn idents(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Ident(n) => {
                if !out.contains(n) {
                    out.push(n.clone())
                }
            }
            Expr::Sqrt(a) | Expr::Neg(a) | Expr::Pow(a, _) => a.idents(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.idents(out);
                b.idents(out)
            }
        }
    }
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Ident(_) | Expr::Sqrt(_) => 5,
        }
    }

    fn fmt_min(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.fmt_min(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{}", n),
            Expr::Ident(n) => write!(f, "{}", n),
            Expr::Sqrt(a) => write!(f, "sqrt({})", a),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_min(f, 4)
            }
            Expr::Add(a, b) => {
                a.fmt_min(f, 1)?;
                write!(f, " + ")?;
                b.fmt_min(f, if matches!(**b, Expr::Neg(_)) { 4 } else { 1 })
            }
            Expr::Sub(a, b) => {
                a.fmt_min(f, 1)?;
                write!(f, " - ")?;
                b.fmt_min(f, if matches!(**b, Expr::Neg(_)) { 4 } else { 2 })
            }
            Expr::Mul(a, b) => {
                a.fmt_min(f, 2)?;
                write!(f, "*")?;
                b.fmt_min(f, 4)
            }
            Expr::Div(a, b) => {
                a.fmt_min(f, 2)?;
                write!(f, "/")?;
                b.fmt_min(f, 4)
            }
            Expr::Pow(a, k) => {
                a.fmt_min(f, 5)?;
                if *k < 0 {
                    write!(f, "^({})", k)
                } else {
                    write!(f, "^{}", k)
                }
            }
        }
    }
}

/// Minimal parentheses; the output parses back to an equal value.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_min(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_gaussian, Poly};

    fn scalar(s: &str, env: &Env) -> RatFun {
        parse_expr(s).unwrap().eval_scalar(env).unwrap()
    }

    #[test]
    fn display_reparses() {
        let env = Env::default().with_param("a", RatFun::constant(GaussianRational::complex((2, 3), (1, 1))));
        for text in
            ["-(a+1)", "1/(1-a)", "-1/2", "a - (1 - a)", "(a-1)/a", "2^(-1) a", "-(a^2)", "1 - -a", "(1+i) a/(a+2)"]
        {
            let e = parse_expr(text).unwrap();
            let back = parse_expr(&e.to_string()).unwrap();
            assert_eq!(e.eval_scalar(&env).unwrap(), back.eval_scalar(&env).unwrap(), "{} -> {}", text, e);
        }
        assert_eq!(parse_expr("-(a+1)").unwrap().to_string(), "-(a + 1)");
        assert_eq!(parse_expr("1/(1-g)").unwrap().to_string(), "1/(1 - g)");
        assert_eq!(parse_expr("-1").unwrap().to_string(), "-1");
    }

    #[test]
    fn gaussian_literals() {
        assert_eq!(parse_gaussian("-1/2").unwrap(), GaussianRational::ratio(-1, 2));
        assert_eq!(parse_gaussian("1/2 - i/2").unwrap(), GaussianRational::complex((1, 2), (-1, 2)));
        assert_eq!(parse_gaussian("(1-2*i)").unwrap(), GaussianRational::complex((1, 1), (-2, 1)));
        assert_eq!(parse_gaussian("-i").unwrap(), -GaussianRational::i());
    }

    #[test]
    fn monomials_in_t() {
        let env = Env::default();
        let t = RatFun::t();
        assert_eq!(scalar("t(t-1)", &env), &(&t * &t) - &t);
        assert_eq!(scalar("2t^-1", &env), RatFun::constant(GaussianRational::from_int(2)).checked_div(&t).unwrap());
        assert_eq!(scalar("1/(2t)", &env), scalar("1/2 t^(-1)", &env));
        assert_eq!(scalar("-t^2", &env), -&(&t * &t));
    }

    #[test]
    fn sqrt_mode() {
        let env = Env { t_mode: TMode::Sqrt, ..Env::default() };
        let s = RatFun::t();
        assert_eq!(scalar("-i sqrt(t)", &env), &RatFun::constant(-GaussianRational::i()) * &s);
        assert_eq!(scalar("t", &env), RatFun::from_poly(Poly::monomial(GaussianRational::one(), 2)));
        assert!(parse_expr("sqrt(t)").unwrap().eval_scalar(&Env::default()).is_err());
    }

    #[test]
    fn vectors_and_params() {
        let env = Env { basis: vec!["f1".into(), "f2".into()], ..Env::default() }
            .with_param("a", RatFun::constant(GaussianRational::from_int(3)));
        let v = parse_expr("-(a+1) f2 + 1/2 f1").unwrap().eval_linear(&env).unwrap();
        assert!(v.scalar.is_zero());
        assert_eq!(v.vector[0], RatFun::constant(GaussianRational::ratio(1, 2)));
        assert_eq!(v.vector[1], RatFun::constant(GaussianRational::from_int(-4)));
        assert!(parse_expr("f1 f2").unwrap().eval_linear(&env).is_err());
    }

    #[test]
    fn parse_errors_carry_columns() {
        let e = parse_expr("1 + $").unwrap_err();
        assert_eq!(e.col, 5);
        assert!(parse_expr("(1 + t").is_err());
    }
}
