//! Literal grammar: integers, identifiers, `+ - * / ^`, parentheses.

use num::BigInt;

use super::formal::{FormalPoly, FormalVar};
use super::poly::Rat;
use super::scalar::Scalar;
use super::ExactError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

fn err(input: &str, msg: impl Into<String>) -> ExactError {
    ExactError::Parse {
        input: input.to_string(),
        message: msg.into(),
    }
}

fn lex(input: &str) -> Result<Vec<Tok>, ExactError> {
    let cs: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(err(input, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ExactError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExactError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Bin('/', Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExactError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExactError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err(self.input, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(err(self.input, "exponent must be a nonnegative integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ExactError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(err(self.input, "missing ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(err(self.input, format!("unexpected token {t:?}"))),
            None => Err(err(self.input, "unexpected end of input")),
        }
    }
}

fn parse_expr(input: &str) -> Result<Expr, ExactError> {
    let mut p = Parser {
        input,
        toks: lex(input)?,
        pos: 0,
    };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(err(input, "trailing input"));
    }
    Ok(e)
}

fn unknown_param(input: &str, name: &str) -> ExactError {
    ExactError::UnknownParameter {
        input: input.to_string(),
        name: name.to_string(),
    }
}

fn eval_scalar(input: &str, e: &Expr, params: &[String]) -> Result<Scalar, ExactError> {
    Ok(match e {
        Expr::Num(n) => Scalar::from_rat(Rat::from_integer(n.clone())),
        Expr::Ident(s) => {
            if !params.iter().any(|p| p == s) {
                return Err(unknown_param(input, s));
            }
            Scalar::param(s)
        }
        Expr::Neg(a) => -eval_scalar(input, a, params)?,
        Expr::Pow(a, k) => eval_scalar(input, a, params)?.pow(*k),
        Expr::Bin(op, a, b) => {
            let (x, y) = (
                eval_scalar(input, a, params)?,
                eval_scalar(input, b, params)?,
            );
            match op {
                '+' => x + y,
                '-' => x - y,
                '*' => x * y,
                _ => x.checked_div(&y)?,
            }
        }
    })
}

fn eval_formal(input: &str, e: &Expr, params: &[String]) -> Result<FormalPoly, ExactError> {
    Ok(match e {
        Expr::Num(n) => FormalPoly::constant(Scalar::from_rat(Rat::from_integer(n.clone()))),
        Expr::Ident(s) => match s.as_str() {
            "D" => FormalPoly::var(FormalVar::D),
            "Lm" => FormalPoly::var(FormalVar::Lambda),
            "Mu" => FormalPoly::var(FormalVar::Mu),
            _ if params.iter().any(|p| p == s) => FormalPoly::constant(Scalar::param(s)),
            _ => return Err(unknown_param(input, s)),
        },
        Expr::Neg(a) => eval_formal(input, a, params)?.neg(),
        Expr::Pow(a, k) => eval_formal(input, a, params)?.pow(*k),
        Expr::Bin(op, a, b) => {
            let (x, y) = (
                eval_formal(input, a, params)?,
                eval_formal(input, b, params)?,
            );
            match op {
                '+' => x.add(&y),
                '-' => x.sub(&y),
                '*' => x.mul(&y),
                _ => {
                    let d = y
                        .as_constant()
                        .ok_or_else(|| err(input, "divisor must not involve D, Lm or Mu"))?;
                    x.scale(&d.inv()?)
                }
            }
        }
    })
}

/// Parse a coefficient literal; every identifier must be a declared parameter.
pub fn parse_scalar(input: &str, params: &[String]) -> Result<Scalar, ExactError> {
    eval_scalar(input, &parse_expr(input)?, params)
}

/// Parse a polynomial literal in `D` (∂), `Lm` (λ) and `Mu` (μ).
pub fn parse_formal(input: &str, params: &[String]) -> Result<FormalPoly, ExactError> {
    eval_formal(input, &parse_expr(input)?, params)
}
