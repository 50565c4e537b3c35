//! Recursive-descent parser for field expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := ('-' | '+') unary | factor
//! factor   := base ('^' exponent)?
//! exponent := ('+' | '-')? UINT | '(' expr ')'
//! base     := rational | 't' | 'x' | '(' expr ')' | func '(' expr ')'
//! rational := UINT ('/' UINT)?
//! func     := 'sqrt' | 'std' | 'abs' | 'val' | 'O'
//! ```
//!
//! A literal `p/q` is only read as one rational when no `^` follows, so
//! `2/3^2` is `2/(3^2)`. Exponents are constants, evaluated while parsing;
//! non-integer exponents need the Levi-Civita field.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use ordfield::{FieldTag, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sqrt,
    Std,
    Abs,
    Val,
    /// `O(e)`: the error term `O(t^v(e))`.
    BigO,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sqrt" => Func::Sqrt,
            "std" => Func::Std,
            "abs" => Func::Abs,
            "val" => Func::Val,
            "O" => Func::BigO,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Std => "std",
            Func::Abs => "abs",
            Func::Val => "val",
            Func::BigO => "O",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// A nonnegative rational literal.
    Num(Rational),
    /// The indeterminate, written `t` or `x`.
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Rational),
    Call(Func, Box<Expr>),
}

/// Fully parenthesized, so that printing and re-parsing gives back the same
/// tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) if q.is_integer() => write!(f, "{q}"),
            Expr::Num(q) => write!(f, "({q})"),
            Expr::Var => f.write_str("t"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Pow(a, r) if r.is_integer() => write!(f, "{a}^{r}"),
            Expr::Pow(a, r) if r.is_negative() => write!(f, "{a}^(-{})", -r),
            Expr::Pow(a, r) => write!(f, "{a}^({r})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Caret diagram pointing at the error position.
pub fn caret(text: &str, err: &ParseError) -> String {
    format!("  {text}\n  {}^", " ".repeat(err.offset.min(text.len())))
}

pub fn parse_expression(text: &str, field: FieldTag) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected {}", p.describe())));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: FieldTag,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { offset: self.pos, message: message.into() }
    }

    fn describe(&self) -> String {
        match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(&b) if b.is_ascii_graphic() => format!("'{}'", b as char),
            Some(&b) => format!("byte 0x{b:02x}"),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}', found {}", c as char, self.describe())))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let r = self.exponent()?;
        if !r.is_integer() && self.field != FieldTag::Lc {
            return Err(ParseError {
                offset: at,
                message: format!("rational exponent {r} needs --field=lc (field is {})", self.field),
            });
        }
        Ok(Expr::Pow(Box::new(base), r))
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                constant_value(&e).map_err(|message| ParseError { offset: open, message })
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.uint()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.uint()
            }
            _ => self.uint(),
        }
    }

    fn uint(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected a number, found {}", self.describe())));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let n: BigInt = digits.parse().expect("ascii digits");
        Ok(Rational::from_integer(n))
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'0'..=b'9') => self.rational(),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "t" || name == "x" {
                    return Ok(Expr::Var);
                }
                let Some(func) = Func::from_name(name) else {
                    return Err(ParseError { offset: start, message: format!("unknown name '{name}'") });
                };
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            _ => Err(self.error(format!("expected a number, 't', 'x', a function or '(', found {}", self.describe()))),
        }
    }

    fn rational(&mut self) -> Result<Expr, ParseError> {
        let p = self.uint()?;
        let save = self.pos;
        if self.eat(b'/') && self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let q_at = self.pos;
            let q = self.uint()?;
            if self.peek() != Some(b'^') {
                if q.is_zero() {
                    return Err(ParseError { offset: q_at, message: "zero denominator".into() });
                }
                return Ok(Expr::Num(p / q));
            }
        }
        self.pos = save;
        Ok(Expr::Num(p))
    }
}

/// Value of an expression without the indeterminate, over `Q`.
fn constant_value(e: &Expr) -> Result<Rational, String> {
    let bin = |a: &Expr, b: &Expr| Ok::<_, String>((constant_value(a)?, constant_value(b)?));
    match e {
        Expr::Num(q) => Ok(q.clone()),
        Expr::Var => Err("an exponent must be a constant".into()),
        Expr::Neg(a) => Ok(-constant_value(a)?),
        Expr::Add(a, b) => bin(a, b).map(|(x, y)| x + y),
        Expr::Sub(a, b) => bin(a, b).map(|(x, y)| x - y),
        Expr::Mul(a, b) => bin(a, b).map(|(x, y)| x * y),
        Expr::Div(a, b) => {
            let (x, y) = bin(a, b)?;
            if y.is_zero() {
                Err("division by zero in exponent".into())
            } else {
                Ok(x / y)
            }
        }
        Expr::Pow(a, r) if r.is_integer() => {
            let x = constant_value(a)?;
            let n: i32 = num_traits::ToPrimitive::to_i32(&r.to_integer()).ok_or("exponent too large")?;
            if x.is_zero() && n < 0 {
                return Err("division by zero in exponent".into());
            }
            Ok(num_traits::Pow::pow(&x, n))
        }
        Expr::Pow(..) | Expr::Call(..) => Err("an exponent must be a rational constant".into()),
    }
}
