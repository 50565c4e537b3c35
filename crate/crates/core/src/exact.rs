//! Exact rational coefficients.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. The functions here add the
//! fallible arithmetic entry point, exact square roots and the `p/q` text form.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::FieldError;
use crate::scalar::Scalar;

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_arith(a: &Rational, b: &Rational, op: RatOp) -> Result<Rational, FieldError> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn rat_cmp(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

/// Exact square root; `Ok(None)` when `a` is not the square of a rational.
pub fn rat_sqrt_exact(a: &Rational) -> Result<Option<Rational>, FieldError> {
    if a.is_negative() {
        return Err(FieldError::NegativeSqrt);
    }
    Ok(a.try_sqrt())
}

/// Canonical text: `p/q`, `-p/q`, or `p` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `[+-]p[/q]` with decimal digits only.
pub fn parse_rational(text: &str) -> Result<Rational, FieldError> {
    let bad = || FieldError::Parse {
        offset: 0,
        message: format!("not a rational literal: {text:?}"),
    };
    let s = text.trim();
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |p: &str| !p.is_empty() && p.bytes().all(|c| c.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    let q = Rational::new(n, d);
    Ok(if neg { -q } else { q })
}
