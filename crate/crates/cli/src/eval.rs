//! Evaluation of parsed expressions in a chosen field.

use num_traits::{Signed, ToPrimitive, Zero};
use ordfield::{Element, Exponent, FieldError, FieldTag, GeneralizedSeries, OrderedField, Rational, ValuationValue};

use crate::parse::{Expr, Func};

/// Field selection and series precision for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalContext {
    pub field: FieldTag,
    /// Relative precision, in exponent units past the leading term, for
    /// inverses and square roots of exact series.
    pub trunc: u32,
}

impl EvalContext {
    fn depth(&self) -> Exponent {
        Exponent::int(self.trunc as i64)
    }
}

pub fn evaluate(expr: &Expr, ctx: &EvalContext) -> Result<Element, FieldError> {
    let ev = |e: &Expr| evaluate(e, ctx);
    match expr {
        Expr::Num(q) => Ok(ordfield::q_embed(q, ctx.field)),
        Expr::Var => Element::indeterminate(ctx.field),
        Expr::Neg(a) => Ok(ev(a)?.neg()),
        Expr::Add(a, b) => ev(a)?.try_add(&ev(b)?),
        Expr::Sub(a, b) => ev(a)?.try_sub(&ev(b)?),
        Expr::Mul(a, b) => ev(a)?.try_mul(&ev(b)?),
        Expr::Div(a, b) => divide(&ev(a)?, &ev(b)?, ctx),
        Expr::Pow(a, r) => power(&ev(a)?, r, ctx),
        Expr::Call(func, a) => call(*func, &ev(a)?, ctx),
    }
}

fn divide(a: &Element, b: &Element, ctx: &EvalContext) -> Result<Element, FieldError> {
    match (a, b) {
        (Element::Series(x), Element::Series(y)) => {
            Ok(Element::Series(x.try_mul(&y.inv_with_depth(&ctx.depth())?)?))
        }
        _ => a.try_div(b),
    }
}

fn power(a: &Element, r: &Rational, ctx: &EvalContext) -> Result<Element, FieldError> {
    match a {
        Element::Series(s) if r.is_integer() && r.is_negative() => {
            let n = (-r).to_integer().to_i64().ok_or_else(|| FieldError::InvalidArgument(format!("exponent {r} too large")))?;
            Ok(Element::Series(s.inv_with_depth(&ctx.depth())?.powi(n)?))
        }
        _ => a.pow(r),
    }
}

fn call(func: Func, a: &Element, ctx: &EvalContext) -> Result<Element, FieldError> {
    match func {
        Func::Sqrt => match a {
            Element::Series(s) => Ok(Element::Series(s.sqrt_with_depth(&ctx.depth())?)),
            _ => a.sqrt(),
        },
        Func::Std => Ok(ordfield::q_embed(&a.standard_part()?, ctx.field)),
        Func::Abs => a.abs(),
        Func::Val => match a.valuation() {
            ValuationValue::Finite(e) => Ok(ordfield::q_embed(&e.to_rational(), ctx.field)),
            ValuationValue::Infinity => Err(FieldError::InvalidArgument("val(0) is infinite".into())),
        },
        Func::BigO => {
            let Element::Series(s) = a else {
                return Err(FieldError::InvalidArgument(format!("O(.) needs a series field, not {}", ctx.field)));
            };
            let ValuationValue::Finite(order) = s.valuation() else {
                return Err(FieldError::InvalidArgument("O(0) has no order".into()));
            };
            Ok(Element::Series(GeneralizedSeries::zero(s.mode()).absorb_order(&ValuationValue::Finite(order))))
        }
    }
}

/// Parses and evaluates a constant over `Q`, whatever the session field.
pub fn rational_arg(text: &str) -> Result<Rational, crate::CliError> {
    let expr = crate::parse::parse_expression(text, FieldTag::Q)?;
    match evaluate(&expr, &EvalContext { field: FieldTag::Q, trunc: 1 })? {
        Element::Q(q) => Ok(q),
        _ => unreachable!("Q expressions evaluate in Q"),
    }
}

/// `true` when the element is the exact zero.
pub fn is_exact_zero(e: &Element) -> bool {
    match e {
        Element::Q(q) => q.is_zero(),
        Element::Series(s) => s.is_zero() && s.is_exact(),
        Element::RatFunc(r) => r.is_zero(),
    }
}
