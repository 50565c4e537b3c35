//! A common interface over the ordered fields of the crate, and a dynamic
//! element type for choosing the field at run time.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classification::Classification;
use crate::error::FieldError;
use crate::exact::{RatOp, Rational};
use crate::exponent::{Exponent, SeriesMode, ValuationValue};
use crate::ratfunc::{Polynomial, RationalFunction, RfOrdering};
use crate::scalar::Scalar;
use crate::series::GeneralizedSeries;

/// A totally ordered field containing an embedded copy of its scalars.
///
/// Values carry their field (exponent mode, ordering) with them, so new
/// constants are made from an existing element with [`OrderedField::embed`].
pub trait OrderedField: Clone + Debug + Display {
    type Scalar: Scalar;

    fn embed(&self, q: &Self::Scalar) -> Self;
    fn try_add(&self, other: &Self) -> Result<Self, FieldError>;
    fn try_sub(&self, other: &Self) -> Result<Self, FieldError>;
    fn try_mul(&self, other: &Self) -> Result<Self, FieldError>;
    fn try_div(&self, other: &Self) -> Result<Self, FieldError>;
    fn neg(&self) -> Self;
    /// Fails only when the order cannot be decided at the available precision.
    fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError>;
    fn classify(&self) -> Classification;
    fn standard_part(&self) -> Result<Self::Scalar, FieldError>;

    /// A fixed positive infinitely large element, `None` in an Archimedean field.
    fn infinitely_large(&self) -> Option<Self>;

    fn abs(&self) -> Result<Self, FieldError> {
        let zero = self.embed(&Self::Scalar::zero());
        Ok(if self.try_cmp(&zero)? == Ordering::Less { self.neg() } else { self.clone() })
    }

    fn cmp_natural(&self, n: u64) -> Result<Ordering, FieldError> {
        let c = <Self::Scalar as FromPrimitive>::from_u64(n).expect("u64 fits every scalar");
        self.try_cmp(&self.embed(&c))
    }
}

macro_rules! archimedean_scalar_field {
    ($t:ty) => {
        impl OrderedField for $t {
            type Scalar = $t;

            fn embed(&self, q: &$t) -> Self {
                q.clone()
            }
            fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
                Ok(self.clone() + other.clone())
            }
            fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
                Ok(self.clone() - other.clone())
            }
            fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
                Ok(self.clone() * other.clone())
            }
            fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
                if other.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(self.clone() / other.clone())
            }
            fn neg(&self) -> Self {
                -self.clone()
            }
            fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError> {
                self.partial_cmp(other)
                    .ok_or_else(|| FieldError::InvalidArgument("unordered value".into()))
            }
            fn classify(&self) -> Classification {
                if self.is_zero() {
                    Classification::ZERO
                } else {
                    Classification::from_magnitude(Ordering::Equal)
                }
            }
            fn standard_part(&self) -> Result<$t, FieldError> {
                Ok(self.clone())
            }
            fn infinitely_large(&self) -> Option<Self> {
                None
            }
        }
    };
}

archimedean_scalar_field!(BigRational);
archimedean_scalar_field!(f64);

impl<C: Scalar> OrderedField for GeneralizedSeries<C> {
    type Scalar = C;

    fn embed(&self, q: &C) -> Self {
        GeneralizedSeries::constant(q.clone(), self.mode())
    }
    fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        GeneralizedSeries::try_add(self, other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        GeneralizedSeries::try_sub(self, other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        GeneralizedSeries::try_mul(self, other)
    }
    fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        GeneralizedSeries::try_div(self, other)
    }
    fn neg(&self) -> Self {
        GeneralizedSeries::neg(self)
    }
    fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError> {
        GeneralizedSeries::try_cmp(self, other)
    }
    fn classify(&self) -> Classification {
        GeneralizedSeries::classify(self)
    }
    fn standard_part(&self) -> Result<C, FieldError> {
        GeneralizedSeries::standard_part(self)
    }
    fn infinitely_large(&self) -> Option<Self> {
        Some(GeneralizedSeries::monomial(C::one(), Exponent::int(-1), self.mode()).expect("integer exponent"))
    }
    fn abs(&self) -> Result<Self, FieldError> {
        Ok(GeneralizedSeries::abs(self))
    }
    fn cmp_natural(&self, n: u64) -> Result<Ordering, FieldError> {
        self.cmp_constant(&C::from_u64(n).expect("u64 fits every scalar"))
    }
}

impl<C: Scalar> OrderedField for RationalFunction<C> {
    type Scalar = C;

    fn embed(&self, q: &C) -> Self {
        RationalFunction::constant(q.clone(), self.ordering())
    }
    fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        RationalFunction::try_add(self, other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        RationalFunction::try_sub(self, other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        RationalFunction::try_mul(self, other)
    }
    fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        RationalFunction::try_div(self, other)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError> {
        RationalFunction::try_cmp(self, other)
    }
    fn classify(&self) -> Classification {
        RationalFunction::classify(self)
    }
    fn standard_part(&self) -> Result<C, FieldError> {
        RationalFunction::standard_part(self)
    }
    fn infinitely_large(&self) -> Option<Self> {
        let x = RationalFunction::x(self.ordering());
        Some(match self.ordering() {
            RfOrdering::AtInfinity => x,
            RfOrdering::AtZero => x.recip().expect("x is nonzero"),
        })
    }
    fn abs(&self) -> Result<Self, FieldError> {
        Ok(RationalFunction::abs(self))
    }
}

/// The field an [`Element`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    /// The rationals, an Archimedean field.
    Q,
    Laurent,
    /// Levi-Civita / truncated Hahn series with rational exponents.
    Lc,
    RatFuncInf,
    RatFuncZero,
}

impl FieldTag {
    pub const ALL: [FieldTag; 5] =
        [FieldTag::Q, FieldTag::Laurent, FieldTag::Lc, FieldTag::RatFuncInf, FieldTag::RatFuncZero];

    pub fn series_mode(self) -> Option<SeriesMode> {
        match self {
            FieldTag::Laurent => Some(SeriesMode::Laurent),
            FieldTag::Lc => Some(SeriesMode::LeviCivita),
            _ => None,
        }
    }

    pub fn rf_ordering(self) -> Option<RfOrdering> {
        match self {
            FieldTag::RatFuncInf => Some(RfOrdering::AtInfinity),
            FieldTag::RatFuncZero => Some(RfOrdering::AtZero),
            _ => None,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Q => "q",
            FieldTag::Laurent => "laurent",
            FieldTag::Lc => "lc",
            FieldTag::RatFuncInf => "ratfunc-inf",
            FieldTag::RatFuncZero => "ratfunc-zero",
        })
    }
}

impl FromStr for FieldTag {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FieldTag::ALL
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| FieldError::InvalidArgument(format!("unknown field {s:?}")))
    }
}

/// An element of one of the concrete fields over `Q`.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Q(Rational),
    Series(GeneralizedSeries<Rational>),
    RatFunc(RationalFunction<Rational>),
}

/// Canonical embedding `Q → field`.
pub fn q_embed(q: &Rational, field: FieldTag) -> Element {
    match (field.series_mode(), field.rf_ordering()) {
        (Some(mode), _) => Element::Series(GeneralizedSeries::constant(q.clone(), mode)),
        (_, Some(o)) => Element::RatFunc(RationalFunction::constant(q.clone(), o)),
        _ => Element::Q(q.clone()),
    }
}

impl Element {
    pub fn field(&self) -> FieldTag {
        match self {
            Element::Q(_) => FieldTag::Q,
            Element::Series(s) => match s.mode() {
                SeriesMode::Laurent => FieldTag::Laurent,
                SeriesMode::LeviCivita => FieldTag::Lc,
            },
            Element::RatFunc(r) => match r.ordering() {
                RfOrdering::AtInfinity => FieldTag::RatFuncInf,
                RfOrdering::AtZero => FieldTag::RatFuncZero,
            },
        }
    }

    /// The indeterminate `t` (or `x`); the rationals have none.
    pub fn indeterminate(field: FieldTag) -> Result<Element, FieldError> {
        match (field.series_mode(), field.rf_ordering()) {
            (Some(mode), _) => Ok(Element::Series(GeneralizedSeries::t(mode))),
            (_, Some(o)) => Ok(Element::RatFunc(RationalFunction::x(o))),
            _ => Err(FieldError::InvalidArgument("the field q has no indeterminate".into())),
        }
    }

    fn mismatch(&self, other: &Element) -> FieldError {
        FieldError::ModeMismatch(self.field().to_string(), other.field().to_string())
    }

    /// Integer power; rational powers only in the Levi-Civita field.
    pub fn pow(&self, r: &Rational) -> Result<Element, FieldError> {
        let as_int = || -> Result<i64, FieldError> {
            if !r.is_integer() {
                return Err(FieldError::RationalExponent(r.to_string()));
            }
            num_traits::ToPrimitive::to_i64(&r.to_integer())
                .ok_or_else(|| FieldError::InvalidArgument(format!("exponent {r} too large")))
        };
        match self {
            Element::Q(q) => {
                let n = as_int()?;
                if q.is_zero() && n < 0 {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(Element::Q(num_traits::Pow::pow(q, n as i32)))
            }
            Element::Series(s) => match s.mode() {
                SeriesMode::Laurent => Ok(Element::Series(s.powi(as_int()?)?)),
                SeriesMode::LeviCivita => Ok(Element::Series(s.pow_rational(r)?)),
            },
            Element::RatFunc(f) => Ok(Element::RatFunc(f.powi(as_int()?)?)),
        }
    }

    pub fn sqrt(&self) -> Result<Element, FieldError> {
        match self {
            Element::Q(q) => crate::exact::rat_sqrt_exact(q)?.map(Element::Q).ok_or(FieldError::NoExactSqrt),
            Element::Series(s) => Ok(Element::Series(s.sqrt()?)),
            Element::RatFunc(f) => Ok(Element::RatFunc(f.sqrt()?)),
        }
    }

    /// Canonical valuation of the field: trivial on `Q`, minimum exponent
    /// for series, order at 0 or negated degree for rational functions.
    pub fn valuation(&self) -> ValuationValue {
        match self {
            Element::Q(q) if q.is_zero() => ValuationValue::Infinity,
            Element::Q(_) => ValuationValue::Finite(Exponent::zero()),
            Element::Series(s) => s.valuation(),
            Element::RatFunc(f) => {
                let v = match f.ordering() {
                    RfOrdering::AtInfinity => f
                        .num()
                        .degree()
                        .map(|n| f.den().degree().expect("nonzero") as i64 - n as i64),
                    RfOrdering::AtZero => f.num().low_term().map(|(n, _)| {
                        n as i64 - f.den().low_term().expect("nonzero").0 as i64
                    }),
                };
                v.map(|v| ValuationValue::Finite(Exponent::int(v))).unwrap_or(ValuationValue::Infinity)
            }
        }
    }

    /// Adds `O(t^order)` to a series; identity elsewhere.
    pub fn absorb_order(&self, order: &Exponent) -> Result<Element, FieldError> {
        match self {
            Element::Series(s) => {
                let e = order.in_mode(s.mode())?;
                Ok(Element::Series(s.absorb_order(&ValuationValue::Finite(e))))
            }
            _ => Err(FieldError::InvalidArgument("O(.) terms only exist in series fields".into())),
        }
    }

    pub fn as_series(&self) -> Option<&GeneralizedSeries<Rational>> {
        match self {
            Element::Series(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Element::Q(q) => Some(q),
            _ => None,
        }
    }

    /// The polynomial behind an element of `Q` or `K(x)` with denominator 1.
    pub fn as_polynomial(&self) -> Option<Polynomial<Rational>> {
        match self {
            Element::Q(q) => Some(Polynomial::constant(q.clone())),
            Element::RatFunc(f) if f.den().degree() == Some(0) => Some(f.num().clone()),
            Element::Series(s) if s.is_exact() && s.terms().iter().all(|(e, _)| e.is_integer() && !e.is_negative()) => {
                let deg = s.terms().last().map(|(e, _)| e.to_rational().to_integer());
                let deg: usize = deg.and_then(|d| num_traits::ToPrimitive::to_usize(&d)).unwrap_or(0);
                let mut cs = vec![Rational::zero(); deg + 1];
                for (e, c) in s.terms() {
                    let k: usize = num_traits::ToPrimitive::to_usize(&e.to_rational().to_integer())?;
                    cs[k] = c.clone();
                }
                Some(Polynomial::new(cs))
            }
            _ => None,
        }
    }

    fn rat_op(&self, other: &Element, op: RatOp) -> Result<Element, FieldError> {
        match (self, other) {
            (Element::Q(a), Element::Q(b)) => Ok(Element::Q(crate::exact::rat_arith(a, b, op)?)),
            (Element::Series(a), Element::Series(b)) => Ok(Element::Series(match op {
                RatOp::Add => a.try_add(b)?,
                RatOp::Sub => a.try_sub(b)?,
                RatOp::Mul => a.try_mul(b)?,
                RatOp::Div => a.try_div(b)?,
            })),
            (Element::RatFunc(a), Element::RatFunc(b)) => Ok(Element::RatFunc(match op {
                RatOp::Add => a.try_add(b)?,
                RatOp::Sub => a.try_sub(b)?,
                RatOp::Mul => a.try_mul(b)?,
                RatOp::Div => a.try_div(b)?,
            })),
            _ => Err(self.mismatch(other)),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Q(q) => write!(f, "{q}"),
            Element::Series(s) => write!(f, "{s}"),
            Element::RatFunc(r) => write!(f, "{r}"),
        }
    }
}

impl OrderedField for Element {
    type Scalar = Rational;

    fn embed(&self, q: &Rational) -> Self {
        match self {
            Element::Q(_) => Element::Q(q.clone()),
            Element::Series(s) => Element::Series(OrderedField::embed(s, q)),
            Element::RatFunc(r) => Element::RatFunc(OrderedField::embed(r, q)),
        }
    }
    fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.rat_op(other, RatOp::Add)
    }
    fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.rat_op(other, RatOp::Sub)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.rat_op(other, RatOp::Mul)
    }
    fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.rat_op(other, RatOp::Div)
    }
    fn neg(&self) -> Self {
        match self {
            Element::Q(q) => Element::Q(-q.clone()),
            Element::Series(s) => Element::Series(s.neg()),
            Element::RatFunc(r) => Element::RatFunc(r.neg()),
        }
    }
    fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError> {
        match (self, other) {
            (Element::Q(a), Element::Q(b)) => Ok(a.cmp(b)),
            (Element::Series(a), Element::Series(b)) => a.try_cmp(b),
            (Element::RatFunc(a), Element::RatFunc(b)) => a.try_cmp(b),
            _ => Err(self.mismatch(other)),
        }
    }
    fn classify(&self) -> Classification {
        match self {
            Element::Q(q) => OrderedField::classify(q),
            Element::Series(s) => s.classify(),
            Element::RatFunc(r) => r.classify(),
        }
    }
    fn standard_part(&self) -> Result<Rational, FieldError> {
        match self {
            Element::Q(q) => Ok(q.clone()),
            Element::Series(s) => s.standard_part(),
            Element::RatFunc(r) => r.standard_part(),
        }
    }
    fn infinitely_large(&self) -> Option<Self> {
        match self {
            Element::Q(_) => None,
            Element::Series(s) => OrderedField::infinitely_large(s).map(Element::Series),
            Element::RatFunc(r) => OrderedField::infinitely_large(r).map(Element::RatFunc),
        }
    }
    fn abs(&self) -> Result<Self, FieldError> {
        Ok(match self {
            Element::Q(q) => Element::Q(Signed::abs(q)),
            Element::Series(s) => Element::Series(s.abs()),
            Element::RatFunc(r) => Element::RatFunc(r.abs()),
        })
    }
    fn cmp_natural(&self, n: u64) -> Result<Ordering, FieldError> {
        match self {
            Element::Series(s) => OrderedField::cmp_natural(s, n),
            _ => self.try_cmp(&self.embed(&Rational::from_integer(n.into()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn embedding_examples() {
        let e = q_embed(&rat(3, 2), FieldTag::Laurent);
        let s = e.as_series().unwrap();
        assert_eq!(s.terms(), &[(Exponent::int(0), rat(3, 2))]);
        for tag in FieldTag::ALL {
            assert_eq!(q_embed(&int(0), tag).classify(), Classification::ZERO);
            let a = q_embed(&rat(1, 3), tag);
            let b = q_embed(&rat(1, 2), tag);
            assert_eq!(a.try_cmp(&b).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn field_tags_round_trip() {
        for tag in FieldTag::ALL {
            assert_eq!(tag.to_string().parse::<FieldTag>().unwrap(), tag);
        }
        assert!("reals".parse::<FieldTag>().is_err());
    }

    #[test]
    fn mixed_fields_do_not_combine() {
        let a = q_embed(&int(1), FieldTag::Laurent);
        let b = q_embed(&int(1), FieldTag::Lc);
        assert!(matches!(a.try_add(&b), Err(FieldError::ModeMismatch(..))));
    }

    #[test]
    fn infinitely_large_elements() {
        for tag in [FieldTag::Laurent, FieldTag::Lc, FieldTag::RatFuncInf, FieldTag::RatFuncZero] {
            let big = q_embed(&int(1), tag).infinitely_large().unwrap();
            assert!(big.classify().infinite);
            assert_eq!(big.cmp_natural(1_000_000).unwrap(), Ordering::Greater);
        }
        assert!(q_embed(&int(1), FieldTag::Q).infinitely_large().is_none());
    }

    #[test]
    fn valuations_per_field() {
        let x = Element::indeterminate(FieldTag::RatFuncInf).unwrap();
        assert_eq!(x.valuation(), ValuationValue::Finite(Exponent::int(-1)));
        let t = Element::indeterminate(FieldTag::RatFuncZero).unwrap();
        assert_eq!(t.valuation(), ValuationValue::Finite(Exponent::int(1)));
        assert_eq!(Element::Q(int(0)).valuation(), ValuationValue::Infinity);
    }
}
