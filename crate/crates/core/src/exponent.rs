//! Exponents, extended exponents and exponent modes.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;
use crate::scalar::{bigint_is_even, is_integral};

/// Which exponent group a series draws its support from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesMode {
    /// Integer exponents: formal Laurent series.
    Laurent,
    /// Rational exponents: Levi-Civita series and truncated Hahn series.
    LeviCivita,
}

impl fmt::Display for SeriesMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesMode::Laurent => "laurent",
            SeriesMode::LeviCivita => "lc",
        })
    }
}

/// A support exponent. Laurent series use `Integer`, Levi-Civita series
/// use `Ratio`. Equality, ordering and hashing are by numeric value, so
/// `Integer(2) == Ratio(2/1)`.
#[derive(Debug, Clone)]
pub enum Exponent {
    Integer(BigInt),
    Ratio(BigRational),
}

impl Exponent {
    pub fn int(n: i64) -> Self {
        Exponent::Integer(BigInt::from(n))
    }

    pub fn ratio(q: BigRational) -> Self {
        Exponent::Ratio(q)
    }

    pub fn zero() -> Self {
        Exponent::Integer(BigInt::zero())
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Exponent::Integer(n) => BigRational::from_integer(n.clone()),
            Exponent::Ratio(q) => q.clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Exponent::Integer(_) => true,
            Exponent::Ratio(q) => is_integral(q),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Exponent::Integer(n) => n.is_zero(),
            Exponent::Ratio(q) => q.is_zero(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Exponent::Integer(n) => n.is_positive(),
            Exponent::Ratio(q) => q.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Exponent::Integer(n) => n.is_negative(),
            Exponent::Ratio(q) => q.is_negative(),
        }
    }

    /// Re-tags the exponent for `mode`. Fails for a non-integer in Laurent mode.
    pub fn in_mode(&self, mode: SeriesMode) -> Result<Exponent, FieldError> {
        match (mode, self) {
            (SeriesMode::Laurent, Exponent::Integer(_)) => Ok(self.clone()),
            (SeriesMode::Laurent, Exponent::Ratio(q)) => {
                if is_integral(q) {
                    Ok(Exponent::Integer(q.to_integer()))
                } else {
                    Err(FieldError::RationalExponent(q.to_string()))
                }
            }
            (SeriesMode::LeviCivita, e) => Ok(Exponent::Ratio(e.to_rational())),
        }
    }

    /// `self / 2` in the given mode, if it exists there.
    pub fn half(&self, mode: SeriesMode) -> Result<Exponent, FieldError> {
        match (mode, self) {
            (SeriesMode::Laurent, e) => {
                let n = e.in_mode(SeriesMode::Laurent)?;
                match n {
                    Exponent::Integer(n) if bigint_is_even(&n) => Ok(Exponent::Integer(n / 2)),
                    _ => Err(FieldError::NonHalvableValuation(self.to_string())),
                }
            }
            (SeriesMode::LeviCivita, e) => {
                Ok(Exponent::Ratio(e.to_rational() / BigRational::from_integer(2.into())))
            }
        }
    }

    /// Smallest exponent of `mode` that is `>= self`.
    pub fn ceil_in_mode(&self, mode: SeriesMode) -> Exponent {
        match mode {
            SeriesMode::Laurent => Exponent::Integer(self.to_rational().ceil().to_integer()),
            SeriesMode::LeviCivita => Exponent::Ratio(self.to_rational()),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Exponent {
        match self {
            Exponent::Integer(n) => Exponent::Integer(n * k),
            Exponent::Ratio(q) => Exponent::Ratio(q * BigRational::from_integer(k.clone())),
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Exponent {
        let q = self.to_rational() * r;
        match self {
            Exponent::Integer(_) if is_integral(&q) => Exponent::Integer(q.to_integer()),
            _ => Exponent::Ratio(q),
        }
    }
}

// Numerator and denominator widened to i128 when both fit in an i64.
fn small(q: &BigRational) -> Option<(i128, i128)> {
    Some((q.numer().to_i64()? as i128, q.denom().to_i64()? as i128))
}

impl PartialEq for Exponent {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Exponent {}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Integer(a), Exponent::Integer(b)) => a.cmp(b),
            (Exponent::Ratio(a), Exponent::Ratio(b)) => match (small(a), small(b)) {
                (Some((an, ad)), Some((bn, bd))) => (an * bd).cmp(&(bn * ad)),
                _ => a.cmp(b),
            },
            (Exponent::Integer(a), Exponent::Ratio(b)) => (a * b.denom()).cmp(b.numer()),
            (Exponent::Ratio(a), Exponent::Integer(b)) => a.numer().cmp(&(b * a.denom())),
        }
    }
}

impl Hash for Exponent {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let q = self.to_rational();
        q.numer().hash(state);
        q.denom().hash(state);
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        match (self, rhs) {
            (Exponent::Integer(a), Exponent::Integer(b)) => Exponent::Integer(a + b),
            (Exponent::Ratio(a), Exponent::Ratio(b)) => match (small(a), small(b)) {
                (Some((an, ad)), Some((bn, bd))) => {
                    let (n, d) = (an * bd + bn * ad, ad * bd);
                    let g = n.gcd(&d);
                    Exponent::Ratio(BigRational::new_raw(BigInt::from(n / g), BigInt::from(d / g)))
                }
                _ => Exponent::Ratio(a + b),
            },
            (Exponent::Integer(n), Exponent::Ratio(q)) | (Exponent::Ratio(q), Exponent::Integer(n)) => {
                Exponent::Ratio(BigRational::new_raw(q.numer() + n * q.denom(), q.denom().clone()))
            }
        }
    }
}

impl Sub for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        self + &(-rhs)
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        match self {
            Exponent::Integer(a) => Exponent::Integer(-a),
            Exponent::Ratio(q) => Exponent::Ratio(-q),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Integer(n) => write!(f, "{n}"),
            Exponent::Ratio(q) => write!(f, "{q}"),
        }
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

/// An exponent or `+∞`. Used both for valuations (`v(0) = ∞`) and for the
/// known order of a series, where `Infinity` marks an exact element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValuationValue {
    Finite(Exponent),
    Infinity,
}

impl ValuationValue {
    pub fn finite(&self) -> Option<&Exponent> {
        match self {
            ValuationValue::Finite(e) => Some(e),
            ValuationValue::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ValuationValue::Infinity)
    }

    /// `e^{-v}` for display; `e^{-∞} = 0`.
    pub fn display_radius(&self) -> f64 {
        match self {
            ValuationValue::Infinity => 0.0,
            ValuationValue::Finite(e) => {
                let q = e.to_rational();
                let x = num_traits::ToPrimitive::to_f64(q.numer()).unwrap_or(f64::INFINITY)
                    / num_traits::ToPrimitive::to_f64(q.denom()).unwrap_or(f64::INFINITY);
                (-x).exp()
            }
        }
    }
}

impl PartialOrd for ValuationValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ValuationValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ValuationValue::Infinity, ValuationValue::Infinity) => Ordering::Equal,
            (ValuationValue::Infinity, _) => Ordering::Greater,
            (_, ValuationValue::Infinity) => Ordering::Less,
            (ValuationValue::Finite(a), ValuationValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for &ValuationValue {
    type Output = ValuationValue;
    fn add(self, rhs: &ValuationValue) -> ValuationValue {
        match (self, rhs) {
            (ValuationValue::Finite(a), ValuationValue::Finite(b)) => ValuationValue::Finite(a + b),
            _ => ValuationValue::Infinity,
        }
    }
}

impl From<Exponent> for ValuationValue {
    fn from(e: Exponent) -> Self {
        ValuationValue::Finite(e)
    }
}

impl fmt::Display for ValuationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationValue::Finite(e) => write!(f, "{e}"),
            ValuationValue::Infinity => f.write_str("inf"),
        }
    }
}

pub(crate) fn one_exponent() -> Exponent {
    Exponent::Integer(BigInt::one())
}
