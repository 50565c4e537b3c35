//! The coefficient abstraction shared by series, polynomials and the
//! Archimedean algorithms.
//!
//! Everything in this crate is written against [`Scalar`], an ordered field
//! in the `num-traits` sense. The exact instantiation is [`BigRational`],
//! which is what the crate-root aliases use; `f64` and `f32` are provided for
//! quick numerical experiments where exactness does not matter.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// An ordered field usable as a coefficient domain.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic on this type is exact.
    const EXACT: bool;

    /// Image of a rational number. Lossy for floating point types.
    fn from_rational(q: &BigRational) -> Self;

    /// A square root lying in the type, if one exists. For exact types this
    /// is `Some` only on perfect squares.
    fn try_sqrt(&self) -> Option<Self>;

    /// Largest integer not above `self`.
    fn floor(&self) -> Self;

    /// For positive `self`, a positive value `r` with
    /// `self * (1 - 2^-bits) <= r <= self` and a short representation.
    /// Floating point types return `self` unchanged.
    fn round_down(&self, bits: u32) -> Self;

    /// The exact rational value, for exact types.
    fn to_exact(&self) -> Option<BigRational> {
        None
    }

    /// Integers `n_i` and a common denominator `d` with `x_i = n_i / d`,
    /// for exact types.
    fn clear_denominators(xs: &[Self]) -> Option<(Vec<BigInt>, BigInt)> {
        let _ = xs;
        None
    }

    /// Coefficients of the product of two nonempty coefficient lists.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        out
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("i64 is representable in every scalar")
    }

    /// `2^-p`.
    fn dyadic(p: u32) -> Self {
        let mut x = Self::one();
        let half = Self::one() / (Self::one() + Self::one());
        for _ in 0..p {
            x = x * half.clone();
        }
        x
    }
}

fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

// Integer coefficients over a common denominator.
fn common_denominator(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = a.iter().fold(BigInt::one(), |l, x| if x.denom().is_one() { l } else { l.lcm(x.denom()) });
    let ints = a
        .iter()
        .map(|x| if den.is_one() { x.numer().clone() } else { x.numer() * (&den / x.denom()) })
        .collect();
    (ints, den)
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn clear_denominators(xs: &[Self]) -> Option<(Vec<BigInt>, BigInt)> {
        Some(common_denominator(xs))
    }

    // one reduction per output coefficient instead of one per product
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (ia, da) = common_denominator(a);
        let (ib, db) = common_denominator(b);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in ia.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        out.into_iter().map(|n| BigRational::new(n, den.clone())).collect()
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn try_sqrt(&self) -> Option<Self> {
        // canonical form: both parts must be squares on their own
        let n = is_perfect_square(self.numer())?;
        let d = is_perfect_square(self.denom())?;
        Some(BigRational::new(n, d))
    }

    fn floor(&self) -> Self {
        BigRational::floor(self)
    }

    fn to_exact(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn round_down(&self, bits: u32) -> Self {
        if !self.is_positive() {
            return self.clone();
        }
        // choose k so that self * 2^k has at least `bits` integer bits
        let shift = bits as i64 + self.denom().bits() as i64 - self.numer().bits() as i64 + 1;
        let k = shift.max(0) as u32;
        let scale = BigInt::one() << k;
        let scaled = (self * BigRational::from_integer(scale.clone())).floor();
        let r = BigRational::new(scaled.to_integer(), scale);
        if r.is_positive() && &r <= self {
            r
        } else {
            self.clone()
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(q: &BigRational) -> Self {
                let n = q.numer().to_f64().unwrap_or(f64::NAN);
                let d = q.denom().to_f64().unwrap_or(f64::NAN);
                (n / d) as $t
            }

            fn try_sqrt(&self) -> Option<Self> {
                if *self < 0.0 {
                    None
                } else {
                    Some(self.sqrt())
                }
            }

            fn floor(&self) -> Self {
                <$t>::floor(*self)
            }

            fn round_down(&self, _bits: u32) -> Self {
                *self
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

pub(crate) fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}

pub(crate) fn bigint_is_even(n: &BigInt) -> bool {
    n.is_even()
}
