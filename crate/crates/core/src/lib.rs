//! Exact arithmetic in totally ordered non-Archimedean fields.
//!
//! The fields are truncated Laurent series, truncated Levi-Civita series
//! and rational functions under either of their two orderings, with the
//! rationals as the Archimedean reference point. Everything is generic over
//! a [`Scalar`] coefficient type; the aliases below fix it to exact
//! rationals, and the `F64` variants to floating point.

pub mod archimedean;
pub mod classification;
pub mod completeness;
pub mod error;
pub mod exact;
pub mod exponent;
pub mod field;
pub mod metric;
pub mod ratfunc;
pub mod scalar;
pub mod series;

pub use classification::Classification;
pub use error::FieldError;
pub use exact::Rational;
pub use exponent::{Exponent, SeriesMode, ValuationValue};
pub use field::{q_embed, Element, FieldTag, OrderedField};
pub use ratfunc::{Polynomial, RationalFunction, RfOrdering};
pub use scalar::Scalar;
pub use series::GeneralizedSeries;

pub type Series = GeneralizedSeries<Rational>;
pub type Poly = Polynomial<Rational>;
pub type RatFunc = RationalFunction<Rational>;

pub type SeriesF64 = GeneralizedSeries<f64>;
pub type PolyF64 = Polynomial<f64>;
pub type RatFuncF64 = RationalFunction<f64>;
