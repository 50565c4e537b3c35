#![allow(dead_code)]

pub mod laws;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use ordfield::ratfunc::{Polynomial, RationalFunction, RfOrdering};
use ordfield::{Exponent, GeneralizedSeries, Rational, SeriesMode, ValuationValue};
use proptest::prelude::*;

pub type S = GeneralizedSeries<Rational>;
pub type R = RationalFunction<Rational>;

/// Known order shared by generated truncated series. Exponents stay in
/// `[-2, 3]`, so sums and products of three of them are still decided.
pub const KO: i64 = 12;

pub fn q(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

pub fn arb_nonzero_rational() -> impl Strategy<Value = Rational> {
    arb_rational().prop_filter("nonzero", |r| r != &q(0, 1))
}

fn arb_exponent(mode: SeriesMode) -> BoxedStrategy<Exponent> {
    match mode {
        SeriesMode::Laurent => (-2i64..=3).prop_map(Exponent::int).boxed(),
        SeriesMode::LeviCivita => (prop::sample::select(vec![1i64, 2, 3]), -6i64..=9)
            .prop_map(|(d, k)| Exponent::ratio(q(k, d)).in_mode(SeriesMode::LeviCivita).unwrap())
            .prop_filter("in range", |e| {
                let r = e.to_rational();
                r >= q(-2, 1) && r <= q(3, 1)
            })
            .boxed(),
    }
}

/// Series with up to five terms, either exact or known to `O(t^KO)`.
pub fn arb_series(mode: SeriesMode) -> impl Strategy<Value = S> {
    (prop::collection::vec((arb_exponent(mode), arb_rational()), 0..=5), any::<bool>()).prop_map(
        move |(terms, exact)| {
            let ko = if exact { ValuationValue::Infinity } else { ValuationValue::Finite(Exponent::int(KO)) };
            S::from_terms(terms, ko, mode).unwrap()
        },
    )
}

pub fn arb_nonzero_series(mode: SeriesMode) -> impl Strategy<Value = S> {
    arb_series(mode).prop_filter("nonzero", |s| s.leading().is_some())
}

pub fn arb_poly(max_degree: usize) -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec(-6i64..=6, 1..=max_degree + 1)
        .prop_map(|cs| Polynomial::new(cs.into_iter().map(|c| q(c, 1)).collect()))
}

pub fn arb_ratfunc(ordering: RfOrdering) -> impl Strategy<Value = R> {
    (arb_poly(3), arb_poly(2).prop_filter("nonzero denominator", |p| !p.is_zero()))
        .prop_map(move |(n, d)| R::new(n, d, ordering).unwrap())
}

pub fn arb_nonzero_ratfunc(ordering: RfOrdering) -> impl Strategy<Value = R> {
    arb_ratfunc(ordering).prop_filter("nonzero", |r| !r.is_zero())
}

/// Equality of series below the smaller known order.
pub fn same(a: &S, b: &S) -> bool {
    a.cmp_below_order(b).unwrap() == Ordering::Equal
}

pub fn monomial(c: Rational, e: i64) -> S {
    S::monomial(c, Exponent::int(e), SeriesMode::Laurent).unwrap()
}

/// The same terms with no truncation.
pub fn exact_of(s: &S) -> S {
    S::from_terms(s.terms().to_vec(), ValuationValue::Infinity, s.mode()).unwrap()
}
