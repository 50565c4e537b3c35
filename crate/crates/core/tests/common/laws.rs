//! Property checks shared by the proptest suites and the acceptance run.
//! Each takes generated inputs and reports the first violated law.

use std::cmp::Ordering;

use ordfield::completeness::{open_fip_point, OpenInterval};
use ordfield::metric::{metric_distance, nested_ball_point, ClosedBall};
use ordfield::ratfunc::RfOrdering;
use ordfield::{Exponent, FieldError, OrderedField, Rational, SeriesMode, ValuationValue};
use proptest::prelude::*;

use super::*;

/// Ring and order axioms on one triple, plus the triangle inequality.
/// `cmp` decides the order (for truncated series: below the known order).
pub fn check_axioms<F, C>(a: &F, b: &F, c: &F, cmp: C) -> Result<(), TestCaseError>
where
    F: OrderedField,
    C: Fn(&F, &F) -> Ordering,
{
    let eq = |x: &F, y: &F| cmp(x, y) == Ordering::Equal;
    let zero = a.embed(&num_traits::Zero::zero());
    let one = a.embed(&num_traits::One::one());
    let add = |x: &F, y: &F| x.try_add(y).unwrap();
    let mul = |x: &F, y: &F| x.try_mul(y).unwrap();

    prop_assert!(eq(&add(a, b), &add(b, a)));
    prop_assert!(eq(&add(&add(a, b), c), &add(a, &add(b, c))));
    prop_assert!(eq(&mul(a, b), &mul(b, a)));
    prop_assert!(eq(&mul(&mul(a, b), c), &mul(a, &mul(b, c))));
    prop_assert!(eq(&mul(a, &add(b, c)), &add(&mul(a, b), &mul(a, c))));
    prop_assert!(eq(&add(a, &zero), a));
    prop_assert!(eq(&mul(a, &one), a));
    prop_assert!(eq(&add(a, &a.neg()), &zero));
    if cmp(a, &zero) != Ordering::Equal {
        prop_assert!(eq(&mul(a, &one.try_div(a).unwrap()), &one));
    }

    prop_assert_eq!(cmp(a, b), cmp(b, a).reverse());
    if cmp(a, b) != Ordering::Greater && cmp(b, c) != Ordering::Greater {
        prop_assert!(cmp(a, c) != Ordering::Greater);
    }
    if cmp(a, b) == Ordering::Less {
        prop_assert_eq!(cmp(&add(a, c), &add(b, c)), Ordering::Less);
        if cmp(c, &zero) == Ordering::Greater {
            prop_assert_eq!(cmp(&mul(a, c), &mul(b, c)), Ordering::Less);
        }
    }
    if cmp(a, &zero) == Ordering::Greater && cmp(b, &zero) == Ordering::Greater {
        prop_assert_eq!(cmp(&mul(a, b), &zero), Ordering::Greater);
    }
    prop_assert!(cmp(&mul(a, a), &zero) != Ordering::Less);

    let abs = |x: &F| x.abs().unwrap();
    prop_assert!(cmp(&abs(&add(a, b)), &add(&abs(a), &abs(b))) != Ordering::Greater);
    prop_assert!(cmp(&abs(&mul(a, b)), &mul(&abs(a), &abs(b))) == Ordering::Equal);
    Ok(())
}

pub fn series_cmp(x: &S, y: &S) -> Ordering {
    x.cmp_below_order(y).unwrap()
}

pub fn rf_cmp(x: &R, y: &R) -> Ordering {
    x.try_cmp(y).unwrap()
}

/// Multiplicativity, the min rule and convexity of the canonical valuation.
pub fn check_valuation(x: &S, y: &S) -> Result<(), TestCaseError> {
    let vx = x.valuation();
    let vy = y.valuation();
    if x.leading().is_some() && y.leading().is_some() {
        prop_assert_eq!(x.try_mul(y).unwrap().valuation(), &vx + &vy);
    }
    let s = x.try_add(y).unwrap();
    if s.leading().is_some() {
        prop_assert!(s.valuation() >= vx.clone().min(vy.clone()));
        if vx != vy {
            prop_assert_eq!(s.valuation(), vx.clone().min(vy.clone()));
        }
    }
    // 0 <= |y| <= |x| forces v(y) >= v(x)
    if y.abs().cmp_below_order(&x.abs()).unwrap() != Ordering::Greater && y.leading().is_some() {
        prop_assert!(vy >= vx);
    }
    prop_assert_eq!(x.neg().valuation(), vx);
    Ok(())
}

pub fn exact_series(mode: SeriesMode) -> impl Strategy<Value = S> {
    arb_series(mode).prop_map(|s| exact_of(&s))
}

pub fn exact_nonzero() -> impl Strategy<Value = S> {
    arb_nonzero_series(SeriesMode::Laurent).prop_map(|s| exact_of(&s))
}

/// Levi-Civita series with no negative exponents.
pub fn finite_series() -> impl Strategy<Value = S> {
    arb_series(SeriesMode::LeviCivita).prop_map(|s| {
        let keep: Vec<_> = s.terms().iter().filter(|(e, _)| !e.is_negative()).cloned().collect();
        S::from_terms(keep, s.known_order().clone(), SeriesMode::LeviCivita).unwrap()
    })
}

/// `x` infinitesimal exactly when `1/x` is infinite.
pub fn check_duality(x: &S) -> Result<(), TestCaseError> {
    let c = x.classify();
    prop_assert!(c.is_consistent());
    let inv = S::one(x.mode()).try_div(x).unwrap().classify();
    prop_assert_eq!(c.infinitesimal, inv.infinite);
    prop_assert_eq!(c.infinite, inv.infinitesimal);
    Ok(())
}

/// Infinitesimals form a convex ideal of the finite elements, which are
/// closed under ring operations.
pub fn check_ideal(x: &S, y: &S, f: &S) -> Result<(), TestCaseError> {
    let f = S::from_terms(
        f.terms().iter().filter(|(e, _)| e.is_integer()).cloned(),
        ValuationValue::Infinity,
        SeriesMode::Laurent,
    )
    .unwrap();
    for r in [x.try_add(&f).unwrap(), x.try_mul(&f).unwrap(), f.try_mul(&f).unwrap()] {
        if !x.classify().infinite {
            prop_assert!(!r.classify().infinite);
        }
    }
    if x.classify().infinitesimal {
        let xf = x.try_mul(&f).unwrap().classify();
        prop_assert!(xf.infinitesimal || xf.is_zero);
        if y.abs().try_cmp(&x.abs()).unwrap() != Ordering::Greater {
            prop_assert!(y.classify().infinitesimal);
        }
        if y.classify().infinitesimal {
            let s = x.try_add(y).unwrap().classify();
            prop_assert!(s.infinitesimal || s.is_zero);
        }
    }
    Ok(())
}

pub fn check_finite_ring(a: &S, b: &S) -> Result<(), TestCaseError> {
    for r in [a.try_add(b).unwrap(), a.try_sub(b).unwrap(), a.try_mul(b).unwrap()] {
        prop_assert!(!r.classify().infinite);
    }
    Ok(())
}

/// Recombination, additivity and uniqueness of `a = st(a) + da`.
pub fn check_decomposition(a: &S, b: &S, c: &Rational) -> Result<(), TestCaseError> {
    let (sa, da) = a.decompose().unwrap();
    let (sb, db) = b.decompose().unwrap();
    prop_assert!(same(&S::constant(sa.clone(), a.mode()).try_add(&da).unwrap(), a));
    prop_assert!(!da.classify().finite || da.classify().is_zero || da.classify().infinitesimal);
    let (ss, ds) = a.try_add(b).unwrap().decompose().unwrap();
    prop_assert_eq!(ss, &sa + &sb);
    prop_assert!(same(&ds, &da.try_add(&db).unwrap()));
    let (sc, dc) = S::constant(c.clone(), a.mode()).try_add(&da).unwrap().decompose().unwrap();
    prop_assert_eq!(&sc, c);
    prop_assert!(same(&dc, &da));
    Ok(())
}

/// `f(x) ↦ f(x²)` preserves sums, products and the order at infinity.
pub fn check_sigma(a: &R, b: &R) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.ordering(), RfOrdering::AtInfinity);
    let s = |r: &R| r.sigma_square();
    prop_assert_eq!(s(&a.try_add(b).unwrap()), s(a).try_add(&s(b)).unwrap());
    prop_assert_eq!(s(&a.try_mul(b).unwrap()), s(a).try_mul(&s(b)).unwrap());
    prop_assert_eq!(a.try_cmp(b).unwrap(), s(a).try_cmp(&s(b)).unwrap());
    Ok(())
}

fn level(x: &S, y: &S) -> ValuationValue {
    metric_distance(x, y).unwrap().level
}

/// `v(x - z) >= min(v(x - y), v(y - z))`, the ultrametric inequality read
/// on valuation levels.
pub fn check_ultrametric(x: &S, y: &S, z: &S) -> Result<(), TestCaseError> {
    prop_assert!(level(x, z) >= level(x, y).min(level(y, z)));
    prop_assert_eq!(level(x, y), level(y, x));
    prop_assert_eq!(level(x, x), ValuationValue::Infinity);
    let d = |a: &S, b: &S| metric_distance(a, b).unwrap().display;
    prop_assert!(d(x, z) <= d(x, y).max(d(y, z)));
    Ok(())
}

/// A chain of balls, each centred inside the previous one at a higher level.
pub fn arb_chain() -> impl Strategy<Value = Vec<ClosedBall<Rational>>> {
    (arb_series(SeriesMode::Laurent), -2i64..=1, prop::collection::vec((arb_rational(), 0i64..=2), 1..6)).prop_map(
        |(center, start, steps)| {
            let center = exact_of(&center);
            let mut chain = vec![ClosedBall::new(center.clone(), Exponent::int(start))];
            let mut c = center;
            let mut lv = start;
            for (coef, gap) in steps {
                // move the centre by a term at the current level, then shrink
                c = c.try_add(&monomial(coef, lv)).unwrap();
                lv += gap;
                chain.push(ClosedBall::new(c.clone(), Exponent::int(lv)));
            }
            chain
        },
    )
}

pub fn check_nested(chain: &[ClosedBall<Rational>]) -> Result<(), TestCaseError> {
    let point = nested_ball_point(chain).unwrap();
    for ball in chain {
        prop_assert!(ball.contains(&point).unwrap());
    }
    Ok(())
}

pub fn positive_monomial() -> impl Strategy<Value = S> {
    (1i64..=9, 1i64..=4, -1i64..=3).prop_map(|(n, d, e)| monomial(q(n, d), e))
}

fn nonnegative_monomial() -> impl Strategy<Value = S> {
    prop_oneof![Just(S::zero(SeriesMode::Laurent)), positive_monomial()]
}

/// `(family, rho)` with every interval `(z - rho/2 - α, z + rho/2 + β)`,
/// so `hi_l - lo_k >= rho` for all pairs.
pub fn valid_open_family() -> impl Strategy<Value = (Vec<OpenInterval<S>>, S)> {
    (
        exact_series(SeriesMode::Laurent),
        positive_monomial(),
        prop::collection::vec((nonnegative_monomial(), nonnegative_monomial()), 1..6),
    )
        .prop_map(|(z, rho, widths)| {
            let half = rho.scale(&q(1, 2));
            let family = widths
                .into_iter()
                .map(|(a, b)| {
                    let lo = z.try_sub(&half).unwrap().try_sub(&a).unwrap();
                    let hi = z.try_add(&half).unwrap().try_add(&b).unwrap();
                    OpenInterval::new(lo, hi).unwrap()
                })
                .collect();
            (family, rho)
        })
}

fn min_gap(family: &[OpenInterval<S>]) -> S {
    let mut best: Option<S> = None;
    for a in family {
        for b in family {
            let g = b.hi.try_sub(&a.lo).unwrap();
            if best.as_ref().is_none_or(|m| g.try_cmp(m).unwrap() == Ordering::Less) {
                best = Some(g);
            }
        }
    }
    best.unwrap()
}

/// `ζ` lies in every interval with `a + ρ/2 <= ζ <= b - ρ/2`.
pub fn check_open_fip(family: &[OpenInterval<S>], rho: &S) -> Result<(), TestCaseError> {
    let zeta = open_fip_point(family, rho).unwrap();
    let half = rho.scale(&q(1, 2));
    for iv in family {
        prop_assert!(iv.contains(&zeta).unwrap());
        prop_assert!(iv.lo.try_add(&half).unwrap().try_cmp(&zeta).unwrap() != Ordering::Greater);
        prop_assert!(zeta.try_cmp(&iv.hi.try_sub(&half).unwrap()).unwrap() != Ordering::Greater);
    }
    Ok(())
}

/// A `ρ` past the smallest gap, zero or negative is refused.
pub fn check_open_fip_rejects(family: &[OpenInterval<S>], extra: &S) -> Result<(), TestCaseError> {
    let too_big = min_gap(family).try_add(extra).unwrap();
    let rejected = matches!(open_fip_point(family, &too_big), Err(FieldError::InvalidRho { .. }));
    prop_assert!(rejected);
    prop_assert!(open_fip_point(family, &S::zero(SeriesMode::Laurent)).is_err());
    prop_assert!(open_fip_point(family, &extra.neg()).is_err());
    Ok(())
}
