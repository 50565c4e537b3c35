//! Truncated generalized power series.
//!
//! A [`GeneralizedSeries`] stores finitely many terms `c·t^e` with strictly
//! increasing exponents, together with a *known order*: every term with
//! exponent below the known order is exact, nothing is claimed at or above
//! it. An infinite known order marks an exact element (a finite sum of
//! monomials). The ordering is the one induced by `t` being a positive
//! infinitesimal: an element is positive when its lowest-exponent
//! coefficient is positive.
//!
//! Precision propagates as follows, which keeps every ring axiom exact
//! below the tracked bound:
//!
//! * `a + b` is known below `min(ko(a), ko(b))`;
//! * `a · b` is known below `min(ko(a) + v̂(b), ko(b) + v̂(a))`, where `v̂`
//!   is the valuation, or the known order for an element with no terms.

use std::cmp::{min, Ordering};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::classification::Classification;
use crate::error::FieldError;
use crate::exponent::{one_exponent, Exponent, SeriesMode, ValuationValue};
use crate::scalar::Scalar;

/// Relative depth used when an exact element has an infinite inverse or
/// square root: sixteen exponent units past the leading term.
pub const DEFAULT_DEPTH: i64 = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedSeries<C> {
    terms: Vec<(Exponent, C)>,
    known_order: ValuationValue,
    mode: SeriesMode,
}

pub(crate) fn sign_of<C: Scalar>(c: &C) -> Ordering {
    if c.is_positive() {
        Ordering::Greater
    } else if c.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

fn below(e: &Exponent, bound: &ValuationValue) -> bool {
    match bound {
        ValuationValue::Infinity => true,
        ValuationValue::Finite(b) => e < b,
    }
}

fn accumulate<C: Scalar>(acc: &mut BTreeMap<Exponent, C>, e: Exponent, c: C) {
    let slot = acc.entry(e).or_insert_with(C::zero);
    *slot = slot.clone() + c;
}

/// Product of two sorted term lists, keeping exponents below `bound`.
fn mul_terms<C: Scalar>(
    a: &[(Exponent, C)],
    b: &[(Exponent, C)],
    bound: &ValuationValue,
) -> BTreeMap<Exponent, C> {
    let coeffs = |xs: &[(Exponent, C)]| xs.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>();
    if let (Some((na, da)), Some((nb, db))) =
        (C::clear_denominators(&coeffs(a)), C::clear_denominators(&coeffs(b)))
    {
        // integer products over one shared denominator
        let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for ((e1, _), n1) in a.iter().zip(&na) {
            for ((e2, _), n2) in b.iter().zip(&nb) {
                let e = e1 + e2;
                if !below(&e, bound) {
                    break;
                }
                *acc.entry(e).or_default() += n1 * n2;
            }
        }
        let den = da * db;
        return acc
            .into_iter()
            .map(|(e, n)| (e, C::from_rational(&BigRational::new(n, den.clone()))))
            .collect();
    }
    let mut acc = BTreeMap::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e = e1 + e2;
            if !below(&e, bound) {
                // b is sorted, later exponents are larger still
                break;
            }
            accumulate(&mut acc, e, c1.clone() * c2.clone());
        }
    }
    acc
}

impl<C: Scalar> GeneralizedSeries<C> {
    fn build(map: BTreeMap<Exponent, C>, known_order: ValuationValue, mode: SeriesMode) -> Self {
        let known_order = match known_order {
            ValuationValue::Finite(e) => ValuationValue::Finite(e.ceil_in_mode(mode)),
            inf => inf,
        };
        let terms = map
            .into_iter()
            .filter(|(e, c)| !c.is_zero() && below(e, &known_order))
            .map(|(e, c)| (e.in_mode(mode).expect("exponent already valid for mode"), c))
            .collect();
        GeneralizedSeries { terms, known_order, mode }
    }

    pub fn zero(mode: SeriesMode) -> Self {
        GeneralizedSeries { terms: Vec::new(), known_order: ValuationValue::Infinity, mode }
    }

    pub fn one(mode: SeriesMode) -> Self {
        Self::constant(C::one(), mode)
    }

    /// Image of a coefficient under the canonical embedding `K → K(t^...)`.
    pub fn constant(c: C, mode: SeriesMode) -> Self {
        let mut map = BTreeMap::new();
        map.insert(Exponent::zero(), c);
        Self::build(map, ValuationValue::Infinity, mode)
    }

    pub fn monomial(c: C, e: Exponent, mode: SeriesMode) -> Result<Self, FieldError> {
        let e = e.in_mode(mode)?;
        let mut map = BTreeMap::new();
        map.insert(e, c);
        Ok(Self::build(map, ValuationValue::Infinity, mode))
    }

    /// The indeterminate `t`, a positive infinitesimal.
    pub fn t(mode: SeriesMode) -> Self {
        Self::monomial(C::one(), one_exponent(), mode).expect("1 is an exponent in every mode")
    }

    /// Builds a series from arbitrary (possibly unsorted, repeated, zero)
    /// terms. Terms at or above `known_order` are dropped.
    pub fn from_terms<I>(terms: I, known_order: ValuationValue, mode: SeriesMode) -> Result<Self, FieldError>
    where
        I: IntoIterator<Item = (Exponent, C)>,
    {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            accumulate(&mut map, e.in_mode(mode)?, c);
        }
        if let ValuationValue::Finite(e) = &known_order {
            e.in_mode(mode)?;
        }
        Ok(Self::build(map, known_order, mode))
    }

    pub fn terms(&self) -> &[(Exponent, C)] {
        &self.terms
    }

    pub fn known_order(&self) -> &ValuationValue {
        &self.known_order
    }

    pub fn mode(&self) -> SeriesMode {
        self.mode
    }

    pub fn is_exact(&self) -> bool {
        self.known_order.is_infinite()
    }

    /// `true` when no term survives below the known order. For an inexact
    /// series this means "zero as far as is known".
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Exponent, &C)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn coeff(&self, e: &Exponent) -> C {
        self.terms
            .iter()
            .find(|(x, _)| x == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    /// Canonical valuation: least exponent of the support, `∞` for zero.
    pub fn valuation(&self) -> ValuationValue {
        match self.terms.first() {
            Some((e, _)) => ValuationValue::Finite(e.clone()),
            None => ValuationValue::Infinity,
        }
    }

    // Valuation, or the known order when nothing is stored: a lower bound
    // for the true valuation either way.
    fn valuation_lower_bound(&self) -> ValuationValue {
        match self.terms.first() {
            Some((e, _)) => ValuationValue::Finite(e.clone()),
            None => self.known_order.clone(),
        }
    }

    fn check_mode(&self, other: &Self) -> Result<(), FieldError> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(FieldError::ModeMismatch(self.mode.to_string(), other.mode.to_string()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_mode(other)?;
        let mut map = BTreeMap::new();
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            accumulate(&mut map, e.clone(), c.clone());
        }
        let ko = min(self.known_order.clone(), other.known_order.clone());
        Ok(Self::build(map, ko, self.mode))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GeneralizedSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
            known_order: self.known_order.clone(),
            mode: self.mode,
        }
    }

    /// Cauchy product, exact below the propagated known order.
    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_mode(other)?;
        let ko = min(
            &self.known_order + &other.valuation_lower_bound(),
            &other.known_order + &self.valuation_lower_bound(),
        );
        let map = mul_terms(&self.terms, &other.terms, &ko);
        Ok(Self::build(map, ko, self.mode))
    }

    /// Multiplies by the exact constant `c`.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.mode);
        }
        GeneralizedSeries {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).collect(),
            known_order: self.known_order.clone(),
            mode: self.mode,
        }
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: &Exponent) -> Result<Self, FieldError> {
        let shift = shift.in_mode(self.mode)?;
        Ok(GeneralizedSeries {
            terms: self.terms.iter().map(|(e, c)| (e + &shift, c.clone())).collect(),
            known_order: &self.known_order + &ValuationValue::Finite(shift),
            mode: self.mode,
        })
    }

    /// Splits a nonzero series as `c·t^m·(1 + u)` with `u` infinitesimal.
    /// The known order of `u` is relative, i.e. `ko - m`.
    fn unit_split(&self) -> Option<(Exponent, C, Self)> {
        let (m, c) = self.terms.first()?;
        let inv_c = C::one() / c.clone();
        let u = GeneralizedSeries {
            terms: self.terms[1..]
                .iter()
                .map(|(e, x)| (e - m, x.clone() * inv_c.clone()))
                .collect(),
            known_order: &self.known_order + &ValuationValue::Finite(-m),
            mode: self.mode,
        };
        Some((m.clone(), c.clone(), u))
    }

    /// Solves for the coefficients of a series `r` in increasing exponent
    /// order, below `bound` (relative exponents). The support of `r` lies in
    /// the monoid generated by the exponents of the infinitesimal `u`, so
    /// candidates are produced from it; `step` gets each candidate and the
    /// coefficients found so far.
    fn solve_in_monoid(
        u: &Self,
        bound: &ValuationValue,
        mut step: impl FnMut(&Exponent, &BTreeMap<Exponent, C>) -> C,
    ) -> BTreeMap<Exponent, C> {
        let zero = Exponent::zero().in_mode(u.mode).expect("0 is an exponent");
        let mut result = BTreeMap::new();
        let mut pending = BTreeSet::from([zero]);
        while let Some(e) = pending.pop_first() {
            for (f, _) in &u.terms {
                let next = &e + f;
                if !below(&next, bound) {
                    break;
                }
                pending.insert(next);
            }
            let c = step(&e, &result);
            result.insert(e, c);
        }
        result
    }

    // Relative precision to which a function of the unit part is computed.
    fn relative_bound(&self, u: &Self, depth: &Exponent) -> ValuationValue {
        match (&u.known_order, u.terms.is_empty()) {
            (ValuationValue::Infinity, true) => ValuationValue::Infinity,
            (ValuationValue::Infinity, false) => ValuationValue::Finite(depth.clone()),
            (finite, _) => finite.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        self.inv_with_depth(&Exponent::int(DEFAULT_DEPTH))
    }

    /// Multiplicative inverse of `c·t^m·(1 + u)`, solving `r·(1 + u) = 1`.
    /// `depth` is the relative precision used when `self` is exact but not
    /// a monomial.
    pub fn inv_with_depth(&self, depth: &Exponent) -> Result<Self, FieldError> {
        let (m, c, u) = self.unit_split().ok_or(FieldError::DivisionByZero)?;
        let bound = self.relative_bound(&u, depth);
        // r·(1 + u) = 1
        let map = Self::solve_in_monoid(&u, &bound, |e, r| {
            let mut acc = if e.is_zero() { C::one() } else { C::zero() };
            for (f, x) in &u.terms {
                if f > e {
                    break;
                }
                if let Some(y) = r.get(&(e - f)) {
                    acc = acc - x.clone() * y.clone();
                }
            }
            acc
        });
        let unit = Self::build(map, bound, self.mode);
        unit.scale(&(C::one() / c)).shift(&-&m)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_mode(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn sqrt(&self) -> Result<Self, FieldError> {
        self.sqrt_with_depth(&Exponent::int(DEFAULT_DEPTH))
    }

    /// Positive square root `√c·t^{m/2}·r` with `r² = 1 + u`.
    ///
    /// Requires a positive element whose valuation halves in the exponent
    /// mode and whose leading coefficient has a square root in `C`.
    pub fn sqrt_with_depth(&self, depth: &Exponent) -> Result<Self, FieldError> {
        let Some((m, c, u)) = self.unit_split() else {
            let ko = match &self.known_order {
                ValuationValue::Infinity => ValuationValue::Infinity,
                ValuationValue::Finite(k) => {
                    let half = k.to_rational() / BigRational::from_integer(2.into());
                    ValuationValue::Finite(Exponent::ratio(half).ceil_in_mode(self.mode))
                }
            };
            return Ok(GeneralizedSeries { terms: Vec::new(), known_order: ko, mode: self.mode });
        };
        if c.is_negative() {
            return Err(FieldError::NegativeSqrt);
        }
        let half_m = m.half(self.mode)?;
        let root_c = c.try_sqrt().ok_or_else(|| FieldError::NonSquareLeading(c.to_string()))?;
        let bound = self.relative_bound(&u, depth);
        // r² = 1 + u: 2·r_e = u_e - Σ_{0<f<e} r_f·r_{e-f}
        let two = C::one() + C::one();
        let map = Self::solve_in_monoid(&u, &bound, |e, r| {
            if e.is_zero() {
                return C::one();
            }
            let mut acc = u.coeff(e);
            for (f, x) in r.iter().skip(1) {
                if f >= e {
                    break;
                }
                if let Some(y) = r.get(&(e - f)) {
                    acc = acc - x.clone() * y.clone();
                }
            }
            acc / two.clone()
        });
        let mut unit = Self::build(map.clone(), bound, self.mode);
        if u.is_exact() && !unit.is_exact() {
            // an exact polynomial root shows up whole within the depth
            let candidate = Self::build(map, ValuationValue::Infinity, self.mode);
            let target = Self::one(self.mode).try_add(&u)?;
            if candidate.try_mul(&candidate)?.terms == target.terms {
                unit = candidate;
            }
        }
        unit.scale(&root_c).shift(&half_m)
    }

    /// `self^n` for an integer `n`; negative powers go through [`Self::inv`].
    pub fn powi(&self, n: i64) -> Result<Self, FieldError> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        let mut result = Self::one(self.mode);
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Raises an exact monomial `t^e` to a rational power.
    pub fn pow_rational(&self, r: &BigRational) -> Result<Self, FieldError> {
        if r.is_integer() {
            let n: i64 = num_traits::ToPrimitive::to_i64(&r.to_integer())
                .ok_or_else(|| FieldError::InvalidArgument(format!("exponent {r} too large")))?;
            return self.powi(n);
        }
        match self.terms.as_slice() {
            [(e, c)] if c.is_one() && self.is_exact() => {
                Self::monomial(C::one(), e.mul_rational(r), self.mode)
            }
            _ => Err(FieldError::InvalidArgument(format!(
                "rational power {r} is only defined here for exact monomials t^e"
            ))),
        }
    }

    /// Drops every term at or above `new_order`.
    pub fn truncate(&self, new_order: &Exponent) -> Result<Self, FieldError> {
        let new_order = new_order.in_mode(self.mode)?;
        let target = ValuationValue::Finite(new_order);
        if target > self.known_order {
            return Err(FieldError::PrecisionRaise {
                from: self.known_order.to_string(),
                to: target.to_string(),
            });
        }
        Ok(self.absorb_order(&target))
    }

    /// Adds `O(t^order)`: lowers the known order to `min(ko, order)`.
    pub fn absorb_order(&self, order: &ValuationValue) -> Self {
        let ko = min(self.known_order.clone(), order.clone());
        let map = self.terms.iter().cloned().collect();
        Self::build(map, ko, self.mode)
    }

    /// Sign of `self - other`. An empty difference below a finite known
    /// order is reported as [`FieldError::Indistinguishable`], never as
    /// `Equal`.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError> {
        self.try_sub(other)?.sign()
    }

    /// Like [`Self::try_cmp`] but treats agreement below the known order as
    /// equality. Use for checking identities that only hold to precision.
    pub fn cmp_below_order(&self, other: &Self) -> Result<Ordering, FieldError> {
        let d = self.try_sub(other)?;
        Ok(d.terms.first().map(|(_, c)| sign_of(c)).unwrap_or(Ordering::Equal))
    }

    pub fn sign(&self) -> Result<Ordering, FieldError> {
        match (self.terms.first(), &self.known_order) {
            (Some((_, c)), _) => Ok(sign_of(c)),
            (None, ValuationValue::Infinity) => Ok(Ordering::Equal),
            (None, ko) => Err(FieldError::Indistinguishable(ko.to_string())),
        }
    }

    /// Compares against an embedded constant without building the difference.
    pub fn cmp_constant(&self, c: &C) -> Result<Ordering, FieldError> {
        let zero = Exponent::zero();
        if let Some((e, x)) = self.terms.first() {
            if e < &zero {
                return Ok(sign_of(x));
            }
        }
        if !below(&zero, &self.known_order) {
            return Err(FieldError::Indistinguishable(self.known_order.to_string()));
        }
        let d0 = self.coeff(&zero) - c.clone();
        if !d0.is_zero() {
            return Ok(sign_of(&d0));
        }
        match self.terms.iter().find(|(e, _)| e > &zero) {
            Some((_, x)) => Ok(sign_of(x)),
            None if self.is_exact() => Ok(Ordering::Equal),
            None => Err(FieldError::Indistinguishable(self.known_order.to_string())),
        }
    }

    pub fn abs(&self) -> Self {
        match self.terms.first() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn classify(&self) -> Classification {
        match self.terms.first() {
            None => Classification::ZERO,
            Some((e, _)) => Classification::from_magnitude(e.cmp(&Exponent::zero())),
        }
    }

    /// Splits a finite element as `standard + infinitesimal`.
    pub fn decompose(&self) -> Result<(C, Self), FieldError> {
        if self.classify().infinite {
            return Err(FieldError::NotFinite);
        }
        let zero = Exponent::zero();
        if !below(&zero, &self.known_order) {
            return Err(FieldError::Indistinguishable(self.known_order.to_string()));
        }
        let standard = self.coeff(&zero);
        let rest = self.try_sub(&Self::constant(standard.clone(), self.mode))?;
        Ok((standard, rest))
    }

    pub fn standard_part(&self) -> Result<C, FieldError> {
        self.decompose().map(|(s, _)| s)
    }

    /// `t^{-k}` for `k = 1..=n`.
    pub fn reciprocal_powers(n: usize, mode: SeriesMode) -> Vec<Self> {
        (1..=n as i64)
            .map(|k| Self::monomial(C::one(), Exponent::int(-k), mode).expect("integer exponent"))
            .collect()
    }
}

/// Text for `t^e` without coefficient: `""` for `e = 0`.
pub fn monomial_text(e: &Exponent) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_integer() {
        let n = e.to_rational().to_integer();
        if n.is_one() {
            "t".to_string()
        } else {
            format!("t^{n}")
        }
    } else {
        format!("t^({})", e.to_rational())
    }
}

impl<C: Scalar> fmt::Display for GeneralizedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in &self.terms {
            let m = monomial_text(e);
            let s = if m.is_empty() {
                c.to_string()
            } else if c.is_one() {
                m
            } else if (-c.clone()).is_one() {
                format!("-{m}")
            } else {
                format!("{c}*{m}")
            };
            parts.push(s);
        }
        if let ValuationValue::Finite(k) = &self.known_order {
            let m = monomial_text(k);
            parts.push(if m.is_empty() { "O(1)".to_string() } else { format!("O({m})") });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, Rational};

    type S = GeneralizedSeries<Rational>;
    const L: SeriesMode = SeriesMode::Laurent;
    const LC: SeriesMode = SeriesMode::LeviCivita;

    fn poly(cs: &[(i64, i64)]) -> S {
        S::from_terms(cs.iter().map(|&(e, c)| (Exponent::int(e), int(c))), ValuationValue::Infinity, L).unwrap()
    }

    fn t() -> S {
        S::t(L)
    }

    fn c(n: i64) -> S {
        S::constant(int(n), L)
    }

    #[test]
    fn square_of_a_polynomial_has_an_exact_root() {
        let mode = SeriesMode::Laurent;
        let p = S::from_terms([(Exponent::int(0), int(2)), (Exponent::int(1), int(1))], ValuationValue::Infinity, mode).unwrap();
        let root = p.try_mul(&p).unwrap().sqrt().unwrap();
        assert_eq!(root, p);
        let inexact = S::one(mode).try_add(&S::t(mode)).unwrap().sqrt().unwrap();
        assert!(!inexact.is_exact());
    }

    #[test]
    fn add_examples() {
        let a = poly(&[(1, 1), (2, 1)]);
        assert_eq!(a.try_add(&t().neg()).unwrap(), poly(&[(2, 1)]));
        assert_eq!(a.try_add(&S::zero(L)).unwrap(), a);
        assert_eq!(poly(&[(0, 1), (1, 1)]).try_add(&poly(&[(0, 1), (1, -1)])).unwrap(), c(2));
    }

    #[test]
    fn mul_examples() {
        let p = poly(&[(0, 1), (1, 1)]);
        let m = poly(&[(0, 1), (1, -1)]);
        assert_eq!(p.try_mul(&m).unwrap(), poly(&[(0, 1), (2, -1)]));
        assert_eq!(poly(&[(-1, 1)]).try_mul(&t()).unwrap(), c(1));
        assert_eq!(p.try_mul(&p).unwrap(), poly(&[(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn mul_precision_rule() {
        // (1 + t + O(t^3)) * (t + O(t^2)) is known below min(3+1, 2+0) = 2
        let a = S::from_terms([(Exponent::int(0), int(1)), (Exponent::int(1), int(1))], Exponent::int(3).into(), L)
            .unwrap();
        let b = S::from_terms([(Exponent::int(1), int(1))], Exponent::int(2).into(), L).unwrap();
        let p = a.try_mul(&b).unwrap();
        assert_eq!(p.known_order(), &ValuationValue::Finite(Exponent::int(2)));
        assert_eq!(p.terms(), &[(Exponent::int(1), int(1))]);
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let a = S::t(L);
        let b = S::t(LC);
        assert!(matches!(a.try_add(&b), Err(FieldError::ModeMismatch(..))));
        assert!(matches!(a.try_mul(&b), Err(FieldError::ModeMismatch(..))));
    }

    #[test]
    fn inverse_examples() {
        let inv = poly(&[(0, 1), (1, -1)]).inv().unwrap();
        assert_eq!(inv.known_order(), &ValuationValue::Finite(Exponent::int(16)));
        assert!(inv.terms().iter().all(|(_, c)| *c == int(1)));
        assert_eq!(inv.terms().len(), 16);

        let inv = poly(&[(1, 1), (2, -1)]).inv().unwrap();
        let exps: Vec<_> = inv.terms().iter().map(|(e, _)| e.clone()).collect();
        assert_eq!(exps, (-1..15).map(Exponent::int).collect::<Vec<_>>());
        assert!(inv.terms().iter().all(|(_, c)| *c == int(1)));

        assert_eq!(c(2).inv().unwrap(), S::constant(rat(1, 2), L));
        assert_eq!(S::zero(L).inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn inverse_times_self_is_one_below_order() {
        let a = poly(&[(-2, 3), (0, -1), (3, 5)]);
        let inv = a.inv().unwrap();
        let prod = a.try_mul(&inv).unwrap();
        assert_eq!(prod.terms(), &[(Exponent::int(0), int(1))]);
        assert!(!prod.is_exact());
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(t().try_cmp(&S::zero(L)).unwrap(), Ordering::Greater);
        for n in [1i64, 2, 10, 1000, 1_000_000] {
            assert_eq!(t().try_cmp(&S::constant(rat(1, n), L)).unwrap(), Ordering::Less);
            assert_eq!(t().cmp_constant(&rat(1, n)).unwrap(), Ordering::Less);
        }
        let a = poly(&[(0, 3), (2, 1)]);
        assert_eq!(a.try_cmp(&a).unwrap(), Ordering::Equal);
        assert_eq!(poly(&[(-1, 1)]).try_cmp(&c(1_000_000)).unwrap(), Ordering::Greater);
    }

    #[test]
    fn truncated_agreement_is_not_equality() {
        let a = poly(&[(0, 1), (1, 1)]).truncate(&Exponent::int(2)).unwrap();
        let b = poly(&[(0, 1), (1, 1), (2, 7)]);
        assert!(matches!(a.try_cmp(&b), Err(FieldError::Indistinguishable(_))));
        assert_eq!(a.cmp_below_order(&b).unwrap(), Ordering::Equal);
    }

    #[test]
    fn cmp_constant_matches_general_comparison() {
        let xs = [poly(&[(0, 3), (1, -1)]), poly(&[(-2, -1)]), poly(&[(0, 4)]), poly(&[(2, 1)])];
        for x in &xs {
            for k in -5..=5 {
                let via_sub = x.try_cmp(&c(k)).unwrap();
                assert_eq!(x.cmp_constant(&int(k)).unwrap(), via_sub);
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(poly(&[(2, 1), (3, 5)]).valuation(), ValuationValue::Finite(Exponent::int(2)));
        assert_eq!(S::zero(L).valuation(), ValuationValue::Infinity);
        assert_eq!(poly(&[(-1, 1), (0, 1)]).valuation(), ValuationValue::Finite(Exponent::int(-1)));
    }

    #[test]
    fn classification_examples() {
        let eps = t().try_mul(&poly(&[(0, 1), (1, -1)]).inv().unwrap()).unwrap();
        let k = eps.classify();
        assert!(k.infinitesimal && !k.is_zero && k.finite && !k.infinite);
        let big = poly(&[(1, 1), (2, -1)]).inv().unwrap().classify();
        assert!(big.infinite && !big.finite);
        let k = poly(&[(0, 3), (1, 1)]).classify();
        assert!(k.finite && !k.infinitesimal);
    }

    #[test]
    fn decompose_examples() {
        let (st, rest) = poly(&[(0, 3), (1, 1), (2, -7)]).decompose().unwrap();
        assert_eq!(st, int(3));
        assert_eq!(rest, poly(&[(1, 1), (2, -7)]));
        let (st, rest) = t().decompose().unwrap();
        assert_eq!(st, int(0));
        assert_eq!(rest, t());
        assert_eq!(poly(&[(-1, 1)]).decompose(), Err(FieldError::NotFinite));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(poly(&[(2, 4)]).sqrt().unwrap(), poly(&[(1, 2)]));
        let r = poly(&[(0, 1), (1, 1)]).sqrt().unwrap();
        let expect = [int(1), rat(1, 2), rat(-1, 8), rat(1, 16), rat(-5, 128)];
        for (k, want) in expect.iter().enumerate() {
            assert_eq!(&r.coeff(&Exponent::int(k as i64)), want);
        }
        let sq = r.try_mul(&r).unwrap();
        assert_eq!(sq.cmp_below_order(&poly(&[(0, 1), (1, 1)])).unwrap(), Ordering::Equal);
        assert_eq!(r.sign().unwrap(), Ordering::Greater);

        assert!(matches!(t().sqrt(), Err(FieldError::NonHalvableValuation(_))));
        let half = S::t(LC).sqrt().unwrap();
        assert_eq!(half, S::monomial(int(1), Exponent::ratio(rat(1, 2)), LC).unwrap());
        assert_eq!(c(-4).sqrt(), Err(FieldError::NegativeSqrt));
        assert!(matches!(c(2).sqrt(), Err(FieldError::NonSquareLeading(_))));
    }

    #[test]
    fn truncate_examples() {
        let a = poly(&[(0, 1), (1, 1), (2, 1)]);
        let tr = a.truncate(&Exponent::int(2)).unwrap();
        assert_eq!(tr.terms(), poly(&[(0, 1), (1, 1)]).terms());
        assert_eq!(tr.truncate(&Exponent::int(2)).unwrap(), tr);
        assert!(matches!(tr.truncate(&Exponent::int(3)), Err(FieldError::PrecisionRaise { .. })));
    }

    #[test]
    fn canonical_text() {
        let inv = poly(&[(1, 1), (2, -1)]).inv_with_depth(&Exponent::int(4)).unwrap();
        assert_eq!(inv.to_string(), "t^-1 + 1 + t + t^2 + O(t^3)");
        assert_eq!(poly(&[(0, 3), (1, 1), (2, -7)]).to_string(), "3 + t - 7*t^2");
        assert_eq!(S::zero(L).to_string(), "0");
        let lc = S::monomial(rat(-3, 2), Exponent::ratio(rat(-1, 2)), LC).unwrap();
        assert_eq!(lc.to_string(), "-3/2*t^(-1/2)");
        let z = S::zero(L).absorb_order(&ValuationValue::Finite(Exponent::int(0)));
        assert_eq!(z.to_string(), "O(1)");
    }

    #[test]
    fn float_coefficients_work_too() {
        let a = GeneralizedSeries::<f64>::from_terms(
            [(Exponent::int(0), 1.0), (Exponent::int(1), 1.0)],
            ValuationValue::Infinity,
            L,
        )
        .unwrap();
        let inv = a.inv_with_depth(&Exponent::int(4)).unwrap();
        assert_eq!(inv.terms().iter().map(|(_, c)| *c).collect::<Vec<_>>(), vec![1.0, -1.0, 1.0, -1.0]);
    }
}
