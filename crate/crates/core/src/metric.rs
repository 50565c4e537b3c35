//! The valuation ultrametric `d(x, y) = e^{-v(x - y)}` and its closed balls.
//!
//! Every decision is taken on exact valuation levels. The real number
//! `e^{-v}` is produced only for display.

use crate::error::FieldError;
use crate::exponent::{Exponent, ValuationValue};
use crate::scalar::Scalar;
use crate::series::GeneralizedSeries;

/// Distance between two series: the exact level `v(x - y)` and the display
/// radius `e^{-level}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distance {
    pub level: ValuationValue,
    pub display: f64,
}

/// Valuation of `x - y`. Fails when the difference vanishes below a finite
/// known order, since the level is then only bounded from below.
pub fn metric_distance<C: Scalar>(
    x: &GeneralizedSeries<C>,
    y: &GeneralizedSeries<C>,
) -> Result<Distance, FieldError> {
    let d = x.try_sub(y)?;
    if d.is_zero() && !d.is_exact() {
        return Err(FieldError::Indistinguishable(d.known_order().to_string()));
    }
    let level = d.valuation();
    let display = level.display_radius();
    Ok(Distance { level, display })
}

/// `{ y : v(y - center) >= level }`, i.e. the closed ball of radius `e^{-level}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedBall<C> {
    pub center: GeneralizedSeries<C>,
    pub level: Exponent,
}

impl<C: Scalar> ClosedBall<C> {
    pub fn new(center: GeneralizedSeries<C>, level: Exponent) -> Self {
        ClosedBall { center, level }
    }

    pub fn radius(&self) -> f64 {
        ValuationValue::Finite(self.level.clone()).display_radius()
    }

    pub fn contains(&self, x: &GeneralizedSeries<C>) -> Result<bool, FieldError> {
        let d = x.try_sub(&self.center)?;
        if let Some((v, _)) = d.leading() {
            return Ok(v >= &self.level);
        }
        match d.known_order() {
            ValuationValue::Infinity => Ok(true),
            ValuationValue::Finite(ko) if ko >= &self.level => Ok(true),
            ko => Err(FieldError::Indistinguishable(ko.to_string())),
        }
    }

    /// `true` when `other ⊆ self`. In an ultrametric space this holds exactly
    /// when `other.level >= self.level` and `other.center ∈ self`.
    pub fn contains_ball(&self, other: &ClosedBall<C>) -> Result<bool, FieldError> {
        Ok(other.level >= self.level && self.contains(&other.center)?)
    }
}

/// A point in the intersection of a finite nested chain of closed balls:
/// the center of the innermost ball, re-checked against every ball.
pub fn nested_ball_point<C: Scalar>(chain: &[ClosedBall<C>]) -> Result<GeneralizedSeries<C>, FieldError> {
    let last = chain.last().ok_or(FieldError::EmptyInput)?;
    for (i, pair) in chain.windows(2).enumerate() {
        if !pair[0].contains_ball(&pair[1])? {
            return Err(FieldError::NotNested { outer: i, inner: i + 1 });
        }
    }
    let point = last.center.clone();
    for ball in chain {
        if !ball.contains(&point)? {
            return Err(FieldError::Contract("nested point escaped a ball".into()));
        }
    }
    Ok(point)
}

/// Decimal text with five significant digits, switching to scientific
/// notation outside `[1e-5, 1e5)`.
pub fn format_display(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp10 = x.abs().log10().floor() as i32;
    if (-5..=4).contains(&exp10) {
        let decimals = (4 - exp10) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.4e}")
    }
}
