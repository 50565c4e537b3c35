//! Constructive procedures over an Archimedean field: the supremum-based
//! square root step, the dyadic approximation of a supremum, bisection for
//! the intermediate value theorem and Bolzano-Weierstrass interval halving.
//!
//! All of them are generic over [`Scalar`]. With [`Rational`](crate::Rational)
//! every iterate and every residual is exact.

use serde::Serialize;

use crate::completeness::ClosedInterval;
use crate::error::FieldError;
use crate::ratfunc::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep<T> {
    pub iterate: T,
    /// `iterate² - a`, exact for exact scalars.
    pub residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StopReason {
    ToleranceMet,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationTrace<T> {
    /// Starting point first, then one entry per update.
    pub steps: Vec<TraceStep<T>>,
    pub terminated: bool,
    pub reason: StopReason,
}

impl<T: Scalar> IterationTrace<T> {
    pub fn last(&self) -> &TraceStep<T> {
        self.steps.last().expect("trace holds the starting point")
    }
}

/// How the step `h` of [`sqrt_sup_iterate_with`] is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRule {
    /// `h` exactly as given by the two cases. Denominators roughly triple in
    /// length per step, so only a handful of steps are practical.
    Verbatim,
    /// `h` rounded down to a dyadic rational with this many significant bits.
    /// Any `0 < h' <= h` keeps the case invariants, so nothing is lost but
    /// the size of the numbers.
    Dyadic(u32),
}

impl Default for StepRule {
    fn default() -> Self {
        StepRule::Dyadic(32)
    }
}

/// [`sqrt_sup_iterate_with`] using the default [`StepRule`].
pub fn sqrt_sup_iterate<T: Scalar>(a: &T, tol: &T, max_iter: usize) -> Result<IterationTrace<T>, FieldError> {
    sqrt_sup_iterate_with(a, tol, max_iter, StepRule::default())
}

/// Approaches `√a` from `s₀ = min(a, 1)` by the two-case step
///
/// * `s² < a`: `s ← s + h`, `h = ½·min{(a − s²)/(s + 1)², 1}`, keeping `s² < a`;
/// * `s² > a`: `s ← s − h`, `h = (s² − a)/(2(s + 1)²)`, keeping `s² > a`;
///
/// until `|s² − a| <= tol` or `max_iter` updates have been made.
pub fn sqrt_sup_iterate_with<T: Scalar>(
    a: &T,
    tol: &T,
    max_iter: usize,
    rule: StepRule,
) -> Result<IterationTrace<T>, FieldError> {
    if !a.is_positive() {
        return Err(FieldError::InvalidArgument(format!("a = {a} must be positive")));
    }
    if !tol.is_positive() {
        return Err(FieldError::InvalidArgument(format!("tol = {tol} must be positive")));
    }
    let one = T::one();
    let two = one.clone() + one.clone();
    let half = one.clone() / two.clone();
    let shrink = |h: T| match rule {
        StepRule::Verbatim => h,
        StepRule::Dyadic(bits) => h.round_down(bits),
    };

    let mut s = if *a < one { a.clone() } else { one.clone() };
    let mut residual = s.clone() * s.clone() - a.clone();
    let mut steps = vec![TraceStep { iterate: s.clone(), residual: residual.clone() }];
    let mut iterations = 0;
    while residual.abs() > *tol && iterations < max_iter {
        let denom = (s.clone() + one.clone()) * (s.clone() + one.clone());
        let ascending = residual.is_negative();
        let next = if ascending {
            let ratio = (a.clone() - s.clone() * s.clone()) / denom;
            let m = if ratio < one { ratio } else { one.clone() };
            s.clone() + shrink(half.clone() * m)
        } else {
            let h = residual.clone() / (two.clone() * denom);
            s.clone() - shrink(h)
        };
        let next_residual = next.clone() * next.clone() - a.clone();
        let keeps_case = if ascending {
            next_residual.is_negative() && next > s
        } else {
            next_residual.is_positive() && next < s
        };
        if !keeps_case {
            return Err(FieldError::Contract(format!("step from {s} to {next} left its case")));
        }
        s = next;
        residual = next_residual;
        steps.push(TraceStep { iterate: s.clone(), residual: residual.clone() });
        iterations += 1;
    }
    let met = residual.abs() <= *tol;
    Ok(IterationTrace {
        steps,
        terminated: met,
        reason: if met { StopReason::ToleranceMet } else { StopReason::MaxIterations },
    })
}

/// Dyadic upper approximations of `sup S`, given a monotone upper-bound
/// oracle for `S`. Returns `a_p = k_p / 2^p` for `p = 0..=levels`, where
/// `k_p` is the least integer with `k_p / 2^p` an upper bound (and
/// `k_p <= 2^p·hi`).
///
/// `lo` must not be an upper bound and `hi` must be one. Level `p + 1` only
/// tests `2k_p − 1`, since `k_{p+1} ∈ {2k_p − 1, 2k_p}`.
pub fn dyadic_sup<T, P>(is_upper_bound: P, lo: i64, hi: i64, levels: u32) -> Result<Vec<T>, FieldError>
where
    T: Scalar,
    P: Fn(&T) -> bool,
{
    if lo >= hi {
        return Err(FieldError::InvalidArgument(format!("need lo < hi, got {lo} and {hi}")));
    }
    if is_upper_bound(&T::from_int(lo)) {
        return Err(FieldError::Contract(format!("lower end {lo} is an upper bound")));
    }
    if !is_upper_bound(&T::from_int(hi)) {
        return Err(FieldError::Contract(format!("upper end {hi} is not an upper bound")));
    }
    let too_big = || FieldError::InvalidArgument(format!("2^{levels}·{hi} overflows"));
    (hi.unsigned_abs().max(lo.unsigned_abs()))
        .checked_mul(1u64.checked_shl(levels).filter(|&x| x < (1 << 62)).ok_or_else(too_big)?)
        .filter(|&x| x < (1 << 62))
        .ok_or_else(too_big)?;

    let value = |k: i64, p: u32| T::from_int(k) * T::dyadic(p);
    // p = 0: full downward scan
    let mut k = hi;
    while k - 1 > lo && is_upper_bound(&T::from_int(k - 1)) {
        k -= 1;
    }
    let mut out = vec![T::from_int(k)];
    for p in 1..=levels {
        let candidate = 2 * k - 1;
        k = if is_upper_bound(&value(candidate, p)) { candidate } else { 2 * k };
        let a_p = value(k, p);
        if !is_upper_bound(&a_p) || is_upper_bound(&value(k - 1, p)) {
            return Err(FieldError::Contract(format!("oracle is not monotone near {a_p}")));
        }
        out.push(a_p);
    }
    Ok(out)
}

/// Bisection on a sign change of `p` over `[a, b]`: returns `[lo, hi]` of
/// width `(b − a)/2^iters` with `p(lo)·p(hi) <= 0`.
pub fn bisect_ivt<T: Scalar>(p: &Polynomial<T>, a: &T, b: &T, iters: u32) -> Result<ClosedInterval<T>, FieldError> {
    if a >= b {
        return Err(FieldError::InvalidInterval(format!("[{a}, {b}]")));
    }
    let (mut lo, mut hi) = (a.clone(), b.clone());
    let mut f_lo = p.eval(&lo);
    if (f_lo.clone() * p.eval(&hi)).is_positive() {
        return Err(FieldError::SameSignEndpoints);
    }
    let two = T::one() + T::one();
    for _ in 0..iters {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        let f_mid = p.eval(&mid);
        if (f_lo.clone() * f_mid.clone()).is_positive() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(ClosedInterval { lo, hi })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BwSelection<T> {
    /// 0-based, strictly increasing positions `n_k`.
    pub indices: Vec<usize>,
    /// `Γ_1 ⊇ Γ_2 ⊇ ...` with `prefix[n_k] ∈ Γ_k`.
    pub intervals: Vec<ClosedInterval<T>>,
    /// Why fewer than the requested selections were made, if so.
    pub stopped_early: Option<String>,
}

/// Bolzano-Weierstrass halving on a finite prefix. `Γ_1 = [a, b]`,
/// `n_1 = 0`; each step halves `Γ_k` and keeps the half holding more of the
/// remaining terms (ties go left), taking its first remaining term.
pub fn bw_select<T: Scalar>(prefix: &[T], a: &T, b: &T, selections: usize) -> Result<BwSelection<T>, FieldError> {
    if prefix.is_empty() {
        return Err(FieldError::EmptyInput);
    }
    if a > b {
        return Err(FieldError::InvalidInterval(format!("[{a}, {b}]")));
    }
    if let Some(x) = prefix.iter().find(|x| *x < a || *x > b) {
        return Err(FieldError::InvalidArgument(format!("{x} lies outside [{a}, {b}]")));
    }
    let two = T::one() + T::one();
    let mut sel = BwSelection { indices: Vec::new(), intervals: Vec::new(), stopped_early: None };
    if selections == 0 {
        return Ok(sel);
    }
    let mut current = ClosedInterval { lo: a.clone(), hi: b.clone() };
    let mut last = 0;
    sel.indices.push(0);
    sel.intervals.push(current.clone());
    while sel.indices.len() < selections {
        let mid = (current.lo.clone() + current.hi.clone()) / two.clone();
        let rest = (last + 1)..prefix.len();
        let left: Vec<usize> = rest.clone().filter(|&n| prefix[n] >= current.lo && prefix[n] <= mid).collect();
        let right: Vec<usize> = rest.filter(|&n| prefix[n] >= mid && prefix[n] <= current.hi).collect();
        let (half, chosen) = if !left.is_empty() && left.len() >= right.len() {
            (ClosedInterval { lo: current.lo.clone(), hi: mid }, left)
        } else if !right.is_empty() {
            (ClosedInterval { lo: mid, hi: current.hi.clone() }, right)
        } else {
            sel.stopped_early = Some(format!("prefix exhausted after {} selections", sel.indices.len()));
            break;
        };
        last = chosen[0];
        current = half;
        sel.indices.push(last);
        sel.intervals.push(current.clone());
    }
    Ok(sel)
}
