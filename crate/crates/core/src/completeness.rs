//! Finite probes of completeness properties.
//!
//! Countable or uncountable completeness statements cannot be checked on a
//! computer; what can be checked is their finite content. Every probe
//! returns either a constructed witness that is re-verified before it is
//! reported, a counterexample, or an honest `Inconclusive`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::FieldError;
use crate::field::OrderedField;
use crate::scalar::Scalar;

/// Default number of naturals scanned when cross-checking Archimedean verdicts.
pub const DEFAULT_SCAN_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedInterval<F> {
    pub lo: F,
    pub hi: F,
}

impl<F: OrderedField> ClosedInterval<F> {
    pub fn new(lo: F, hi: F) -> Result<Self, FieldError> {
        if lo.try_cmp(&hi)? == Ordering::Greater {
            return Err(FieldError::InvalidInterval(format!("[{lo}, {hi}] has lo > hi")));
        }
        Ok(ClosedInterval { lo, hi })
    }

    pub fn contains(&self, x: &F) -> Result<bool, FieldError> {
        Ok(self.lo.try_cmp(x)? != Ordering::Greater && x.try_cmp(&self.hi)? != Ordering::Greater)
    }

    pub fn width(&self) -> Result<F, FieldError> {
        self.hi.try_sub(&self.lo)
    }
}

impl<F: fmt::Display> fmt::Display for ClosedInterval<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpenInterval<F> {
    pub lo: F,
    pub hi: F,
}

impl<F: OrderedField> OpenInterval<F> {
    pub fn new(lo: F, hi: F) -> Result<Self, FieldError> {
        if lo.try_cmp(&hi)? != Ordering::Less {
            return Err(FieldError::InvalidInterval(format!("({lo}, {hi}) is empty")));
        }
        Ok(OpenInterval { lo, hi })
    }

    pub fn contains(&self, x: &F) -> Result<bool, FieldError> {
        Ok(self.lo.try_cmp(x)? == Ordering::Less && x.try_cmp(&self.hi)? == Ordering::Less)
    }
}

impl<F: fmt::Display> fmt::Display for OpenInterval<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Witness,
    CounterexampleShown,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Witness => "Witness",
            Verdict::CounterexampleShown => "CounterexampleShown",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

/// Outcome of a probe. Values are kept as canonical text so that exact
/// rationals and series survive serialization unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub probe: String,
    pub verdict: Verdict,
    pub witness: Vec<String>,
    pub trace: Vec<String>,
}

impl ProbeReport {
    pub fn new(probe: impl Into<String>, verdict: Verdict) -> Self {
        ProbeReport { probe: probe.into(), verdict, witness: Vec::new(), trace: Vec::new() }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness.push(w.into());
        self
    }

    pub fn line(&mut self, l: impl Into<String>) {
        self.trace.push(l.into());
    }

    /// Line-oriented form:
    ///
    /// ```text
    /// probe: <name>
    /// verdict: <verdict>
    /// witness: <value>        (one line per witness value)
    /// trace: <line>           (one line per trace entry)
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = format!("probe: {}\nverdict: {}\n", self.probe, self.verdict);
        for w in &self.witness {
            out.push_str(&format!("witness: {w}\n"));
        }
        for t in &self.trace {
            out.push_str(&format!("trace: {t}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}

fn max_by_field<'a, F: OrderedField>(xs: impl Iterator<Item = &'a F>) -> Result<Option<&'a F>, FieldError>
where
    F: 'a,
{
    let mut best: Option<&F> = None;
    for x in xs {
        best = match best {
            Some(b) if b.try_cmp(x)? != Ordering::Less => Some(b),
            _ => Some(x),
        };
    }
    Ok(best)
}

fn min_by_field<'a, F: OrderedField>(xs: impl Iterator<Item = &'a F>) -> Result<Option<&'a F>, FieldError>
where
    F: 'a,
{
    let mut best: Option<&F> = None;
    for x in xs {
        best = match best {
            Some(b) if b.try_cmp(x)? != Ordering::Greater => Some(b),
            _ => Some(x),
        };
    }
    Ok(best)
}

/// Finite intersection property of a family of closed intervals. For
/// intervals this is just `max lo <= min hi`.
pub fn fip_check<F: OrderedField>(family: &[ClosedInterval<F>]) -> Result<bool, FieldError> {
    let lo = max_by_field(family.iter().map(|i| &i.lo))?.ok_or(FieldError::EmptyInput)?;
    let hi = min_by_field(family.iter().map(|i| &i.hi))?.ok_or(FieldError::EmptyInput)?;
    Ok(lo.try_cmp(hi)? != Ordering::Greater)
}

/// A point common to a finite family with the FIP: the largest left end.
pub fn cantor_point_finite<F: OrderedField>(family: &[ClosedInterval<F>]) -> Result<F, FieldError> {
    if !fip_check(family)? {
        return Err(FieldError::FipFails);
    }
    let point = max_by_field(family.iter().map(|i| &i.lo))?.expect("nonempty").clone();
    for iv in family {
        if !iv.contains(&point)? {
            return Err(FieldError::Contract(format!("{point} escaped {iv}")));
        }
    }
    Ok(point)
}

/// A point strictly inside every interval of a finite family of open
/// intervals, given `rho > 0` with `rho <= hi_l - lo_k` for all pairs:
/// `zeta = max lo + rho/2`, which satisfies
/// `lo_k + rho/2 <= zeta <= hi_k - rho/2` for every `k`.
pub fn open_fip_point<F: OrderedField>(family: &[OpenInterval<F>], rho: &F) -> Result<F, FieldError> {
    if family.is_empty() {
        return Err(FieldError::EmptyInput);
    }
    let zero = rho.embed(&F::Scalar::zero());
    if rho.try_cmp(&zero)? != Ordering::Greater {
        return Err(FieldError::InvalidArgument(format!("rho = {rho} is not positive")));
    }
    for (k, a) in family.iter().enumerate() {
        for (l, b) in family.iter().enumerate() {
            let gap = b.hi.try_sub(&a.lo)?;
            if rho.try_cmp(&gap)? == Ordering::Greater {
                return Err(FieldError::InvalidRho { lo_index: k, hi_index: l });
            }
        }
    }
    let half = rho.embed(&(F::Scalar::one() / (F::Scalar::one() + F::Scalar::one())));
    let half_rho = rho.try_mul(&half)?;
    let max_lo = max_by_field(family.iter().map(|i| &i.lo))?.expect("nonempty");
    let zeta = max_lo.try_add(&half_rho)?;
    for iv in family {
        let left = iv.lo.try_add(&half_rho)?;
        let right = iv.hi.try_sub(&half_rho)?;
        let ok = left.try_cmp(&zeta)? != Ordering::Greater
            && zeta.try_cmp(&right)? != Ordering::Greater
            && iv.contains(&zeta)?;
        if !ok {
            return Err(FieldError::Contract(format!("{zeta} is not inside {iv} by rho/2")));
        }
    }
    Ok(zeta)
}

/// For each threshold `eps`, the least 1-based `N` such that all terms from
/// position `N` on lie within `eps` of each other. When only the final term
/// qualifies the prefix carries no evidence and the threshold is reported
/// inconclusive.
pub fn cauchy_probe<F: OrderedField>(prefix: &[F], thresholds: &[F]) -> Result<ProbeReport, FieldError> {
    if prefix.is_empty() {
        return Err(FieldError::EmptyInput);
    }
    // spread[i] = max - min over prefix[i..]
    let n = prefix.len();
    let mut spreads = vec![prefix[0].embed(&F::Scalar::zero()); n];
    let (mut hi, mut lo) = (prefix[n - 1].clone(), prefix[n - 1].clone());
    for i in (0..n).rev() {
        if prefix[i].try_cmp(&hi)? == Ordering::Greater {
            hi = prefix[i].clone();
        }
        if prefix[i].try_cmp(&lo)? == Ordering::Less {
            lo = prefix[i].clone();
        }
        spreads[i] = hi.try_sub(&lo)?;
    }
    let mut report = ProbeReport::new("cauchy", Verdict::Witness);
    report.line(format!("prefix length {n}"));
    for eps in thresholds {
        let mut first = None;
        for (i, s) in spreads.iter().enumerate() {
            if s.try_cmp(eps)? == Ordering::Less {
                first = Some(i + 1);
                break;
            }
        }
        match first {
            Some(big_n) if big_n < n || n == 1 => {
                report.witness.push(big_n.to_string());
                report.line(format!("eps = {eps}: N = {big_n}"));
            }
            _ => {
                report.verdict = Verdict::Inconclusive;
                report.witness.push("none".to_string());
                report.line(format!("eps = {eps}: no tail of length >= 2 is eps-close"));
            }
        }
    }
    Ok(report)
}

/// Decides whether `x` is bounded by a natural number. Finite elements get
/// the least `n >= 1` with `|x| < n`; infinitely large ones a counterexample.
/// Both verdicts are cross-checked by scanning `n = 1..=bound`.
pub fn archimedean_probe<F: OrderedField>(x: &F, bound: u64) -> Result<ProbeReport, FieldError> {
    if bound == 0 {
        return Err(FieldError::InvalidArgument("scan bound must be at least 1".into()));
    }
    let abs = x.abs()?;
    let class = x.classify();
    if class.finite {
        let st = abs.standard_part()?;
        let mut n = st
            .floor()
            .to_u64()
            .and_then(|f| f.checked_add(1))
            .ok_or_else(|| FieldError::InvalidArgument(format!("standard part {st} too large")))?;
        if n > 1 && abs.cmp_natural(n - 1)? == Ordering::Less {
            n -= 1;
        }
        if abs.cmp_natural(n)? != Ordering::Less {
            return Err(FieldError::Contract(format!("|{x}| is not below {n}")));
        }
        let mut report = ProbeReport::new("archimedean", Verdict::Witness).with_witness(n.to_string());
        report.line(format!("standard part of |x| = {st}"));
        let scanned = n.min(bound);
        for k in 1..scanned {
            if abs.cmp_natural(k)? == Ordering::Less {
                return Err(FieldError::Contract(format!("scan found smaller witness {k}")));
            }
        }
        if n <= bound {
            report.line(format!("scan confirms |x| >= k for k < {n} and |x| < {n}"));
        } else {
            report.line(format!("witness exceeds scan bound {bound}; scan confirms |x| >= k for k < {bound}"));
        }
        Ok(report)
    } else {
        for k in 1..=bound {
            if abs.cmp_natural(k)? != Ordering::Greater {
                return Err(FieldError::Contract(format!("infinite element not above {k}")));
            }
        }
        let mut report = ProbeReport::new("archimedean", Verdict::CounterexampleShown).with_witness(x.to_string());
        report.line(format!("|x| > n for all n <= {bound}"));
        report.line("valuation is negative: x is infinitely large".to_string());
        Ok(report)
    }
}

/// `L, L^2, ..., L^n` for the field's fixed infinitely large element `L`
/// (`t^{-1}` for series): a strictly increasing unbounded sequence.
pub fn gen_unbounded_increasing<F: OrderedField>(field: &F, n: usize) -> Result<Vec<F>, FieldError> {
    if n == 0 {
        return Err(FieldError::InvalidArgument("n must be at least 1".into()));
    }
    let big = field
        .infinitely_large()
        .ok_or_else(|| FieldError::InvalidArgument("an Archimedean field has no infinitely large element".into()))?;
    let mut out = Vec::with_capacity(n);
    let mut cur = big.clone();
    for _ in 0..n {
        out.push(cur.clone());
        cur = cur.try_mul(&big)?;
    }
    Ok(out)
}

/// Shows `1, 2, ..., n` all lie below a single element: the naturals are
/// bounded above, which is impossible in an Archimedean field.
pub fn bounded_naturals_probe<F: OrderedField>(field: &F, n: u64) -> Result<ProbeReport, FieldError> {
    if n == 0 {
        return Err(FieldError::InvalidArgument("n must be at least 1".into()));
    }
    match field.infinitely_large() {
        Some(big) => {
            for k in 1..=n {
                if big.cmp_natural(k)? != Ordering::Greater {
                    return Err(FieldError::Contract(format!("{big} is not above {k}")));
                }
            }
            let mut report = ProbeReport::new("naturals-bounded", Verdict::Witness).with_witness(big.to_string());
            report.line(format!("k < {big} for k = 1..{n}"));
            Ok(report)
        }
        None => {
            let mut report = ProbeReport::new("naturals-bounded", Verdict::CounterexampleShown);
            report.line("field is Archimedean: every element q is exceeded by floor(|q|) + 1".to_string());
            report.line(format!("no upper bound for 1..{n} exists in the field"));
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, Rational};
    use crate::exponent::{Exponent, SeriesMode, ValuationValue};
    use crate::series::GeneralizedSeries;

    type S = GeneralizedSeries<Rational>;
    const L: SeriesMode = SeriesMode::Laurent;

    fn c(n: i64) -> S {
        S::constant(int(n), L)
    }

    fn tpow(k: i64) -> S {
        S::monomial(int(1), Exponent::int(k), L).unwrap()
    }

    fn closed(lo: S, hi: S) -> ClosedInterval<S> {
        ClosedInterval::new(lo, hi).unwrap()
    }

    fn open(lo: S, hi: S) -> OpenInterval<S> {
        OpenInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn fip_examples() {
        assert!(fip_check(&[closed(c(0), c(2)), closed(c(1), c(3))]).unwrap());
        assert!(!fip_check(&[closed(c(0), c(1)), closed(c(2), c(3))]).unwrap());
        let shrinking: Vec<_> = (1..=5).map(|n| closed(tpow(n).neg(), tpow(n))).collect();
        assert!(fip_check(&shrinking).unwrap());
        assert_eq!(fip_check::<S>(&[]), Err(FieldError::EmptyInput));
    }

    #[test]
    fn cantor_point_examples() {
        assert_eq!(cantor_point_finite(&[closed(c(0), c(2)), closed(c(1), c(3))]).unwrap(), c(1));
        let shrinking: Vec<_> = (1..=5).map(|n| closed(tpow(n).neg(), tpow(n))).collect();
        let p = cantor_point_finite(&shrinking).unwrap();
        assert_eq!(p, tpow(5).neg());
        assert!(shrinking.iter().all(|i| i.contains(&p).unwrap()));
        assert_eq!(cantor_point_finite(&[closed(c(4), c(9))]).unwrap(), c(4));
        assert_eq!(
            cantor_point_finite(&[closed(c(0), c(1)), closed(c(2), c(3))]),
            Err(FieldError::FipFails)
        );
    }

    #[test]
    fn open_fip_examples() {
        let fam = [open(c(0), c(1)), open(c(0), tpow(1)), open(c(0), tpow(2))];
        let z = open_fip_point(&fam, &tpow(2)).unwrap();
        assert_eq!(z, S::monomial(rat(1, 2), Exponent::int(2), L).unwrap());
        assert!(fam.iter().all(|i| i.contains(&z).unwrap()));

        assert_eq!(open_fip_point(&[open(c(0), c(1))], &c(1)).unwrap(), S::constant(rat(1, 2), L));

        let bad = [open(c(0), tpow(1)), open(tpow(1), c(1))];
        for rho in [c(1), tpow(5), tpow(40)] {
            assert!(matches!(open_fip_point(&bad, &rho), Err(FieldError::InvalidRho { .. })));
        }
        assert!(open_fip_point(&[open(c(0), c(1))], &c(0)).is_err());
    }

    #[test]
    fn cauchy_examples() {
        let constant = vec![c(3); 6];
        let r = cauchy_probe(&constant, &[S::constant(rat(1, 100), L), tpow(3)]).unwrap();
        assert_eq!(r.verdict, Verdict::Witness);
        assert_eq!(r.witness, vec!["1", "1"]);

        for len in [2usize, 5, 20, 64] {
            let halves: Vec<S> = (1..=len as u32).map(|p| S::constant(Rational::dyadic(p), L)).collect();
            let r = cauchy_probe(&halves, &[tpow(1)]).unwrap();
            assert_eq!(r.verdict, Verdict::Inconclusive, "len {len}");
        }
    }

    #[test]
    fn archimedean_examples() {
        let x = c(3).try_add(&tpow(1)).unwrap();
        let r = archimedean_probe(&x, 1000).unwrap();
        assert_eq!(r.verdict, Verdict::Witness);
        assert_eq!(r.witness, vec!["4"]);

        // 3 - t is below 3
        let y = c(3).try_sub(&tpow(1)).unwrap();
        assert_eq!(archimedean_probe(&y, 1000).unwrap().witness, vec!["3"]);

        let r = archimedean_probe(&tpow(-1), 10_000).unwrap();
        assert_eq!(r.verdict, Verdict::CounterexampleShown);

        let r = archimedean_probe(&S::zero(L), 10).unwrap();
        assert_eq!(r.witness, vec!["1"]);

        let r = archimedean_probe(&rat(-7, 2), 100).unwrap();
        assert_eq!(r.witness, vec!["4"]);
    }

    #[test]
    fn unbounded_sequences() {
        let seq = gen_unbounded_increasing(&c(1), 3).unwrap();
        assert_eq!(seq, vec![tpow(-1), tpow(-2), tpow(-3)]);
        let seq = gen_unbounded_increasing(&c(1), 64).unwrap();
        for w in seq.windows(2) {
            assert_eq!(w[0].try_cmp(&w[1]).unwrap(), Ordering::Less);
        }
        assert!(seq.iter().all(|s| s.classify().infinite));
        assert!(gen_unbounded_increasing(&int(1), 3).is_err());
    }

    #[test]
    fn bounded_naturals() {
        let r = bounded_naturals_probe(&c(1), 1000).unwrap();
        assert_eq!(r.verdict, Verdict::Witness);
        assert_eq!(r.witness, vec!["t^-1"]);
        assert_eq!(bounded_naturals_probe(&c(1), 1).unwrap().verdict, Verdict::Witness);
        assert_eq!(bounded_naturals_probe(&int(1), 10).unwrap().verdict, Verdict::CounterexampleShown);
    }

    #[test]
    fn report_formats() {
        let r = ProbeReport::new("archimedean", Verdict::Witness).with_witness("4");
        let text = r.to_text();
        assert!(text.contains("verdict: Witness"));
        assert!(text.starts_with("probe: archimedean\n"));
        let back: ProbeReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn truncation_ambiguity_propagates() {
        let a = c(1).absorb_order(&ValuationValue::Finite(Exponent::int(0)));
        assert!(ClosedInterval::new(a, c(2)).is_err());
    }
}
