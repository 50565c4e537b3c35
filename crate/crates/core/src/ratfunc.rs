//! Polynomials and the rational function field `K(x)` with its two orders.
//!
//! At infinity, `f > 0` when `f(x) > 0` for all sufficiently large real `x`;
//! this makes `x` infinitely large. At zero, `f` is ordered through its
//! Laurent expansion about 0, which makes `t` a positive infinitesimal. The
//! substitution `x ↦ 1/t` carries one order to the other.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::classification::Classification;
use crate::error::FieldError;
use crate::exponent::{Exponent, SeriesMode, ValuationValue};
use crate::scalar::Scalar;
use crate::series::{sign_of, GeneralizedSeries};

/// Dense univariate polynomial, coefficients in ascending degree. The zero
/// polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn monomial(c: C, degree: usize) -> Self {
        let mut coeffs = vec![C::zero(); degree];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0 and the lowest nonzero coefficient.
    pub fn low_term(&self) -> Option<(usize, &C)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(C::convolve(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let d = divisor.degree().ok_or(FieldError::DivisionByZero)?;
        let lead = divisor.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d && !rem.is_empty() {
            let k = rem.len() - 1 - d;
            let q = rem.last().expect("nonempty").clone() / lead.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * c.clone();
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(C::one() / l.clone())),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if !self.is_zero() && !other.is_zero() && coprime_mod_p(&self.coeffs, &other.coeffs) {
            return Self::constant(C::one());
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            // monic remainders keep the coefficients from growing
            b = r.monic();
        }
        a.monic()
    }

    /// `p(x) ↦ p(x²)`.
    pub fn substitute_square(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() * 2);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                out.push(C::zero());
            }
            out.push(c.clone());
        }
        Self::new(out)
    }

    /// Coefficients in reverse order: `x^deg · p(1/x)`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Divides out `x^k`; the caller guarantees the low coefficients vanish.
    fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    /// Square root in `C[x]` if `self` is a perfect square there.
    pub fn sqrt_exact(&self) -> Option<Self> {
        let Some(deg) = self.degree() else {
            return Some(Self::zero());
        };
        if deg % 2 == 1 {
            return None;
        }
        let n = deg / 2;
        let mut r = vec![C::zero(); n + 1];
        r[n] = self.coeffs[deg].try_sqrt()?;
        let two_lead = r[n].clone() + r[n].clone();
        for k in (0..n).rev() {
            // x^{n+k} coefficient of r² = 2·r_n·r_k + Σ_{i+j=n+k, k<i,j<n} r_i r_j
            let mut acc = self.coeffs[n + k].clone();
            for i in (k + 1)..n {
                let j = n + k - i;
                if j > k && j < n {
                    acc = acc - r[i].clone() * r[j].clone();
                }
            }
            r[k] = acc / two_lead.clone();
        }
        let root = Self::new(r);
        (root.mul(&root) == *self).then_some(root)
    }

    pub fn fmt_with(&self, var: char) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            parts.push(if m.is_empty() {
                c.to_string()
            } else if c.is_one() {
                m
            } else if (-c.clone()).is_one() {
                format!("-{m}")
            } else {
                format!("{c}*{m}")
            });
        }
        if parts.is_empty() {
            return "0".to_string();
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
        out
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with('x'))
    }
}

const PRIME: u64 = (1 << 31) - 1;

fn mod_p(q: &BigRational) -> Option<u64> {
    let reduce = |n: &BigInt| -> Option<u64> {
        match n.to_i64() {
            Some(v) => Some(v.rem_euclid(PRIME as i64) as u64),
            None => n.mod_floor(&BigInt::from(PRIME)).to_u64(),
        }
    };
    let n = reduce(q.numer())?;
    let d = reduce(q.denom())?;
    match d {
        0 => None,
        1 => Some(n),
        _ => Some(n * pow_mod(d, PRIME - 2) % PRIME),
    }
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

/// A certificate that two nonzero polynomials over `Q` are coprime: their
/// images mod a prime dividing neither leading coefficient are coprime, and
/// a common factor over `Q` would survive the reduction. `false` means
/// "unknown", not "not coprime".
fn coprime_mod_p<C: Scalar>(a: &[C], b: &[C]) -> bool {
    let reduce = |cs: &[C]| -> Option<Vec<u64>> { cs.iter().map(|c| mod_p(&c.to_exact()?)).collect() };
    let (Some(mut a), Some(mut b)) = (reduce(a), reduce(b)) else {
        return false;
    };
    if a.last() == Some(&0) || b.last() == Some(&0) {
        return false;
    }
    while !b.is_empty() {
        // a mod b
        let inv = pow_mod(*b.last().expect("nonempty"), PRIME - 2);
        while a.len() >= b.len() {
            let q = a.last().expect("nonempty") * inv % PRIME;
            let k = a.len() - b.len();
            for (j, c) in b.iter().enumerate() {
                a[k + j] = (a[k + j] + PRIME - q * c % PRIME) % PRIME;
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

/// Which order a rational function field carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RfOrdering {
    AtInfinity,
    AtZero,
}

impl fmt::Display for RfOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RfOrdering::AtInfinity => "ratfunc-inf",
            RfOrdering::AtZero => "ratfunc-zero",
        })
    }
}

/// `num / den` in lowest terms with a monic denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<C> {
    num: Polynomial<C>,
    den: Polynomial<C>,
    ordering: RfOrdering,
}

impl<C: Scalar> RationalFunction<C> {
    pub fn new(num: Polynomial<C>, den: Polynomial<C>, ordering: RfOrdering) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(ordering));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g)?.0, den.div_rem(&g)?.0)
        };
        let lead = den.leading().expect("nonzero").clone();
        let inv = C::one() / lead;
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv), ordering })
    }

    pub fn from_polynomial(p: Polynomial<C>, ordering: RfOrdering) -> Self {
        RationalFunction { num: p, den: Polynomial::constant(C::one()), ordering }
    }

    pub fn zero(ordering: RfOrdering) -> Self {
        Self::from_polynomial(Polynomial::zero(), ordering)
    }

    pub fn constant(c: C, ordering: RfOrdering) -> Self {
        Self::from_polynomial(Polynomial::constant(c), ordering)
    }

    pub fn x(ordering: RfOrdering) -> Self {
        Self::from_polynomial(Polynomial::x(), ordering)
    }

    pub fn num(&self) -> &Polynomial<C> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<C> {
        &self.den
    }

    pub fn ordering(&self) -> RfOrdering {
        self.ordering
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The same function viewed in the other ordered field.
    pub fn with_ordering(&self, ordering: RfOrdering) -> Self {
        RationalFunction { ordering, ..self.clone() }
    }

    fn check_mode(&self, other: &Self) -> Result<(), FieldError> {
        if self.ordering == other.ordering {
            Ok(())
        } else {
            Err(FieldError::ModeMismatch(self.ordering.to_string(), other.ordering.to_string()))
        }
    }

    // Both parts already coprime; only the denominator is made monic.
    fn from_coprime(num: Polynomial<C>, den: Polynomial<C>, ordering: RfOrdering) -> Result<Self, FieldError> {
        let lead = den.leading().ok_or(FieldError::DivisionByZero)?.clone();
        if num.is_zero() {
            return Ok(Self::zero(ordering));
        }
        if lead.is_one() {
            return Ok(RationalFunction { num, den, ordering });
        }
        let inv = C::one() / lead;
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv), ordering })
    }

    fn exact_quotient(p: &Polynomial<C>, g: &Polynomial<C>) -> Polynomial<C> {
        if g.degree() == Some(0) {
            return p.scale(&(C::one() / g.leading().expect("nonzero").clone()));
        }
        p.div_rem(g).expect("nonzero divisor").0
    }

    /// Sum of reduced fractions: `g = gcd(b, d)` is split off first, so the
    /// final reduction only involves `g`.
    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_mode(other)?;
        let g = self.den.gcd(&other.den);
        if g.degree() == Some(0) {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::from_coprime(num, self.den.mul(&other.den), self.ordering);
        }
        let b = Self::exact_quotient(&self.den, &g);
        let d = Self::exact_quotient(&other.den, &g);
        let num = self.num.mul(&d).add(&other.num.mul(&b));
        let den = b.mul(&other.den);
        if num.is_zero() {
            return Ok(Self::zero(self.ordering));
        }
        let h = num.gcd(&g);
        Self::from_coprime(Self::exact_quotient(&num, &h), Self::exact_quotient(&den, &h), self.ordering)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), ..self.clone() }
    }

    /// Product of reduced fractions with the cross cancellations
    /// `gcd(a, d)` and `gcd(c, b)` done before multiplying.
    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_mode(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ordering));
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = Self::exact_quotient(&self.num, &g1).mul(&Self::exact_quotient(&other.num, &g2));
        let den = Self::exact_quotient(&self.den, &g2).mul(&Self::exact_quotient(&other.den, &g1));
        Self::from_coprime(num, den, self.ordering)
    }

    pub fn recip(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Self::from_coprime(self.den.clone(), self.num.clone(), self.ordering)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_mode(other)?;
        self.try_mul(&other.recip()?)
    }

    pub fn powi(&self, n: i64) -> Result<Self, FieldError> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let mut num = Polynomial::constant(C::one());
        let mut den = Polynomial::constant(C::one());
        for _ in 0..n {
            num = num.mul(&self.num);
            den = den.mul(&self.den);
        }
        Self::new(num, den, self.ordering)
    }

    /// Sign for the order at infinity: sign of `lc(num)·lc(den)`.
    pub fn sign_at_infinity(&self) -> Ordering {
        match (self.num.leading(), self.den.leading()) {
            (Some(n), Some(d)) => sign_of(&(n.clone() * d.clone())),
            _ => Ordering::Equal,
        }
    }

    /// Sign for the order at zero: sign of the product of lowest coefficients.
    pub fn sign_at_zero(&self) -> Ordering {
        match (self.num.low_term(), self.den.low_term()) {
            (Some((_, n)), Some((_, d))) => sign_of(&(n.clone() * d.clone())),
            _ => Ordering::Equal,
        }
    }

    pub fn sign(&self) -> Ordering {
        match self.ordering {
            RfOrdering::AtInfinity => self.sign_at_infinity(),
            RfOrdering::AtZero => self.sign_at_zero(),
        }
    }

    /// `self` against `other` in the order at infinity, whatever the stored
    /// ordering tag.
    pub fn cmp_at_infinity(&self, other: &Self) -> Ordering {
        self.with_ordering(RfOrdering::AtInfinity)
            .try_sub(&other.with_ordering(RfOrdering::AtInfinity))
            .expect("same ordering")
            .sign_at_infinity()
    }

    pub fn cmp_at_zero(&self, other: &Self) -> Ordering {
        self.with_ordering(RfOrdering::AtZero)
            .try_sub(&other.with_ordering(RfOrdering::AtZero))
            .expect("same ordering")
            .sign_at_zero()
    }

    /// Comparison in the field's own order. Exact: never undecided.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError> {
        self.check_mode(other)?;
        // the sign of a quotient needs no reduction
        let diff = RationalFunction {
            num: self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
            ordering: self.ordering,
        };
        Ok(diff.sign())
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Order of magnitude sign: `Greater` for infinitesimal, `Equal` for
    /// appreciable, `Less` for infinitely large.
    fn magnitude(&self) -> Option<Ordering> {
        match self.ordering {
            RfOrdering::AtInfinity => {
                let n = self.num.degree()?;
                let d = self.den.degree()?;
                Some(d.cmp(&n))
            }
            RfOrdering::AtZero => {
                let (n, _) = self.num.low_term()?;
                let (d, _) = self.den.low_term()?;
                Some(n.cmp(&d))
            }
        }
    }

    pub fn classify(&self) -> Classification {
        match self.magnitude() {
            None => Classification::ZERO,
            Some(m) => Classification::from_magnitude(m),
        }
    }

    pub fn standard_part(&self) -> Result<C, FieldError> {
        match self.magnitude() {
            None | Some(Ordering::Greater) => Ok(C::zero()),
            Some(Ordering::Less) => Err(FieldError::NotFinite),
            Some(Ordering::Equal) => Ok(match self.ordering {
                RfOrdering::AtInfinity => {
                    self.num.leading().expect("nonzero").clone() / self.den.leading().expect("nonzero").clone()
                }
                RfOrdering::AtZero => {
                    let (_, n) = self.num.low_term().expect("nonzero");
                    let (_, d) = self.den.low_term().expect("nonzero");
                    n.clone() / d.clone()
                }
            }),
        }
    }

    /// Laurent expansion about 0, `depth` terms past the valuation. When the
    /// denominator is a monomial the expansion is finite and returned exact.
    pub fn laurent_at_zero(&self, depth: usize) -> GeneralizedSeries<C> {
        let mode = SeriesMode::Laurent;
        let (Some((i, _)), Some((j, d0))) = (self.num.low_term(), self.den.low_term()) else {
            return GeneralizedSeries::zero(mode);
        };
        let val = i as i64 - j as i64;
        let nu = self.num.shift_down(i);
        let du = self.den.shift_down(j);
        let d0 = d0.clone();
        if du.degree() == Some(0) {
            let terms = nu
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (Exponent::int(val + k as i64), c.clone() / d0.clone()));
            return GeneralizedSeries::from_terms(terms, ValuationValue::Infinity, mode)
                .expect("integer exponents");
        }
        // q_k = (n_k - Σ_{l=1..k} d_l q_{k-l}) / d_0
        let mut q: Vec<C> = Vec::with_capacity(depth);
        for k in 0..depth {
            let mut acc = nu.coeff(k);
            for l in 1..=k {
                acc = acc - du.coeff(l) * q[k - l].clone();
            }
            q.push(acc / d0.clone());
        }
        let terms = q.into_iter().enumerate().map(|(k, c)| (Exponent::int(val + k as i64), c));
        GeneralizedSeries::from_terms(terms, ValuationValue::Finite(Exponent::int(val + depth as i64)), mode)
            .expect("integer exponents")
    }

    /// `f(x) ↦ f(x²)`, an order-preserving embedding of the field into itself
    /// (for the order at infinity) whose image is the subfield `K(x²)`.
    pub fn sigma_square(&self) -> Self {
        Self::new(self.num.substitute_square(), self.den.substitute_square(), self.ordering)
            .expect("denominator stays nonzero")
    }

    /// `f(x) ↦ f(1/t)`, tagged with the opposite ordering.
    pub fn substitute_reciprocal(&self) -> Self {
        let target = match self.ordering {
            RfOrdering::AtInfinity => RfOrdering::AtZero,
            RfOrdering::AtZero => RfOrdering::AtInfinity,
        };
        if self.is_zero() {
            return Self::zero(target);
        }
        let dn = self.num.degree().expect("nonzero");
        let dd = self.den.degree().expect("nonzero");
        // f(1/t) = rev(num)·t^dd / (rev(den)·t^dn)
        let num = self.num.reversed().mul(&Polynomial::monomial(C::one(), dd));
        let den = self.den.reversed().mul(&Polynomial::monomial(C::one(), dn));
        Self::new(num, den, target).expect("reversed denominator is nonzero")
    }

    /// Positive square root when numerator and denominator are squares.
    pub fn sqrt(&self) -> Result<Self, FieldError> {
        if self.sign() == Ordering::Less {
            return Err(FieldError::NegativeSqrt);
        }
        let num = self.num.sqrt_exact().ok_or(FieldError::NoExactSqrt)?;
        let den = self.den.sqrt_exact().ok_or(FieldError::NoExactSqrt)?;
        let r = Self::new(num, den, self.ordering)?;
        Ok(r.abs())
    }

    fn var(&self) -> char {
        match self.ordering {
            RfOrdering::AtInfinity => 'x',
            RfOrdering::AtZero => 't',
        }
    }
}

impl<C: Scalar> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var();
        if self.den.degree() == Some(0) {
            return write!(f, "{}", self.num.fmt_with(v));
        }
        write!(f, "({})/({})", self.num.fmt_with(v), self.den.fmt_with(v))
    }
}
