//! Probability values in exact (rational) or float arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::alphabet::Domain;
use crate::error::{Error, Result};

/// Normalization slack for float-mode distributions.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Arithmetic regime of a value or container.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    /// Mixing an exact and a float operand downgrades to float.
    pub fn combine(self, other: Mode) -> Mode {
        if self == Mode::Exact && other == Mode::Exact {
            Mode::Exact
        } else {
            Mode::Float
        }
    }
}

/// A probability (or an intermediate product/sum of probabilities).
///
/// Binary operations on two exact values stay exact; any float operand
/// promotes the result to float, which is how precision downgrades surface
/// in the `mode()` of every container built from these values.
#[derive(Debug, Clone)]
pub enum Prob {
    Exact(BigRational),
    Float(f64),
}

impl Prob {
    pub fn zero() -> Self {
        Prob::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Prob::Exact(BigRational::one())
    }

    /// `numer / denom` as an exact value. Panics when `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Prob::Exact(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn float(v: f64) -> Self {
        Prob::Float(v)
    }

    pub fn mode(&self) -> Mode {
        match self {
            Prob::Exact(_) => Mode::Exact,
            Prob::Float(_) => Mode::Float,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Prob::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Prob::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Prob::Float(v) => *v,
        }
    }

    pub fn to_float(&self) -> Prob {
        Prob::Float(self.to_f64())
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Prob::Exact(r) => Some(r),
            Prob::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Prob::Exact(r) => r.is_zero(),
            Prob::Float(v) => *v == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Prob::Exact(r) => r.is_negative(),
            Prob::Float(v) => *v < 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Prob::Exact(r) => r.is_one(),
            Prob::Float(v) => *v == 1.0,
        }
    }

    /// Equality that is exact for two exact operands and `|a - b| <= tol` otherwise.
    pub fn close_to(&self, other: &Prob, tol: f64) -> bool {
        match (self, other) {
            (Prob::Exact(a), Prob::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }

    /// `log2(self / other)`, with the quotient formed exactly when possible.
    pub fn log2_ratio(&self, other: &Prob) -> f64 {
        match (self, other) {
            (Prob::Exact(a), Prob::Exact(b)) => (a / b).to_f64().unwrap_or(f64::NAN).log2(),
            _ => (self.to_f64() / other.to_f64()).log2(),
        }
    }

    /// Parses `"1/4"`, `"0.25"`, `"2.5e-1"` or `"1"`. Exact mode keeps decimals as
    /// exact decimal fractions; float mode parses to `f64`.
    pub fn parse(text: &str, mode: Mode) -> Result<Prob> {
        let t = text.trim();
        let bad = || Error::Format(format!("cannot parse probability `{text}`"));
        if mode == Mode::Float {
            if let Some((n, d)) = t.split_once('/') {
                let n: f64 = n.trim().parse().map_err(|_| bad())?;
                let d: f64 = d.trim().parse().map_err(|_| bad())?;
                return Ok(Prob::Float(n / d));
            }
            return t.parse::<f64>().map(Prob::Float).map_err(|_| bad());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Prob::Exact(BigRational::new(n, d)));
        }
        parse_decimal(t).map(Prob::Exact).ok_or_else(bad)
    }

    /// Checks `0 <= value <= 1`.
    pub fn check_unit(&self) -> Result<()> {
        let ok = match self {
            Prob::Exact(r) => !r.is_negative() && *r <= BigRational::one(),
            Prob::Float(v) => *v >= 0.0 && *v <= 1.0 + NORMALIZATION_TOLERANCE,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Distribution(format!("probability {self} outside [0, 1]")))
        }
    }
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(p) => (&t[..p], t[p + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    if neg {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

macro_rules! prob_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<'a> $tr<&'a Prob> for &'a Prob {
            type Output = Prob;
            fn $method(self, rhs: &'a Prob) -> Prob {
                match (self, rhs) {
                    (Prob::Exact(a), Prob::Exact(b)) => Prob::Exact(a $op b),
                    _ => Prob::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }

        impl $tr<Prob> for Prob {
            type Output = Prob;
            fn $method(self, rhs: Prob) -> Prob {
                (&self).$method(&rhs)
            }
        }
    };
}

prob_binop!(Add, add, +);
prob_binop!(Sub, sub, -);
prob_binop!(Mul, mul, *);
prob_binop!(Div, div, /);

impl PartialEq for Prob {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Prob::Exact(a), Prob::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Prob {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Prob::Exact(a), Prob::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

/// Sums exact `(bin, value)` pairs into `len` bins over a shared machine-word
/// denominator. Returns `None` when an entry is a float or the numbers leave
/// 64-bit range, in which case callers use plain `Prob` addition.
pub(crate) fn bin_small_exact(len: usize, items: &[(usize, &Prob)]) -> Option<Vec<Prob>> {
    let mut parts = Vec::with_capacity(items.len());
    let mut denom: u64 = 1;
    for (k, p) in items {
        let r = p.as_exact()?;
        let (n, d) = (r.numer().to_i64()?, r.denom().to_u64()?);
        let g = gcd(denom, d);
        denom = denom.checked_mul(d / g)?;
        if denom > i64::MAX as u64 {
            return None;
        }
        parts.push((*k, n, d));
    }
    let mut sums = vec![0i128; len];
    for (k, n, d) in parts {
        let scaled = (n as i128).checked_mul((denom / d) as i128)?;
        sums[k] = sums[k].checked_add(scaled)?;
    }
    let d = BigInt::from(denom);
    Some(
        sums.into_iter()
            .map(|s| Prob::Exact(BigRational::new(BigInt::from(s), d.clone())))
            .collect(),
    )
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl<'a> std::iter::Sum<&'a Prob> for Prob {
    fn sum<I: Iterator<Item = &'a Prob>>(iter: I) -> Prob {
        iter.fold(Prob::zero(), |acc, p| &acc + p)
    }
}

impl std::iter::Sum<Prob> for Prob {
    fn sum<I: Iterator<Item = Prob>>(iter: I) -> Prob {
        iter.fold(Prob::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prob::Exact(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Prob::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Prob::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Container mode: exact only when every entry is exact.
pub fn mode_of<'a>(values: impl IntoIterator<Item = &'a Prob>) -> Mode {
    values.into_iter().fold(Mode::Exact, |m, p| m.combine(p.mode()))
}

/// Checks a normalized probability vector: entries in `[0, 1]` and the total
/// equal to one, exactly in exact mode or within [`NORMALIZATION_TOLERANCE`].
pub fn check_normalized(values: &[Prob]) -> Result<()> {
    for p in values {
        p.check_unit()?;
    }
    let total: Prob = values.iter().sum();
    let ok = match (&total, mode_of(values)) {
        (Prob::Exact(t), Mode::Exact) => t.is_one(),
        _ => (total.to_f64() - 1.0).abs() <= NORMALIZATION_TOLERANCE,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Distribution(format!("probabilities sum to {total}, not 1")))
    }
}

/// A probability mass function over a (possibly joined) domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    domain: Domain,
    probs: Vec<Prob>,
}

impl Pmf {
    pub fn new(domain: Domain, probs: Vec<Prob>) -> Result<Self> {
        if probs.len() != domain.len() {
            return Err(Error::Shape(format!(
                "pmf over {domain} needs {} entries, got {}",
                domain.len(),
                probs.len()
            )));
        }
        check_normalized(&probs)?;
        Ok(Pmf { domain, probs })
    }

    pub fn uniform(domain: Domain) -> Self {
        let n = domain.len() as i64;
        let probs = vec![Prob::ratio(1, n); n as usize];
        Pmf { domain, probs }
    }

    /// Unchecked constructor for values produced by already-validated arithmetic.
    pub(crate) fn from_parts(domain: Domain, probs: Vec<Prob>) -> Self {
        Pmf { domain, probs }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn probs(&self) -> &[Prob] {
        &self.probs
    }

    pub fn prob(&self, k: usize) -> &Prob {
        &self.probs[k]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn mode(&self) -> Mode {
        mode_of(&self.probs)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.probs.iter().map(Prob::to_f64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Prob::ratio(1, 3);
        let b = Prob::ratio(1, 6);
        assert_eq!(&a + &b, Prob::ratio(1, 2));
        assert!((&a * &b).is_exact());
    }

    #[test]
    fn mixed_arithmetic_promotes_to_float() {
        let a = Prob::ratio(1, 4);
        let b = Prob::float(0.25);
        let c = &a + &b;
        assert_eq!(c.mode(), Mode::Float);
        assert_eq!(c.to_f64(), 0.5);
        assert_eq!(Mode::Exact.combine(Mode::Float), Mode::Float);
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(Prob::parse("1/4", Mode::Exact).unwrap(), Prob::ratio(1, 4));
        assert_eq!(Prob::parse("0.125", Mode::Exact).unwrap(), Prob::ratio(1, 8));
        assert_eq!(Prob::parse("2.5e-1", Mode::Exact).unwrap(), Prob::ratio(1, 4));
        assert_eq!(Prob::parse("1", Mode::Exact).unwrap(), Prob::one());
        assert_eq!(Prob::parse("0.1", Mode::Float).unwrap().mode(), Mode::Float);
        assert!(Prob::parse("abc", Mode::Exact).is_err());
        assert!(Prob::parse("1/0", Mode::Exact).is_err());
    }

    #[test]
    fn normalization_is_exact_in_exact_mode() {
        let ok = vec![Prob::ratio(1, 3), Prob::ratio(2, 3)];
        assert!(check_normalized(&ok).is_ok());
        let off = vec![Prob::ratio(1, 3), Prob::ratio(2, 3) + Prob::ratio(1, 1_000_000_000_000)];
        assert!(check_normalized(&off).is_err());
        let float = vec![Prob::float(0.1), Prob::float(0.2), Prob::float(0.7)];
        assert!(check_normalized(&float).is_ok());
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(check_normalized(&[Prob::ratio(3, 2), Prob::ratio(-1, 2)]).is_err());
    }

    #[test]
    fn binned_sums_match_rational_addition() {
        let ps = [Prob::ratio(1, 3), Prob::ratio(1, 6), Prob::ratio(2, 7), Prob::ratio(5, 42)];
        let items: Vec<(usize, &Prob)> = ps.iter().enumerate().map(|(k, p)| (k % 2, p)).collect();
        let fast = bin_small_exact(3, &items).unwrap();
        assert_eq!(fast[0], &ps[0] + &ps[2]);
        assert_eq!(fast[1], &ps[1] + &ps[3]);
        assert!(fast[2].is_zero());

        let huge = Prob::Exact(BigRational::new(BigInt::one(), BigInt::from(u64::MAX)));
        assert!(bin_small_exact(1, &[(0, &huge)]).is_none());
        assert!(bin_small_exact(1, &[(0, &Prob::Float(0.5))]).is_none());
    }
}
