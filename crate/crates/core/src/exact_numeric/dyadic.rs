//! Exact dyadic rationals `m * 2^e` and closed intervals with dyadic endpoints.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// `mantissa * 2^exponent`, normalized so the mantissa is odd (or zero with exponent 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            return Dyadic { mantissa, exponent };
        }
        Dyadic {
            mantissa: mantissa >> tz as usize,
            exponent: exponent + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    /// `2^exp`.
    pub fn pow2(exp: i64) -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: exp }
    }

    /// Fixed-point value `numer / 2^bits`.
    pub fn from_scaled(numer: BigInt, bits: u32) -> Self {
        Self::new(numer, -(bits as i64))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    pub fn to_rational(&self) -> Rational {
        let m = Rational::from_integer(self.mantissa.clone());
        m * rational::pow2(self.exponent)
    }

    /// Exact conversion; fails unless the denominator is a power of two.
    pub fn try_from_rational(q: &Rational) -> Result<Self> {
        if !rational::is_dyadic(q) {
            return Err(Error::parse(format!("{} is not a dyadic rational", rational::fraction_string(q))));
        }
        let tz = q.denom().trailing_zeros().unwrap_or(0);
        Ok(Self::new(q.numer().clone(), -(tz as i64)))
    }

    /// Largest multiple of `2^-bits` that is `<= q`.
    pub fn floor_of(q: &Rational, bits: u32) -> Self {
        Self::from_scaled(rational::floor_scaled(q, bits), bits)
    }

    /// Smallest multiple of `2^-bits` that is `>= q`.
    pub fn ceil_of(q: &Rational, bits: u32) -> Self {
        Self::from_scaled(rational::ceil_scaled(q, bits), bits)
    }

    /// Rounds down onto the grid `2^-bits` (exact when already on it).
    pub fn floor_to(&self, bits: u32) -> Self {
        let min_exp = -(bits as i64);
        if self.exponent >= min_exp {
            return self.clone();
        }
        let shift = (min_exp - self.exponent) as usize;
        Self::new(self.mantissa.div_floor(&(BigInt::one() << shift)), min_exp)
    }

    pub fn ceil_to(&self, bits: u32) -> Self {
        let min_exp = -(bits as i64);
        if self.exponent >= min_exp {
            return self.clone();
        }
        let shift = (min_exp - self.exponent) as usize;
        Self::new(self.mantissa.div_ceil(&(BigInt::one() << shift)), min_exp)
    }

    /// Half of the value, always exact.
    pub fn half(&self) -> Self {
        Self::new(self.mantissa.clone(), self.exponent - 1)
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.to_rational())
    }

    /// Finite decimal expansion (every dyadic has one).
    pub fn to_decimal(&self) -> String {
        rational::dyadic_to_decimal(&self.to_rational()).unwrap_or_default()
    }

    pub fn parse_decimal(text: &str) -> Result<Self> {
        Self::try_from_rational(&rational::parse_rational(text)?)
    }

    /// `floor(log2 |x|)` for non-zero values.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mantissa.bits() as i64 - 1 + self.exponent)
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &other.mantissa << (other.exponent - e) as usize;
        (a, b, e)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }
}

/// The four interval operations of [`interval_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Closed interval `[lo, hi]` with exact dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo > hi {
            return Err(Error::validation(format!("interval endpoints out of order: [{lo}, {hi}]")));
        }
        Ok(DyadicInterval { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "[{lo}, {hi}]");
        DyadicInterval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        DyadicInterval { lo: d.clone(), hi: d }
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(Dyadic::from_int(v))
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    /// Fixed-point enclosure `[lo, hi] / 2^bits`.
    pub fn from_scaled(lo: BigInt, hi: BigInt, bits: u32) -> Self {
        Self::new_unchecked(Dyadic::from_scaled(lo, bits), Dyadic::from_scaled(hi, bits))
    }

    /// Narrowest enclosure of `q` on the grid `2^-bits` (a point when `q` is on the grid).
    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        Self::new_unchecked(Dyadic::floor_of(q, bits), Dyadic::ceil_of(q, bits))
    }

    /// Encloses `[lo, hi]` given as rationals, rounding outward to `2^-bits`.
    pub fn from_rational_bounds(lo: &Rational, hi: &Rational, bits: u32) -> Self {
        Self::new_unchecked(Dyadic::floor_of(lo, bits), Dyadic::ceil_of(hi, bits))
    }

    /// `center ± radius`.
    pub fn ball(center: &Dyadic, radius: &Dyadic) -> Self {
        let r = radius.abs();
        Self::new_unchecked(center - &r, center + &r)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Dyadic {
        (&self.lo + &self.hi).half()
    }

    /// True when the width is at most `2^-bits`.
    pub fn width_within(&self, bits: u32) -> bool {
        self.width() <= Dyadic::pow2(-(bits as i64))
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        (self.lo.is_negative() || self.lo.is_zero()) && !self.hi.is_negative()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then(|| Self::new_unchecked(lo, hi))
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self::new_unchecked((&self.lo).min(&other.lo).clone(), (&self.hi).max(&other.hi).clone())
    }

    /// Strictly positive everywhere.
    pub fn is_positive(&self) -> bool {
        !self.lo.is_negative() && !self.lo.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// `{|x| : x in self}`.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if self.hi.is_negative() || self.hi.is_zero() {
            -self
        } else {
            let top = (&self.hi).max(&self.lo.abs()).clone();
            Self::new_unchecked(Dyadic::zero(), top)
        }
    }

    /// `max |x|` over the interval.
    pub fn mag(&self) -> Dyadic {
        (&self.lo.abs()).max(&self.hi.abs()).clone()
    }

    /// Outward rounding of both endpoints onto `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Self {
        Self::new_unchecked(self.lo.floor_to(bits), self.hi.ceil_to(bits))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self * &DyadicInterval::from_int(k)
    }

    /// Product with an exact rational, rounded outward to `2^-bits`.
    pub fn mul_rational(&self, q: &Rational, bits: u32) -> Self {
        let a = self.lo.to_rational() * q;
        let b = self.hi.to_rational() * q;
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Self::from_rational_bounds(&lo, &hi, bits)
    }

    /// Quotient rounded outward to `2^-bits`; the divisor must exclude zero.
    pub fn div(&self, other: &Self, bits: u32) -> Result<Self> {
        if other.contains_zero() {
            return Err(Error::domain(format!("division by an interval containing zero: [{}, {}]", other.lo, other.hi)));
        }
        let (a0, a1) = (self.lo.to_rational(), self.hi.to_rational());
        let (b0, b1) = (other.lo.to_rational(), other.hi.to_rational());
        let cands = [&a0 / &b0, &a0 / &b1, &a1 / &b0, &a1 / &b1];
        let lo = cands.iter().min().cloned().unwrap_or_default();
        let hi = cands.iter().max().cloned().unwrap_or_default();
        Ok(Self::from_rational_bounds(&lo, &hi, bits))
    }

    pub fn square(&self) -> Self {
        let a = self.abs();
        &a * &a
    }

    pub fn to_json(&self, bits: u32) -> IntervalJson {
        IntervalJson { lo: self.lo.to_decimal(), hi: self.hi.to_decimal(), bits }
    }

    pub fn from_json(j: &IntervalJson) -> Result<Self> {
        Self::new(Dyadic::parse_decimal(&j.lo)?, Dyadic::parse_decimal(&j.hi)?)
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &DyadicInterval {
    type Output = DyadicInterval;
    fn add(self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval::new_unchecked(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &DyadicInterval {
    type Output = DyadicInterval;
    fn sub(self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval::new_unchecked(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Mul for &DyadicInterval {
    type Output = DyadicInterval;
    fn mul(self, rhs: &DyadicInterval) -> DyadicInterval {
        if self.is_point() && rhs.is_point() {
            return DyadicInterval::point(&self.lo * &rhs.lo);
        }
        let c = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = c.iter().min().cloned().unwrap_or_else(Dyadic::zero);
        let hi = c.iter().max().cloned().unwrap_or_else(Dyadic::zero);
        DyadicInterval::new_unchecked(lo, hi)
    }
}

impl Neg for &DyadicInterval {
    type Output = DyadicInterval;
    fn neg(self) -> DyadicInterval {
        DyadicInterval::new_unchecked(-&self.hi, -&self.lo)
    }
}

/// `a op b`. Sums, differences and products are exact; quotients round outward to `2^-bits`.
pub fn interval_arith(a: &DyadicInterval, b: &DyadicInterval, op: ArithOp, bits: u32) -> Result<DyadicInterval> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.div(b, bits)?,
    })
}

/// Wire form `{lo, hi, bits}` with exact decimal endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub lo: String,
    pub hi: String,
    pub bits: u32,
}

impl Serialize for DyadicInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let bits = (-self.lo.exponent().min(self.hi.exponent())).max(0) as u32;
        self.to_json(bits).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DyadicInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = IntervalJson::deserialize(d)?;
        DyadicInterval::from_json(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_numeric::rational::{int, rat};

    fn iv(lo: i64, hi: i64) -> DyadicInterval {
        DyadicInterval::new(Dyadic::from_int(lo), Dyadic::from_int(hi)).unwrap()
    }

    #[test]
    fn trivial_interval_examples() {
        assert_eq!(interval_arith(&iv(1, 1), &iv(2, 2), ArithOp::Add, 10).unwrap(), iv(3, 3));
        assert_eq!(interval_arith(&iv(0, 0), &iv(-5, 7), ArithOp::Mul, 10).unwrap(), iv(0, 0));
        let q = interval_arith(&iv(1, 2), &iv(4, 4), ArithOp::Div, 10).unwrap();
        assert_eq!(q.lo().to_rational(), rat(1, 4));
        assert_eq!(q.hi().to_rational(), rat(1, 2));
    }

    #[test]
    fn division_by_zero_interval_is_domain_error() {
        let e = interval_arith(&iv(1, 2), &iv(-1, 1), ArithOp::Div, 10).unwrap_err();
        assert!(matches!(e, Error::Domain(_)));
        assert!(iv(1, 2).div(&iv(0, 3), 10).is_err());
    }

    #[test]
    fn dyadic_normalizes_and_orders() {
        let a = Dyadic::new(BigInt::from(12), -4);
        assert_eq!(a, Dyadic::new(BigInt::from(3), -2));
        assert_eq!(a.to_rational(), rat(3, 4));
        assert!(Dyadic::from_int(-1) < a);
        assert_eq!(Dyadic::floor_of(&rat(1, 3), 4).to_rational(), rat(5, 16));
        assert_eq!(Dyadic::ceil_of(&rat(1, 3), 4).to_rational(), rat(6, 16));
        assert_eq!(Dyadic::floor_of(&rat(-1, 3), 4).to_rational(), rat(-6, 16));
        assert_eq!(Dyadic::from_int(5).log2_floor(), Some(2));
    }

    #[test]
    fn abs_and_zero_membership() {
        assert_eq!(iv(-3, 2).abs(), iv(0, 3));
        assert_eq!(iv(-3, -2).abs(), iv(2, 3));
        assert!(iv(-3, 2).contains_zero());
        assert!(iv(0, 2).contains_zero());
        assert!(!iv(1, 2).contains_zero());
        assert!(iv(-2, 0).contains_zero());
        assert_eq!(iv(-3, 5).mag(), Dyadic::from_int(5));
    }

    #[test]
    fn json_form_is_exact() {
        let a = DyadicInterval::from_rational_bounds(&rat(-1, 3), &rat(7, 5), 20);
        let text = serde_json::to_string(&a).unwrap();
        let back: DyadicInterval = serde_json::from_str(&text).unwrap();
        assert_eq!(a, back);
        assert!(DyadicInterval::from_json(&IntervalJson { lo: "1".into(), hi: "0".into(), bits: 1 }).is_err());
        assert!(a.contains_rational(&int(1)));
    }
}
