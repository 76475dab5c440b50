//! Exact rationals and their textual forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `2^exp` for any signed exponent.
pub fn pow2(exp: i64) -> Rational {
    let mag = BigInt::one() << exp.unsigned_abs();
    if exp >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Parses `"a/b"`, integers, and finite decimals such as `"-0.125"` or `"6.2832"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse("empty rational"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(Error::parse(format!("bad number {s:?}")));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::parse(format!("bad number {s:?}")));
    }
    let digits = format!("{whole}{frac}");
    let mag: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| Error::parse(s.to_string()))? };
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(mag, scale);
    Ok(if neg { -value } else { value })
}

/// True when the denominator is a power of two.
pub fn is_dyadic(q: &Rational) -> bool {
    let d = q.denom();
    d.is_one() || (d.trailing_zeros().map(|tz| (d >> tz).is_one()).unwrap_or(false))
}

/// Exact decimal expansion of a dyadic rational; `None` for other rationals.
pub fn dyadic_to_decimal(q: &Rational) -> Option<String> {
    if !is_dyadic(q) {
        return None;
    }
    let tz = q.denom().trailing_zeros().unwrap_or(0) as usize;
    let numer = q.numer().abs();
    if tz == 0 {
        let s = numer.to_string();
        return Some(if q.is_negative() { format!("-{s}") } else { s });
    }
    // m / 2^tz = m * 5^tz / 10^tz
    let scaled = numer * num_traits::pow(BigInt::from(5), tz);
    let mut digits = scaled.to_string();
    if digits.len() <= tz {
        digits = format!("{}{}", "0".repeat(tz + 1 - digits.len()), digits);
    }
    let split = digits.len() - tz;
    let (whole, frac) = digits.split_at(split);
    let frac = frac.trim_end_matches('0');
    let mut out = String::new();
    if q.is_negative() {
        out.push('-');
    }
    out.push_str(whole);
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    Some(out)
}

/// `a/b` form, or a plain integer.
pub fn fraction_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Number of bits of `|q|` rounded up to an integer: `2^(bits-1) <= ceil|q| < 2^bits`.
pub fn magnitude_bits(q: &Rational) -> u64 {
    let c = ceil_abs(q);
    c.bits()
}

pub fn ceil_abs(q: &Rational) -> BigInt {
    let (n, d) = (q.numer().abs(), q.denom().clone());
    n.div_ceil(&d)
}

pub fn floor_scaled(q: &Rational, bits: u32) -> BigInt {
    let n = q.numer() << bits as usize;
    n.div_floor(q.denom())
}

pub fn ceil_scaled(q: &Rational, bits: u32) -> BigInt {
    let n = q.numer() << bits as usize;
    n.div_ceil(q.denom())
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}
