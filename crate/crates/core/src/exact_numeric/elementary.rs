//! Certified enclosures of pi, sin, cos and ln.
//!
//! Series are summed in fixed point with an explicit ulp error budget: every
//! truncating division costs one ulp and previously accumulated error is
//! propagated through the recurrence. Results are rechecked against the
//! requested width and recomputed with more guard bits when they miss.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use parking_lot::Mutex;

use super::dyadic::DyadicInterval;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Guard bits added on top of the requested precision.
pub const GUARD_BITS: u32 = 8;

/// Fixed-point value `v / 2^bits` with an absolute error of at most `err` ulps.
#[derive(Clone, Debug)]
struct Fixed {
    v: BigInt,
    err: BigInt,
    bits: u32,
}

impl Fixed {
    fn interval(&self) -> DyadicInterval {
        DyadicInterval::from_scaled(&self.v - &self.err, &self.v + &self.err, self.bits)
    }
}

/// `sum_{j>=0} (-1)^j / ((2j+1) x^(2j+1))` in fixed point.
fn atan_inv(x: u32, bits: u32) -> Fixed {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << bits as usize) / &x;
    let mut sum = BigInt::zero();
    let mut err = BigInt::zero();
    let mut j: u32 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * j + 1);
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        // power carries <= 2 ulps, the division adds one more
        err += 3;
        power /= &x2;
        j += 1;
    }
    // alternating tail below the first vanished power
    err += 3;
    Fixed { v: sum, err, bits }
}

static PI_CACHE: Mutex<Option<(u32, BigInt, BigInt)>> = Mutex::new(None);

/// Fixed-point pi at `bits` fractional bits, `[lo, hi]` in ulps.
fn pi_scaled(bits: u32) -> (BigInt, BigInt) {
    {
        let cache = PI_CACHE.lock();
        if let Some((b, lo, hi)) = cache.as_ref() {
            // the cached value carries 16 guard bits of slack
            if *b >= bits + 16 {
                let shift = (b - bits) as usize;
                let den = BigInt::one() << shift;
                return (lo.div_floor(&den), hi.div_ceil(&den));
            }
        }
    }
    // refine on demand in 64-bit steps so neighbouring requests share work
    let work = (bits + 16).div_ceil(64) * 64;
    let a = atan_inv(5, work);
    let b = atan_inv(239, work);
    let v = BigInt::from(16) * &a.v - BigInt::from(4) * &b.v;
    let e = BigInt::from(16) * &a.err + BigInt::from(4) * &b.err;
    let (lo, hi) = (&v - &e, &v + &e);
    {
        let mut cache = PI_CACHE.lock();
        if cache.as_ref().is_none_or(|(b, _, _)| *b < work) {
            *cache = Some((work, lo.clone(), hi.clone()));
        }
    }
    let den = BigInt::one() << (work - bits) as usize;
    (lo.div_floor(&den), hi.div_ceil(&den))
}

/// Enclosure of pi of width at most `2^-bits`.
pub fn pi_enclosure(bits: u32) -> DyadicInterval {
    let (lo, hi) = pi_scaled(bits + 2);
    DyadicInterval::from_scaled(lo, hi, bits + 2)
}

/// Taylor sums of sin and cos at the exact fixed-point argument `x / 2^bits`, `|x| <= 4`.
fn sin_cos_taylor(x: &BigInt, bits: u32) -> (Fixed, Fixed) {
    let one = BigInt::one() << bits as usize;
    let x2 = x * x;
    let scale2 = BigInt::one() << (2 * bits) as usize;
    let run = |first: BigInt, start: u64| -> Fixed {
        let mut term = first;
        let mut term_err = BigInt::zero();
        let mut sum = term.clone();
        let mut err = BigInt::zero();
        let mut n = start;
        let mut sign_neg = false;
        loop {
            let den = &scale2 * BigInt::from((n + 1) * (n + 2));
            let next = (&term * &x2) / &den;
            let next_err = (&term_err * &x2).div_ceil(&den) + 1;
            n += 2;
            sign_neg = !sign_neg;
            if n >= 5 && next.abs() <= BigInt::one() {
                // terms decrease from here on; the alternating tail is below |next|
                err += next.abs() + &next_err;
                break;
            }
            if sign_neg {
                sum -= &next;
            } else {
                sum += &next;
            }
            err += &next_err;
            term = next;
            term_err = next_err;
        }
        Fixed { v: sum, err, bits }
    };
    (run(x.clone(), 1), run(one, 0))
}

/// Fixed-point enclosures of `(sin t, cos t)` with `bits` fractional bits of working precision.
fn sin_cos_fixed(t: &Rational, bits: u32) -> (DyadicInterval, DyadicInterval) {
    let tbits = rational::magnitude_bits(t) as u32;
    let pi_bits = bits + tbits + 4;
    let (pi_lo, pi_hi) = pi_scaled(pi_bits);
    let pi_lo_q = Rational::new(pi_lo, BigInt::one() << pi_bits as usize);
    let pi_hi_q = Rational::new(pi_hi, BigInt::one() << pi_bits as usize);
    // k = round(t / 2pi) from the lower pi bound; any integer keeps the reduction exact
    let two_pi_lo = &pi_lo_q * BigInt::from(2);
    let two_pi_hi = &pi_hi_q * BigInt::from(2);
    let k = (t / &two_pi_lo + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let kq = Rational::from_integer(k.clone());
    let (r_lo, r_hi) = if k.is_negative() {
        (t - &kq * &two_pi_lo, t - &kq * &two_pi_hi)
    } else {
        (t - &kq * &two_pi_hi, t - &kq * &two_pi_lo)
    };
    let lo_scaled = rational::floor_scaled(&r_lo, bits);
    let hi_scaled = rational::ceil_scaled(&r_hi, bits);
    let spread = &hi_scaled - &lo_scaled;
    let (s, c) = sin_cos_taylor(&lo_scaled, bits);
    // sin and cos are 1-Lipschitz across the reduced argument interval
    let widen = |f: Fixed| Fixed { err: f.err + &spread, ..f };
    (widen(s).interval(), widen(c).interval())
}

/// Enclosures of `sin t` and `cos t`, each of width at most `2^-prec_bits`.
pub fn enclose_sin_cos(t: &Rational, prec_bits: u32) -> (DyadicInterval, DyadicInterval) {
    let mut guard = GUARD_BITS;
    loop {
        let (s, c) = sin_cos_fixed(t, prec_bits + guard);
        if s.width_within(prec_bits) && c.width_within(prec_bits) {
            return (s, c);
        }
        guard *= 2;
    }
}

pub fn enclose_sin(t: &Rational, prec_bits: u32) -> DyadicInterval {
    enclose_sin_cos(t, prec_bits).0
}

pub fn enclose_cos(t: &Rational, prec_bits: u32) -> DyadicInterval {
    enclose_sin_cos(t, prec_bits).1
}

/// `2 atanh(y) = 2 sum y^(2j+1)/(2j+1)` for rational `|y| <= 1/3`.
fn two_atanh(y: &Rational, bits: u32) -> Fixed {
    let den_scale = BigInt::one() << (2 * bits) as usize;
    let yq = rational::floor_scaled(y, bits);
    let y2 = &yq * &yq;
    let mut power = yq;
    let mut power_err = BigInt::one();
    let mut sum = BigInt::zero();
    let mut err = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        if power.abs() <= BigInt::one() {
            // geometric tail with ratio <= 1/9
            err += BigInt::from(2) * (power.abs() + &power_err);
            break;
        }
        sum += &power / BigInt::from(2 * j + 1);
        err += &power_err + 1;
        power = (&power * &y2) / &den_scale;
        // propagated error shrinks by y^2 <= 1/9; the representation error of y adds < 1 ulp
        power_err = &power_err + 2;
        j += 1;
    }
    Fixed { v: sum * 2, err: err * 2, bits }
}

fn ln_fixed(q: &Rational, bits: u32) -> DyadicInterval {
    // q = 2^k m with m in (1/2, 1]
    let mut k = q.numer().bits() as i64 - q.denom().bits() as i64;
    let mut m = q / rational::pow2(k);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    while m > Rational::one() {
        k += 1;
        m /= BigInt::from(2);
    }
    while m <= half {
        k -= 1;
        m *= BigInt::from(2);
    }
    let one = Rational::one();
    let y = (&m - &one) / (&m + &one);
    let kbits = if k == 0 { 0 } else { 64 - k.unsigned_abs().leading_zeros() };
    let work = bits + kbits + 2;
    let lm = two_atanh(&y, work);
    let mut v = lm.v;
    let mut err = lm.err;
    if k != 0 {
        let l2 = two_atanh(&Rational::new(BigInt::one(), BigInt::from(3)), work);
        v += &l2.v * BigInt::from(k);
        err += &l2.err * BigInt::from(k.unsigned_abs());
    }
    Fixed { v, err, bits: work }.interval()
}

/// Enclosure of `ln q` of width at most `2^-prec_bits`; `q` must be positive.
pub fn enclose_ln(q: &Rational, prec_bits: u32) -> Result<DyadicInterval> {
    if !q.is_positive() {
        return Err(Error::domain(format!("ln of non-positive {}", rational::fraction_string(q))));
    }
    let mut guard = GUARD_BITS;
    loop {
        let iv = ln_fixed(q, prec_bits + guard);
        if iv.width_within(prec_bits) {
            return Ok(iv);
        }
        guard *= 2;
    }
}
