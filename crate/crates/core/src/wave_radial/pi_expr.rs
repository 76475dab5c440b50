use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_numeric::rational::{self, Rational};
use crate::exact_numeric::{pi_enclosure, DyadicInterval};

/// `c_0 + c_1 pi + c_2 pi^2 + ...` with rational coefficients.
///
/// Since `pi` is transcendental, such an expression is zero only when every
/// coefficient is, so equality is exact and signs are decided by refining `pi`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiExpr {
    coeffs: Vec<Rational>,
}

impl PiExpr {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PiExpr { coeffs }
    }

    pub fn zero() -> Self {
        PiExpr::default()
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(vec![q])
    }

    pub fn int(v: i64) -> Self {
        Self::rational(rational::int(v))
    }

    /// `q pi^k`.
    pub fn pi_term(q: Rational, k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = q;
        Self::new(c)
    }

    pub fn pi() -> Self {
        Self::pi_term(rational::int(1), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The value when no power of `pi` occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &PiExpr) -> PiExpr {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn neg(&self) -> PiExpr {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &PiExpr) -> PiExpr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PiExpr) -> PiExpr {
        if self.is_zero() || other.is_zero() {
            return PiExpr::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, q: &Rational) -> PiExpr {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Enclosure of width at most `2^-prec_bits`.
    pub fn enclose(&self, prec_bits: u32) -> DyadicInterval {
        if let Some(q) = self.as_rational() {
            return DyadicInterval::from_rational(&q, prec_bits + 1);
        }
        let mut guard = 8 + 4 * self.coeffs.len() as u32;
        loop {
            let w = prec_bits + guard;
            let pi = pi_enclosure(w);
            let mut acc = DyadicInterval::zero();
            for c in self.coeffs.iter().rev() {
                acc = (&(&acc * &pi) + &DyadicInterval::from_rational(c, w)).round_outward(w);
            }
            if acc.width_within(prec_bits) {
                return acc;
            }
            guard *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * std::f64::consts::PI + rational::to_f64(c))
    }

    /// Sign, decided by refining until the enclosure excludes zero.
    pub fn signum(&self) -> Ordering {
        if let Some(q) = self.as_rational() {
            return q.cmp(&Rational::zero());
        }
        let mut bits = 16;
        loop {
            let e = self.enclose(bits);
            if e.is_positive() {
                return Ordering::Greater;
            }
            if e.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    pub fn cmp_value(&self, other: &PiExpr) -> Ordering {
        self.sub(other).signum()
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        self.sub(&PiExpr::rational(q.clone())).signum()
    }

    /// Parses sums of terms like `3/2`, `pi`, `-3/2 pi`, `16*pi^4`, `0.25pi^2`.
    pub fn parse(text: &str) -> Result<PiExpr> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse("empty expression"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'^' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut total = PiExpr::zero();
        for term in terms {
            total = total.add(&parse_term(term).ok_or_else(|| Error::parse(format!("bad term `{term}` in `{text}`")))?);
        }
        Ok(total)
    }
}

fn parse_term(term: &str) -> Option<PiExpr> {
    let (sign, body) = match term.as_bytes().first()? {
        b'-' => (-1, &term[1..]),
        b'+' => (1, &term[1..]),
        _ => (1, term),
    };
    let (factor, power) = match body.find("pi") {
        None => (body, 0),
        Some(at) => {
            let rest = &body[at + 2..];
            let power = match rest.strip_prefix('^') {
                Some(p) => p.parse::<usize>().ok()?,
                None if rest.is_empty() => 1,
                None => return None,
            };
            (body[..at].strip_suffix('*').unwrap_or(&body[..at]), power)
        }
    };
    let q = if factor.is_empty() { rational::int(1) } else { rational::parse_rational(factor).ok()? };
    Some(PiExpr::pi_term(q * rational::int(sign), power))
}

impl fmt::Display for PiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = rational::fraction_string(&c.abs());
            match k {
                0 => f.write_str(&mag)?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag} ")?;
                    }
                    f.write_str("pi")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for PiExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PiExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        PiExpr::parse(&text).map_err(serde::de::Error::custom)
    }
}
