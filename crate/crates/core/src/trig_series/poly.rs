use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::coeff::Coeff;
use crate::error::{Error, Result};
use crate::exact_numeric::rational::{self, Rational};
use crate::exact_numeric::{enclose_sin_cos, Dyadic, DyadicInterval, IntervalJson};

/// `a_0/2 + sum_{k=1}^{M} (a_k cos kt + b_k sin kt)`.
///
/// `cos` holds `a_0..=a_M` and `sin` holds `b_1..=b_M`, so `sin[k-1]` is `b_k`.
#[derive(Clone, Debug)]
pub struct TrigPoly {
    cos: Vec<Coeff>,
    sin: Vec<Coeff>,
}

impl TrigPoly {
    pub fn new(cos: Vec<Coeff>, sin: Vec<Coeff>) -> Result<Self> {
        if cos.is_empty() || cos.len() != sin.len() + 1 {
            return Err(Error::validation(format!(
                "degree mismatch: {} cosine and {} sine coefficients (need M+1 and M)",
                cos.len(),
                sin.len()
            )));
        }
        Ok(TrigPoly { cos, sin })
    }

    pub fn zero(degree: usize) -> Self {
        TrigPoly { cos: vec![Coeff::zero(); degree + 1], sin: vec![Coeff::zero(); degree] }
    }

    pub fn from_rationals(cos: &[Rational], sin: &[Rational]) -> Result<Self> {
        Self::new(cos.iter().cloned().map(Coeff::from).collect(), sin.iter().cloned().map(Coeff::from).collect())
    }

    /// The constant function `c` (stored as `a_0 = 2c`).
    pub fn constant(c: Rational) -> Self {
        TrigPoly { cos: vec![Coeff::exact(c * BigInt::from(2))], sin: vec![] }
    }

    /// `c sin(kt)`, `k >= 1`.
    pub fn sine(k: usize, c: impl Into<Coeff>) -> Self {
        assert!(k >= 1);
        let mut p = Self::zero(k);
        p.sin[k - 1] = c.into();
        p
    }

    /// `c cos(kt)`, `k >= 1`.
    pub fn cosine(k: usize, c: impl Into<Coeff>) -> Self {
        assert!(k >= 1);
        let mut p = Self::zero(k);
        p.cos[k] = c.into();
        p
    }

    pub fn degree(&self) -> usize {
        self.sin.len()
    }

    pub fn cos_coeffs(&self) -> &[Coeff] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[Coeff] {
        &self.sin
    }

    /// `a_k`, zero beyond the degree.
    pub fn a(&self, k: usize) -> Coeff {
        self.cos.get(k).cloned().unwrap_or_else(Coeff::zero)
    }

    /// `b_k` for `k >= 1`, zero beyond the degree.
    pub fn b(&self, k: usize) -> Coeff {
        if k == 0 {
            return Coeff::zero();
        }
        self.sin.get(k - 1).cloned().unwrap_or_else(Coeff::zero)
    }

    fn zip(&self, other: &TrigPoly, f: impl Fn(&Coeff, &Coeff) -> Coeff) -> TrigPoly {
        let m = self.degree().max(other.degree());
        let cos = (0..=m).map(|k| f(&self.a(k), &other.a(k))).collect();
        let sin = (1..=m).map(|k| f(&self.b(k), &other.b(k))).collect();
        TrigPoly { cos, sin }
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        self.zip(other, Coeff::add)
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        self.zip(other, Coeff::sub)
    }

    pub fn scale(&self, q: &Rational) -> TrigPoly {
        TrigPoly {
            cos: self.cos.iter().map(|c| c.scale(q)).collect(),
            sin: self.sin.iter().map(|c| c.scale(q)).collect(),
        }
    }

    /// Termwise derivative: `a_k cos kt -> -k a_k sin kt` and `b_k sin kt -> k b_k cos kt`.
    pub fn derivative(&self) -> TrigPoly {
        let m = self.degree();
        let mut cos = vec![Coeff::zero(); m + 1];
        let mut sin = vec![Coeff::zero(); m];
        for k in 1..=m {
            let kq = rational::int(k as i64);
            cos[k] = self.sin[k - 1].scale(&kq);
            sin[k - 1] = self.cos[k].scale(&-kq);
        }
        TrigPoly { cos, sin }
    }

    /// Poisson integral `P_r`: the k-th harmonic is multiplied by `r^k`.
    pub fn poisson(&self, r: &Rational) -> Result<TrigPoly> {
        if r.is_negative() || r >= &Rational::one() {
            return Err(Error::domain(format!("Poisson radius {} outside [0, 1)", rational::fraction_string(r))));
        }
        let mut cos = Vec::with_capacity(self.cos.len());
        let mut sin = Vec::with_capacity(self.sin.len());
        cos.push(self.cos[0].clone());
        let mut rk = Rational::one();
        for k in 1..=self.degree() {
            rk *= r;
            cos.push(self.cos[k].scale(&rk));
            sin.push(self.sin[k - 1].scale(&rk));
        }
        Ok(TrigPoly { cos, sin })
    }

    /// Coefficientwise equality, padding the shorter polynomial with zeros.
    /// `None` when some pair of coefficients cannot be compared exactly.
    pub fn exact_eq(&self, other: &TrigPoly) -> Option<bool> {
        let m = self.degree().max(other.degree());
        let mut all = true;
        for k in 0..=m {
            let pairs = [(self.a(k), other.a(k)), (self.b(k), other.b(k))];
            for (x, y) in pairs.iter() {
                match x.exact_eq(y) {
                    Some(true) => {}
                    Some(false) => return Some(false),
                    None => all = false,
                }
            }
        }
        all.then_some(true)
    }

    /// Coefficient enclosures at `bits`, ready for repeated evaluation.
    pub fn prepare(&self, bits: u32) -> PreparedPoly {
        PreparedPoly {
            cos: self.cos.iter().map(|c| c.enclose(bits)).collect(),
            sin: self.sin.iter().map(|c| c.enclose(bits)).collect(),
            bits,
        }
    }

    /// Enclosure of `p(t)` of width at most `2^-prec_bits`.
    pub fn eval(&self, t: &Rational, prec_bits: u32) -> DyadicInterval {
        let mut guard = 4 + log2_ceil(self.degree() as u64 + 1) + self.coeff_mag_bits();
        loop {
            let w = prec_bits + guard;
            let v = self.prepare(w).eval(t);
            if v.width_within(prec_bits) {
                return v;
            }
            guard *= 2;
        }
    }

    /// Bits of the largest coefficient magnitude, from a coarse enclosure.
    fn coeff_mag_bits(&self) -> u32 {
        self.cos
            .iter()
            .chain(self.sin.iter())
            .map(|c| c.enclose(4).mag().log2_floor().map(|e| (e + 1).max(0) as u32).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Enclosure of `|a_0|/2 + sum |a_k| + sum |b_k|`, width at most `2^-prec_bits`.
    pub fn wiener_norm(&self, prec_bits: u32) -> DyadicInterval {
        let w = prec_bits + 2 + log2_ceil(2 * self.degree() as u64 + 1);
        let a0 = self.cos[0].enclose(w + 1).abs();
        let mut total = DyadicInterval::new_unchecked(a0.lo().half(), a0.hi().half());
        for c in self.cos.iter().skip(1).chain(self.sin.iter()) {
            total = &total + &c.enclose(w).abs();
        }
        total
    }

    pub fn to_json(&self, bits: u32) -> TrigPolyJson {
        TrigPolyJson {
            degree: self.degree(),
            cos: self.cos.iter().map(|c| c.enclose(bits).to_json(bits)).collect(),
            sin: self.sin.iter().map(|c| c.enclose(bits).to_json(bits)).collect(),
        }
    }

    /// Reads exact coefficients; interval coefficients must be degenerate.
    pub fn from_input(input: &TrigPolyInput) -> Result<TrigPoly> {
        let conv = |c: &CoeffInput| -> Result<Coeff> {
            match c {
                CoeffInput::Text(s) => Ok(Coeff::exact(rational::parse_rational(s)?)),
                CoeffInput::Interval(j) => {
                    let iv = DyadicInterval::from_json(j)?;
                    if !iv.is_point() {
                        return Err(Error::validation("coefficient intervals must be exact points"));
                    }
                    Ok(Coeff::exact(iv.lo().to_rational()))
                }
            }
        };
        let mut cos: Vec<Coeff> = input.cos.iter().map(conv).collect::<Result<_>>()?;
        let mut sin: Vec<Coeff> = input.sin.iter().map(conv).collect::<Result<_>>()?;
        let degree = input.degree.unwrap_or(sin.len().max(cos.len().saturating_sub(1)));
        if cos.len() > degree + 1 || sin.len() > degree {
            return Err(Error::validation(format!("coefficients exceed declared degree {degree}")));
        }
        cos.resize(degree + 1, Coeff::zero());
        sin.resize(degree, Coeff::zero());
        TrigPoly::new(cos, sin)
    }
}

pub(crate) fn log2_ceil(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Coefficient enclosures of a [`TrigPoly`] at a fixed working precision.
#[derive(Clone, Debug)]
pub struct PreparedPoly {
    cos: Vec<DyadicInterval>,
    sin: Vec<DyadicInterval>,
    bits: u32,
}

impl PreparedPoly {
    pub fn degree(&self) -> usize {
        self.sin.len()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Encloses `p(t)`; the harmonics come from the rotation recurrence on `e^{it}`.
    pub fn eval(&self, t: &Rational) -> DyadicInterval {
        // each rotation can widen the harmonics by up to sqrt(2)
        let w = self.bits + log2_ceil(self.degree() as u64 + 1) + 2 + (self.degree() as u32).div_ceil(2);
        let a0 = &self.cos[0];
        let mut acc = DyadicInterval::new_unchecked(a0.lo().half(), a0.hi().half());
        if self.degree() == 0 {
            return acc;
        }
        let (s1, c1) = enclose_sin_cos(t, w);
        let (mut ck, mut sk) = (c1.clone(), s1.clone());
        for k in 1..=self.degree() {
            if k > 1 {
                let nc = &(&ck * &c1) - &(&sk * &s1);
                let ns = &(&sk * &c1) + &(&ck * &s1);
                ck = nc.round_outward(w);
                sk = ns.round_outward(w);
            }
            acc = &acc + &(&(&self.cos[k] * &ck) + &(&self.sin[k - 1] * &sk));
            acc = acc.round_outward(w);
        }
        acc
    }

    /// Upper bound on `sum k^order (|a_k| + |b_k|)`, which dominates `|p^(order)|`.
    pub fn weighted_l1(&self, order: u32) -> Dyadic {
        let mut total = Dyadic::zero();
        for k in 1..=self.degree() {
            let w = Dyadic::from_int((k as i64).pow(order));
            let m = &self.cos[k].mag() + &self.sin[k - 1].mag();
            total = &total + &(&w * &m);
        }
        if order == 0 {
            total = &total + &self.cos[0].mag().half();
        }
        total
    }
}

/// Input form for polynomials: exact coefficient strings (or point intervals).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrigPolyInput {
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub cos: Vec<CoeffInput>,
    #[serde(default)]
    pub sin: Vec<CoeffInput>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffInput {
    Text(String),
    Interval(IntervalJson),
}

/// Output form `{degree, cos: [...], sin: [...]}` with coefficient enclosures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigPolyJson {
    pub degree: usize,
    pub cos: Vec<IntervalJson>,
    pub sin: Vec<IntervalJson>,
}
