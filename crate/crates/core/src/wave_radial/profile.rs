use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::pi_expr::PiExpr;
use crate::error::{Error, Result};
use crate::exact_numeric::rational::{self, Rational};
use crate::exact_numeric::{Dyadic, DyadicInterval};

/// A polynomial in the local variable `s in [0, 1]` of one piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LocalPoly(pub Vec<PiExpr>);

impl LocalPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        LocalPoly(c.iter().map(|&v| PiExpr::int(v)).collect())
    }

    /// Value at `s = 0` or `s = 1`, exactly.
    fn at_end(&self, one: bool) -> PiExpr {
        if one {
            self.0.iter().fold(PiExpr::zero(), |acc, c| acc.add(c))
        } else {
            self.0.first().cloned().unwrap_or_default()
        }
    }

    pub fn derivative(&self) -> LocalPoly {
        LocalPoly(self.0.iter().enumerate().skip(1).map(|(k, c)| c.scale(&rational::int(k as i64))).collect())
    }

    fn enclose_at(&self, s: &DyadicInterval, w: u32) -> DyadicInterval {
        let mut acc = DyadicInterval::zero();
        for c in self.0.iter().rev() {
            acc = (&(&acc * s) + &c.enclose(w)).round_outward(w);
        }
        acc
    }

    fn eval_f64(&self, s: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * s + c.to_f64())
    }
}

/// Profile JSON: `{"knots": [...], "pieces": [[c0, c1, ...], ...]}`.
///
/// Knots and coefficients are strings such as `"pi"`, `"3/2 pi"` or `"16 pi^4"`.
/// Piece `i` is `sum_j c_j s^j` with `s = (t - k_i) / (k_{i+1} - k_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub knots: Vec<PiExpr>,
    pub pieces: Vec<LocalPoly>,
}

/// A C^1 piecewise polynomial `q` supported in `[pi, 3 pi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialProfile {
    knots: Vec<PiExpr>,
    pieces: Vec<LocalPoly>,
}

impl RadialProfile {
    /// Checks knot order and support, and that `q`, `q'` match at every knot
    /// (including zero at both ends), with exact arithmetic in `Q[pi]`.
    pub fn new(knots: Vec<PiExpr>, pieces: Vec<LocalPoly>) -> Result<Self> {
        if knots.len() < 2 || pieces.len() + 1 != knots.len() {
            return Err(Error::validation(format!("{} knots need {} pieces", knots.len(), knots.len().saturating_sub(1))));
        }
        if knots[0] != PiExpr::pi() || knots[knots.len() - 1] != PiExpr::pi_term(rational::int(3), 1) {
            return Err(Error::validation("knots must run from pi to 3 pi"));
        }
        if knots.windows(2).any(|w| w[1].cmp_value(&w[0]) != Ordering::Greater) {
            return Err(Error::validation("knots must be strictly increasing"));
        }
        let widths: Vec<PiExpr> = knots.windows(2).map(|w| w[1].sub(&w[0])).collect();
        let last = pieces.len() - 1;
        let d = |i: usize, one: bool| pieces[i].derivative().at_end(one);
        if !pieces[0].at_end(false).is_zero() || !pieces[last].at_end(true).is_zero() {
            return Err(Error::validation("q must vanish at pi and 3 pi"));
        }
        if !d(0, false).is_zero() || !d(last, true).is_zero() {
            return Err(Error::validation("q' must vanish at pi and 3 pi"));
        }
        for i in 0..last {
            if pieces[i].at_end(true) != pieces[i + 1].at_end(false) {
                return Err(Error::validation(format!("q jumps at knot {}", i + 1)));
            }
            // dq/dt = (dq/ds) / width; compare cross-multiplied
            if d(i, true).mul(&widths[i + 1]) != d(i + 1, false).mul(&widths[i]) {
                return Err(Error::validation(format!("q' jumps at knot {}", i + 1)));
            }
        }
        Ok(RadialProfile { knots, pieces })
    }

    pub fn from_json(j: &ProfileJson) -> Result<Self> {
        Self::new(j.knots.clone(), j.pieces.clone())
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let j: ProfileJson = serde_json::from_str(text).map_err(|e| Error::parse(format!("profile: {e}")))?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> ProfileJson {
        ProfileJson { knots: self.knots.clone(), pieces: self.pieces.clone() }
    }

    pub fn knots(&self) -> &[PiExpr] {
        &self.knots
    }

    pub fn pieces(&self) -> &[LocalPoly] {
        &self.pieces
    }

    /// Index of a piece containing `t`, or `None` outside `[pi, 3 pi]`.
    fn locate(&self, t: &Rational) -> Option<usize> {
        if self.knots[0].cmp_rational(t) == Ordering::Greater || self.knots[self.knots.len() - 1].cmp_rational(t) == Ordering::Less {
            return None;
        }
        (0..self.pieces.len()).find(|&i| self.knots[i + 1].cmp_rational(t) != Ordering::Less)
    }

    /// Enclosures of `(q(t), q'(t))` at working precision `w`.
    fn enclose_q(&self, t: &Rational, w: u32) -> (DyadicInterval, DyadicInterval) {
        let Some(i) = self.locate(t) else {
            return (DyadicInterval::zero(), DyadicInterval::zero());
        };
        let (k0, k1) = (self.knots[i].enclose(w), self.knots[i + 1].enclose(w));
        let width = &k1 - &k0;
        let tv = DyadicInterval::from_rational(t, w);
        let s = (&tv - &k0).div(&width, w).expect("knots increase");
        // the true s lies in [0, 1]
        let s = s.intersect(&DyadicInterval::new_unchecked(Dyadic::zero(), Dyadic::from_int(1))).unwrap_or(s);
        let q = self.pieces[i].enclose_at(&s, w);
        let dq = self.pieces[i].derivative().enclose_at(&s, w).div(&width, w).expect("knots increase");
        (q, dq)
    }

    /// `q(t)`, width at most `2^-prec_bits`.
    pub fn enclose_value(&self, t: &Rational, prec_bits: u32) -> DyadicInterval {
        refine(prec_bits, |w| self.enclose_q(t, w).0)
    }

    /// `q'(t)`, width at most `2^-prec_bits`.
    pub fn enclose_derivative(&self, t: &Rational, prec_bits: u32) -> DyadicInterval {
        refine(prec_bits, |w| self.enclose_q(t, w).1)
    }

    /// One-sided derivatives `(q'(k-), q'(k+))` at interior knot `index`.
    pub fn one_sided_derivatives(&self, index: usize, prec_bits: u32) -> Result<(DyadicInterval, DyadicInterval)> {
        if index == 0 || index + 1 >= self.knots.len() {
            return Err(Error::validation("one-sided derivatives are taken at interior knots"));
        }
        let side = |i: usize, one: bool| {
            let d = self.pieces[i].derivative().at_end(one);
            let width = self.knots[i + 1].sub(&self.knots[i]);
            refine(prec_bits, |w| d.enclose(w).div(&width.enclose(w), w).expect("knots increase"))
        };
        Ok((side(index - 1, true), side(index, false)))
    }

    /// `(q(t), q'(t))` in floating point, for quadrature oracles.
    pub fn eval_f64(&self, t: f64) -> (f64, f64) {
        let k: Vec<f64> = self.knots.iter().map(PiExpr::to_f64).collect();
        if t < k[0] || t > k[k.len() - 1] {
            return (0.0, 0.0);
        }
        let i = (0..self.pieces.len()).find(|&i| t <= k[i + 1]).unwrap_or(self.pieces.len() - 1);
        let width = k[i + 1] - k[i];
        let s = (t - k[i]) / width;
        (self.pieces[i].eval_f64(s), self.pieces[i].derivative().eval_f64(s) / width)
    }
}

fn refine(bits: u32, f: impl Fn(u32) -> DyadicInterval) -> DyadicInterval {
    let mut guard = 16;
    loop {
        let iv = f(bits + guard);
        if iv.width_within(bits) {
            return iv;
        }
        guard *= 2;
    }
}

fn pi_times(q: Rational) -> PiExpr {
    PiExpr::pi_term(q, 1)
}

/// Window equal to 1 on `[a, b]`, with quintic smoothstep ramps from `pi` and to `3 pi`.
pub fn window(a: &PiExpr, b: &PiExpr) -> Result<RadialProfile> {
    let (pi, three_pi) = (PiExpr::pi(), pi_times(rational::int(3)));
    if a.cmp_value(&pi) != Ordering::Greater || b.cmp_value(a) != Ordering::Greater || three_pi.cmp_value(b) != Ordering::Greater {
        return Err(Error::validation(format!("plateau [{a}, {b}] must satisfy pi < a < b < 3 pi")));
    }
    let rise = LocalPoly::from_ints(&[0, 0, 0, 10, -15, 6]);
    let fall = LocalPoly::from_ints(&[1, 0, 0, -10, 15, -6]);
    RadialProfile::new(vec![pi, a.clone(), b.clone(), three_pi], vec![rise, LocalPoly::from_ints(&[1]), fall])
}

/// `(t - pi)^2 (3 pi - t)^2 = 16 pi^4 s^2 (1 - s)^2`.
pub fn quartic_bump() -> RadialProfile {
    let c = |v: i64| PiExpr::pi_term(rational::int(16 * v), 4);
    let piece = LocalPoly(vec![PiExpr::zero(), PiExpr::zero(), c(1), c(-2), c(1)]);
    RadialProfile::new(vec![PiExpr::pi(), pi_times(rational::int(3))], vec![piece]).expect("valid bump")
}

/// `64 s^3 (1 - s)^3`, twice continuously differentiable, peak 1 at `2 pi`.
pub fn sextic_bump() -> RadialProfile {
    let piece = LocalPoly::from_ints(&[0, 0, 0, 64, -192, 192, -64]);
    RadialProfile::new(vec![PiExpr::pi(), pi_times(rational::int(3))], vec![piece]).expect("valid bump")
}

/// The zero profile.
pub fn zero_profile() -> RadialProfile {
    RadialProfile::new(vec![PiExpr::pi(), pi_times(rational::int(3))], vec![LocalPoly(vec![])]).expect("valid")
}
