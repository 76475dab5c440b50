//! Computable reals as memoized approximation oracles.
//!
//! A [`CReal`] answers `approx(n)` with a rational within `2^-n` of the real it
//! represents. Arithmetic builds new oracles that query their operands at a
//! few extra bits and round the result onto the dyadic grid, which keeps the
//! denominators of deep expression trees bounded.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::exact_numeric::rational::{self, Rational};
use crate::exact_numeric::{Dyadic, DyadicInterval};
use crate::trig_series::EffectiveFunction;

/// What built a [`CReal`]; informational only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Constant,
    Sum,
    Difference,
    Product,
    Negation,
    Scaled,
    Specker,
    Eval,
    Enclosure(String),
    Oracle(String),
}

type Oracle = dyn Fn(u32) -> Rational + Send + Sync;

struct Inner {
    oracle: Box<Oracle>,
    memo: Mutex<HashMap<u32, Rational>>,
    provenance: Provenance,
    exact: Option<Rational>,
}

/// A real number `x` given by `n -> q_n` with `|q_n - x| <= 2^-n`.
#[derive(Clone)]
pub struct CReal(Arc<Inner>);

/// Rounds to the nearest multiple of `2^-bits` (error at most `2^-(bits+1)`).
fn round_nearest(q: &Rational, bits: u32) -> Rational {
    let scaled: BigInt = q.numer() << bits as usize;
    let den = q.denom();
    let num: BigInt = scaled * 2u32 + den;
    let twice = num.div_floor(&(den * 2u32));
    Rational::new(twice, BigInt::one() << bits as usize)
}

impl CReal {
    fn build(provenance: Provenance, exact: Option<Rational>, oracle: Box<Oracle>) -> Self {
        CReal(Arc::new(Inner { oracle, memo: Mutex::new(HashMap::new()), provenance, exact }))
    }

    pub fn constant(q: Rational) -> Self {
        let v = q.clone();
        Self::build(Provenance::Constant, Some(q), Box::new(move |_| v.clone()))
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(rational::int(v))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    /// Wraps a caller-supplied oracle; the caller vouches for the `2^-n` contract.
    pub fn from_oracle(tag: impl Into<String>, f: impl Fn(u32) -> Rational + Send + Sync + 'static) -> Self {
        Self::build(Provenance::Oracle(tag.into()), None, Box::new(f))
    }

    /// From a certified enclosure routine returning width `<= 2^-bits`.
    pub fn from_enclosure(tag: impl Into<String>, f: impl Fn(u32) -> DyadicInterval + Send + Sync + 'static) -> Self {
        Self::build(
            Provenance::Enclosure(tag.into()),
            None,
            Box::new(move |n| f(n + 1).midpoint().to_rational()),
        )
    }

    /// Retags the value (keeps the oracle and its memo).
    pub fn with_provenance(self, provenance: Provenance) -> Self {
        let inner = self.0.clone();
        let exact = inner.exact.clone();
        Self::build(provenance, exact, Box::new(move |n| CReal(inner.clone()).approx(n)))
    }

    pub fn provenance(&self) -> &Provenance {
        &self.0.provenance
    }

    /// The exact rational value when the number was built from constants only.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.0.exact.as_ref()
    }

    /// Identity of the underlying oracle; clones share it.
    pub fn ptr_eq(&self, other: &CReal) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Rational within `2^-n` of the value.
    pub fn approx(&self, n: u32) -> Rational {
        if let Some(q) = &self.0.exact {
            return q.clone();
        }
        if let Some(q) = self.0.memo.lock().get(&n) {
            return q.clone();
        }
        let q = (self.0.oracle)(n);
        self.0.memo.lock().entry(n).or_insert(q).clone()
    }

    /// Dyadic enclosure of width at most `2^-bits`.
    pub fn enclose(&self, bits: u32) -> DyadicInterval {
        if let Some(q) = &self.0.exact {
            if rational::is_dyadic(q) {
                if let Ok(d) = Dyadic::try_from_rational(q) {
                    return DyadicInterval::point(d);
                }
            }
            return DyadicInterval::from_rational(q, bits + 1);
        }
        let n = bits + 2;
        let a = self.approx(n);
        let e = rational::pow2(-(n as i64));
        DyadicInterval::from_rational_bounds(&(&a - &e), &(&a + &e), n + 2)
    }

    pub fn neg(&self) -> CReal {
        let a = self.clone();
        let exact = self.0.exact.as_ref().map(|q| -q);
        Self::build(Provenance::Negation, exact, Box::new(move |n| -a.approx(n)))
    }

    pub fn add(&self, other: &CReal) -> CReal {
        let exact = match (&self.0.exact, &other.0.exact) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        let (a, b) = (self.clone(), other.clone());
        Self::build(
            Provenance::Sum,
            exact,
            Box::new(move |n| round_nearest(&(a.approx(n + 2) + b.approx(n + 2)), n + 2)),
        )
    }

    pub fn sub(&self, other: &CReal) -> CReal {
        let exact = match (&self.0.exact, &other.0.exact) {
            (Some(x), Some(y)) => Some(x - y),
            _ => None,
        };
        let (a, b) = (self.clone(), other.clone());
        Self::build(
            Provenance::Difference,
            exact,
            Box::new(move |n| round_nearest(&(a.approx(n + 2) - b.approx(n + 2)), n + 2)),
        )
    }

    /// Product; magnitudes are bounded by `|approx(0)| + 1`.
    pub fn mul(&self, other: &CReal) -> CReal {
        let exact = match (&self.0.exact, &other.0.exact) {
            (Some(x), Some(y)) => Some(x * y),
            _ => None,
        };
        let (a, b) = (self.clone(), other.clone());
        Self::build(
            Provenance::Product,
            exact,
            Box::new(move |n| {
                let bound_a = rational::ceil_abs(&a.approx(0)) + 1;
                let bound_b = rational::ceil_abs(&b.approx(0)) + 1;
                let total: BigInt = bound_a + bound_b + BigInt::one();
                let extra = total.bits() as u32;
                let k = n + 2 + extra;
                round_nearest(&(a.approx(k) * b.approx(k)), n + 2)
            }),
        )
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, q: &Rational) -> CReal {
        if q.is_zero() {
            return CReal::zero();
        }
        if q.is_one() {
            return self.clone();
        }
        let exact = self.0.exact.as_ref().map(|x| x * q);
        let (a, q) = (self.clone(), q.clone());
        let extra = rational::magnitude_bits(&q) as u32 + 1;
        Self::build(
            Provenance::Scaled,
            exact,
            Box::new(move |n| round_nearest(&(a.approx(n + extra) * &q), n + 2)),
        )
    }

    /// Finite decimal approximation within `2^-n`, as emitted on the command line.
    pub fn to_json(&self, n: u32) -> CRealJson {
        let q = round_nearest(&self.approx(n + 1), n + 2);
        CRealJson {
            approx: rational::dyadic_to_decimal(&q).unwrap_or_default(),
            error_bound: format!("2^-{n}"),
        }
    }
}

impl fmt::Debug for CReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CReal({:?}, ~{})", self.0.provenance, rational::to_f64(&self.approx(30)))
    }
}

/// Command-line form of a computable real: `{approx, error_bound: "2^-n"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CRealJson {
    pub approx: String,
    pub error_bound: String,
}

/// Whether a [`MonotoneWitness`] increases or decreases towards its limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Nondecreasing,
    Nonincreasing,
}

type Terms = dyn Fn(usize) -> Rational + Send + Sync;

/// A computable monotone rational sequence; its limit is a left-(or right-)computable real.
#[derive(Clone)]
pub struct MonotoneWitness {
    terms: Arc<Terms>,
    direction: Direction,
    provenance: Provenance,
}

impl MonotoneWitness {
    /// The caller guarantees monotonicity in `direction`.
    pub fn new(direction: Direction, provenance: Provenance, terms: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Self {
        MonotoneWitness { terms: Arc::new(terms), direction, provenance }
    }

    /// Finite prefix, constant after its last element; index 0 is the first entry.
    pub fn from_prefix(direction: Direction, values: Vec<Rational>) -> Self {
        let values = Arc::new(values);
        Self::new(direction, Provenance::Constant, move |m| {
            values.get(m).or_else(|| values.last()).cloned().unwrap_or_else(Rational::zero)
        })
    }

    pub fn constant(q: Rational) -> Self {
        Self::new(Direction::Nondecreasing, Provenance::Constant, move |_| q.clone())
    }

    pub fn term(&self, m: usize) -> Rational {
        (self.terms)(m)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Checks the monotonicity claim on `0..=upto`.
    pub fn is_monotone_upto(&self, upto: usize) -> bool {
        (0..upto).all(|m| {
            let (a, b) = (self.term(m), self.term(m + 1));
            match self.direction {
                Direction::Nondecreasing => a <= b,
                Direction::Nonincreasing => a >= b,
            }
        })
    }
}

impl fmt::Debug for MonotoneWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneWitness").field("direction", &self.direction).field("provenance", &self.provenance).finish()
    }
}

/// Difference quotients `r_n = n (u(t + 1/n) - u(t))` of an effective function at `t`.
///
/// The sequence converges to `u'(t)` but carries no modulus of convergence.
#[derive(Clone)]
pub struct DiffQuotients {
    u: EffectiveFunction,
    t: Rational,
    at_t: CReal,
}

impl DiffQuotients {
    /// Element `n >= 1`.
    pub fn term(&self, n: u64) -> CReal {
        assert!(n >= 1, "difference quotients start at n = 1");
        let step = Rational::new(BigInt::one(), BigInt::from(n));
        let shifted = self.u.eval_at(&(&self.t + step));
        shifted.sub(&self.at_t).scale(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn point(&self) -> &Rational {
        &self.t
    }

    pub fn iter(&self) -> impl Iterator<Item = CReal> + '_ {
        (1u64..).map(move |n| self.term(n))
    }
}

pub fn diff_quotient_sequence(u: &EffectiveFunction, t: &Rational) -> DiffQuotients {
    DiffQuotients { u: u.clone(), t: t.clone(), at_t: u.eval_at(t) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_numeric::rational::{int, pow2, rat};
    use crate::exact_numeric::enclose_sin;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn third() -> CReal {
        CReal::from_oracle("one third", |n| Dyadic::floor_of(&rat(1, 3), n + 1).to_rational())
    }

    #[test]
    fn sums_of_constants() {
        let s = CReal::constant(rat(1, 3)).add(&CReal::constant(rat(1, 6)));
        assert!((s.approx(10) - rat(1, 2)).abs() <= pow2(-10));
        let t = third().add(&CReal::constant(rat(1, 6)));
        assert!((t.approx(10) - rat(1, 2)).abs() <= pow2(-10));
        assert_eq!(*t.provenance(), Provenance::Sum);
    }

    #[test]
    fn zero_times_anything() {
        let z = CReal::zero().mul(&third());
        for n in [0, 5, 40] {
            assert!(z.approx(n).abs() <= pow2(-(n as i64)));
        }
    }

    #[test]
    fn specker_pair_plus_quarter() {
        // x[{1,2}] = 1/2 + 1/4
        let x = CReal::constant(rat(3, 4)).with_provenance(Provenance::Specker);
        let y = x.add(&CReal::constant(rat(1, 4)));
        assert!((y.approx(20) - int(1)).abs() <= pow2(-20));
    }

    #[test]
    fn oracle_consistency_on_products() {
        let p = third().mul(&third().add(&CReal::from_int(2)));
        // 1/3 * 7/3 = 7/9
        for m in 0..=40u32 {
            for n in 0..=40u32 {
                let d = (p.approx(m) - p.approx(n)).abs();
                assert!(d <= pow2(-(m as i64)) + pow2(-(n as i64)));
            }
            assert!((p.approx(m) - rat(7, 9)).abs() <= pow2(-(m as i64)));
        }
    }

    #[test]
    fn enclosure_roundtrip() {
        let s1 = CReal::from_enclosure("sin 1", |b| enclose_sin(&int(1), b));
        let e = s1.enclose(30);
        assert!(e.width_within(30));
        assert!(e.overlaps(&enclose_sin(&int(1), 40)));
        assert_eq!(s1.to_json(10).error_bound, "2^-10");
    }

    #[test]
    fn monotone_prefix_saturates() {
        let w = MonotoneWitness::from_prefix(Direction::Nondecreasing, vec![int(0), rat(1, 2), rat(3, 4)]);
        assert_eq!(w.term(10), rat(3, 4));
        assert!(w.is_monotone_upto(20));
        let bad = MonotoneWitness::from_prefix(Direction::Nondecreasing, vec![int(1), int(0)]);
        assert!(!bad.is_monotone_upto(3));
    }

    #[test]
    fn difference_quotients_of_sin_2t() {
        use crate::trig_series::TrigPoly;
        let u = EffectiveFunction::from_poly(TrigPoly::sine(2, int(1)));
        let r = diff_quotient_sequence(&u, &int(0));
        assert_eq!(r.point(), &int(0));
        for n in [1u64, 3, 20] {
            let v = rational::to_f64(&r.term(n).approx(40));
            assert!((v - n as f64 * (2.0 / n as f64).sin()).abs() < 1e-10);
        }
        assert_eq!(r.iter().take(4).count(), 4);
    }

    #[test]
    fn difference_quotients_obey_degree_law() {
        use crate::trig_series::TrigPoly;
        // u = 3 cos t + cos(2t)/2 - 2 sin 3t: degree 3, coefficient l1-norm 11/2
        let p = TrigPoly::from_rationals(&[int(0), int(3), rat(1, 2), int(0)], &[int(0), int(0), int(-2)]).unwrap();
        let u = EffectiveFunction::from_poly(p);
        let t = rat(1, 3);
        let tf = 1.0f64 / 3.0;
        let exact = -3.0 * tf.sin() - (2.0 * tf).sin() - 6.0 * (3.0 * tf).cos();
        let r = diff_quotient_sequence(&u, &t);
        for n in 1..=50u64 {
            let v = rational::to_f64(&r.term(n).approx(40));
            assert!((v - exact).abs() <= 9.0 * 5.5 / (2.0 * n as f64) + 1e-9, "n = {n}");
        }
    }

    #[test]
    #[should_panic]
    fn difference_quotients_start_at_one() {
        let u = EffectiveFunction::from_poly(crate::trig_series::TrigPoly::sine(1, int(1)));
        diff_quotient_sequence(&u, &int(0)).term(0);
    }

    proptest! {
        #[test]
        fn arithmetic_coherence(an in -1000i64..1000, ad in 1i64..100, bn in -1000i64..1000, bd in 1i64..100, n in 0u32..40) {
            let a = CReal::from_oracle("a", move |k| Dyadic::floor_of(&rat(an, ad), k + 1).to_rational());
            let b = CReal::from_oracle("b", move |k| Dyadic::ceil_of(&rat(bn, bd), k + 1).to_rational());
            let s = a.add(&b);
            let reference = a.approx(n + 2) + b.approx(n + 2);
            prop_assert!((s.approx(n) - reference).abs() <= pow2(-(n as i64)) + pow2(-(n as i64) - 1));
            let exact = rat(an, ad) * rat(bn, bd);
            prop_assert!((a.mul(&b).approx(n) - exact).abs() <= pow2(-(n as i64)));
            let q = rat(bn, bd);
            prop_assert!((a.scale(&q).approx(n) - rat(an, ad) * q).abs() <= pow2(-(n as i64)));
            prop_assert!((a.sub(&b).approx(n) - (rat(an, ad) - rat(bn, bd))).abs() <= pow2(-(n as i64)));
        }
    }
}
