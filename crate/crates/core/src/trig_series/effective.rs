use std::fmt;
use std::sync::Arc;

use super::poly::TrigPoly;
use super::sup::certified_sup;
use crate::creal::{CReal, Provenance};
use crate::exact_numeric::rational::Rational;
use crate::exact_numeric::{Dyadic, DyadicInterval};

type Approximant = dyn Fn(usize) -> TrigPoly + Send + Sync;
type Modulus = dyn Fn(u32) -> usize + Send + Sync;

/// A function on the circle given by trigonometric polynomials and a modulus:
/// `m >= modulus(N)` implies `||f - approximant(m)||_inf <= 2^-N`.
#[derive(Clone)]
pub struct EffectiveFunction {
    approximant: Arc<Approximant>,
    modulus: Arc<Modulus>,
}

impl EffectiveFunction {
    pub fn new(
        approximant: impl Fn(usize) -> TrigPoly + Send + Sync + 'static,
        modulus: impl Fn(u32) -> usize + Send + Sync + 'static,
    ) -> Self {
        EffectiveFunction { approximant: Arc::new(approximant), modulus: Arc::new(modulus) }
    }

    /// A polynomial is its own approximant at every index.
    pub fn from_poly(p: TrigPoly) -> Self {
        Self::new(move |_| p.clone(), |_| 0)
    }

    pub fn approximant(&self, m: usize) -> TrigPoly {
        (self.approximant)(m)
    }

    pub fn modulus(&self, n: u32) -> usize {
        (self.modulus)(n)
    }

    /// `f(t)` as a computable real.
    pub fn eval_at(&self, t: &Rational) -> CReal {
        let f = self.clone();
        let t = t.clone();
        CReal::from_oracle("eval", move |n| {
            let p = f.approximant(f.modulus(n + 1));
            p.eval(&t, n + 2).midpoint().to_rational()
        })
        .with_provenance(Provenance::Eval)
    }

    /// Enclosure of `||f||_inf` of width at most `2^-(prec_bits - 1)`.
    pub fn sup_norm(&self, prec_bits: u32) -> DyadicInterval {
        let p = self.approximant(self.modulus(prec_bits + 1));
        let s = certified_sup(&p, prec_bits + 1);
        let slack = Dyadic::pow2(-(prec_bits as i64) - 1);
        DyadicInterval::new_unchecked(s.lo() - &slack, s.hi() + &slack)
    }
}

impl fmt::Debug for EffectiveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("EffectiveFunction")
    }
}
