use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use parking_lot::Mutex;

use super::gauge::{gauge_creal, gauge_lower_estimate, increments, k0_enclosure, ln_int, refine, GaugeSchedule};
use crate::creal::{CReal, MonotoneWitness};
use crate::enumerators::{Enumerator, Program};
use crate::error::{Error, Result};
use crate::exact_numeric::rational::{self, Rational};
use crate::exact_numeric::DyadicInterval;
use crate::trig_series::{Coeff, EffectiveFunction, TrigPoly};

/// `sum_j w_j p_{n_j}` built coefficientwise:
/// `b_k = (1/(k^2 ln k)) sum_{j : n_j + 1 >= k} w_j / G(n_j)`.
pub(crate) fn combine_p(terms: &[(usize, Rational)]) -> TrigPoly {
    let terms: Arc<Vec<(usize, Rational)>> = Arc::new(terms.iter().filter(|(_, w)| !w.is_zero()).cloned().collect());
    let degree = terms.iter().map(|(n, _)| n + 1).max().unwrap_or(0);
    let mut sin = vec![Coeff::zero(); degree];
    for k in 2..=degree {
        let active: Vec<(CReal, Rational)> =
            terms.iter().filter(|(n, _)| n + 1 >= k).map(|(n, w)| (gauge_creal(*n), w.clone())).collect();
        let ln_k = ln_int(k as u64);
        let k2 = (k * k) as i64;
        let x = CReal::from_enclosure(format!("b_{k}"), move |b| {
            refine(b, |w| {
                let mut s = DyadicInterval::zero();
                for (g, wt) in &active {
                    let inv = DyadicInterval::from_int(1).div(&g.enclose(w), w).expect("G > 0");
                    s = &s + &inv.mul_rational(wt, w);
                }
                let den = ln_k.enclose(w).scale_int(k2);
                s.div(&den, w).expect("k^2 ln k > 0")
            })
        });
        sin[k - 1] = Coeff::real(x);
    }
    TrigPoly::new(vec![Coeff::zero(); degree + 1], sin).expect("sizes match")
}

/// `p_n(t) = sum_{k=2}^{n+1} sin(kt) / (G(n) k^2 ln k)`.
pub fn poly_p(n: usize) -> Result<TrigPoly> {
    if n == 0 {
        return Err(Error::validation("p_n needs n >= 1"));
    }
    Ok(combine_p(&[(n, rational::int(1))]))
}

/// A partial sum `u_m = sum_{n<=m} 2^{-phi(n)} p_n`.
#[derive(Clone, Debug)]
pub struct UaPartial {
    pub poly: TrigPoly,
    /// `phi(1), ..., phi(m')` with `m' <= m`.
    pub values: Vec<u64>,
    /// Fewer than `m` values were available within the step budget.
    pub saturated: bool,
}

impl UaPartial {
    /// `sum 2^{-phi(n)}` over the values used.
    pub fn weight(&self) -> Rational {
        self.values.iter().map(|&v| rational::pow2(-(v as i64))).sum()
    }
}

/// Steps `e` (at most `budget` units) until it has `m` values and forms `u_m`.
pub fn build_ua(e: &mut Enumerator, m: usize, budget: u64) -> UaPartial {
    e.step_until(m, budget);
    let values: Vec<u64> = e.emitted().iter().take(m).copied().collect();
    let terms: Vec<(usize, Rational)> =
        values.iter().enumerate().map(|(i, &v)| (i + 1, rational::pow2(-(v as i64)))).collect();
    UaPartial { poly: combine_p(&terms), saturated: values.len() < m, values }
}

/// The compiler from a Sigma_1 number `x[A]` to `u` with `||u'|| = x[A]`; same output as [`build_ua`].
pub fn sigma1_to_function(e: &mut Enumerator, m: usize, budget: u64) -> UaPartial {
    build_ua(e, m, budget)
}

/// `P_K = sum_{k<=K} d_k p_{n_k}` with increments `d_k = w(k) - w(k-1)`.
pub fn sigma1_general_construction(w: &MonotoneWitness, schedule: &GaugeSchedule, k: usize) -> Result<TrigPoly> {
    if k > schedule.indices().len() {
        return Err(Error::validation(format!("schedule has {} indices, {k} requested", schedule.indices().len())));
    }
    let d = increments(w, k)?;
    let terms: Vec<(usize, Rational)> = schedule.indices()[..k].iter().copied().zip(d).collect();
    Ok(combine_p(&terms))
}

/// `u_A` with its enumeration, partial sums and tail constant.
#[derive(Clone, Debug)]
pub struct UAFunction {
    enumerator: Enumerator,
    budget: u64,
}

impl UAFunction {
    /// `budget` caps the stepping units spent on any one partial sum.
    pub fn new(e: &Enumerator, budget: u64) -> Self {
        UAFunction { enumerator: e.restart(), budget }
    }

    pub fn partial(&self, m: usize) -> UaPartial {
        build_ua(&mut self.enumerator.restart(), m, self.budget)
    }

    /// Enclosure of `K0 / G(m+1)`; `K0` is taken at 12 bits, which bounds the width.
    pub fn tail_bound(&self, m: usize, prec_bits: u32) -> DyadicInterval {
        let w = prec_bits + 8;
        let g = gauge_creal(m + 1).enclose(w);
        k0_enclosure(12).div(&g, w).expect("G > 0").round_outward(prec_bits)
    }

    /// `|A|` for finite lists, where `u_A` is a polynomial.
    pub fn finite_size(&self) -> Option<usize> {
        match self.enumerator.program() {
            Program::Finite(_) => {
                let mut e = self.enumerator.restart();
                e.step_until(usize::MAX, u64::MAX);
                Some(e.emitted().len())
            }
            _ => None,
        }
    }

    /// As an effective function.
    ///
    /// For infinite `A` the modulus solves `K0 / G(m+1) <= 2^-N` through
    /// `G(n) >= ln ln(n+2) - ln ln 2`; it exceeds `2^127` already at `N = 2`
    /// and saturates at `usize::MAX`.
    pub fn effective(&self) -> EffectiveFunction {
        let finite = self.finite_size();
        let k0 = k0_enclosure(12).hi().to_f64();
        let this = self.clone();
        let cache: Arc<Mutex<HashMap<usize, TrigPoly>>> = Arc::new(Mutex::new(HashMap::new()));
        EffectiveFunction::new(
            move |m| {
                let m = finite.map_or(m, |size| m.min(size));
                if let Some(p) = cache.lock().get(&m) {
                    return p.clone();
                }
                let p = this.partial(m).poly;
                cache.lock().entry(m).or_insert(p).clone()
            },
            move |n| match finite {
                Some(size) => size,
                None => analytic_modulus(k0, n),
            },
        )
    }
}

fn analytic_modulus(k0: f64, n: u32) -> usize {
    let target = k0 * 2f64.powi(n as i32);
    // smallest m with ln ln(m+3) - ln ln 2 >= target, i.e. m + 3 >= 2^(e^target)
    let log2_m = target.exp();
    if log2_m >= 63.0 {
        return usize::MAX;
    }
    let mut m = (2f64.powf(log2_m).ceil() as usize).saturating_sub(3);
    while gauge_lower_estimate((m + 1) as f64) < target {
        m += 1;
    }
    m
}
