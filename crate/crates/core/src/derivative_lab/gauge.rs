use std::collections::HashMap;
use std::sync::LazyLock;

use num_traits::Zero;
use parking_lot::Mutex;

use crate::creal::{CReal, Direction, MonotoneWitness};
use crate::error::{Error, Result};
use crate::exact_numeric::rational::{self, Rational};
use crate::exact_numeric::{enclose_ln, Dyadic, DyadicInterval};

static LN_CACHE: LazyLock<Mutex<HashMap<u64, CReal>>> = LazyLock::new(|| Mutex::new(HashMap::new()));
static G_CACHE: LazyLock<Mutex<HashMap<usize, CReal>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Retries `f` with growing working precision until the width is at most `2^-bits`.
pub(crate) fn refine(bits: u32, f: impl Fn(u32) -> DyadicInterval) -> DyadicInterval {
    let mut guard = 8;
    loop {
        let iv = f(bits + guard);
        if iv.width_within(bits) {
            return iv;
        }
        guard *= 2;
    }
}

/// `ln k` as a shared computable real.
pub fn ln_int(k: u64) -> CReal {
    assert!(k >= 1);
    LN_CACHE
        .lock()
        .entry(k)
        .or_insert_with(|| {
            let q = rational::int(k as i64);
            CReal::from_enclosure(format!("ln {k}"), move |b| enclose_ln(&q, b).expect("k >= 1"))
        })
        .clone()
}

/// `sum_{k=2}^{n+1} 1/(k ln k)` at working precision `w` (not yet width-checked).
fn gauge_sum(n: usize, w: u32) -> DyadicInterval {
    let mut total = DyadicInterval::zero();
    for k in 2..=(n as u64 + 1) {
        let denom = ln_int(k).enclose(w).scale_int(k as i64);
        let term = DyadicInterval::from_int(1).div(&denom, w).expect("k ln k > 0");
        total = &total + &term;
    }
    total
}

/// `G(n)` as a shared computable real.
pub fn gauge_creal(n: usize) -> CReal {
    assert!(n >= 1);
    G_CACHE
        .lock()
        .entry(n)
        .or_insert_with(|| {
            let extra = 64 - (n as u64 + 1).leading_zeros() + 2;
            CReal::from_enclosure(format!("G({n})"), move |b| refine(b, |w| gauge_sum(n, w + extra)))
        })
        .clone()
}

/// Enclosure of `G(n) = sum_{k=2}^{n+1} 1/(k ln k)`, width at most `2^-prec_bits`.
pub fn gauge_g(n: usize, prec_bits: u32) -> Result<DyadicInterval> {
    if n == 0 {
        return Err(Error::validation("G(n) needs n >= 1"));
    }
    Ok(gauge_creal(n).enclose(prec_bits))
}

/// `C1 = sum_{k>=2} 1/(k^2 ln k)` as `[S_K, S_K + 1/(K ln K)]` with `K` doubled until the width fits.
///
/// The cost grows like `2^prec_bits`; 12 to 16 bits is the practical range.
pub fn c1_enclosure(prec_bits: u32) -> DyadicInterval {
    let w = prec_bits + 24;
    let mut partial = DyadicInterval::zero();
    let mut k = 2u64;
    let mut limit = 64u64;
    loop {
        while k <= limit {
            let denom = ln_int(k).enclose(w).scale_int((k * k) as i64);
            partial = &partial + &DyadicInterval::from_int(1).div(&denom, w).expect("positive");
            k += 1;
        }
        // tail: sum_{k>K} 1/(k^2 ln k) <= (1/ln K) * sum_{k>K} 1/k^2 <= 1/(K ln K)
        let kk = limit as i64;
        let tail_den = ln_int(limit).enclose(w).scale_int(kk);
        let tail = DyadicInterval::from_int(1).div(&tail_den, w).expect("positive");
        let out = DyadicInterval::new_unchecked(partial.lo().clone(), partial.hi() + tail.hi());
        if out.width_within(prec_bits) {
            return out;
        }
        limit *= 2;
    }
}

/// `K0 = 2 C1`, the tail constant in `||u_M - u_m|| <= K0 / G(m+1)`.
pub fn k0_enclosure(prec_bits: u32) -> DyadicInterval {
    c1_enclosure(prec_bits + 1).scale_int(2)
}

/// Lower bound `ln ln(n+2) - ln ln 2 <= G(n)` from the integral test, in `f64`.
///
/// Only used to size moduli that are far beyond materialization.
pub fn gauge_lower_estimate(n: f64) -> f64 {
    (n + 2.0).ln().ln() - 2f64.ln().ln()
}

/// Indices `n_1 < n_2 < ...` with a declared bound on `sum 1/G(n_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeSchedule {
    indices: Vec<usize>,
    declared_bound: Rational,
}

impl GaugeSchedule {
    /// Validates monotonicity and the declared bound against certified lower bounds on `G`.
    pub fn new(indices: Vec<usize>, declared_bound: Rational) -> Result<Self> {
        if indices.first() == Some(&0) {
            return Err(Error::validation("schedule indices start at 1"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation("schedule indices must be strictly increasing"));
        }
        let mut sum_hi = Dyadic::zero();
        for &n in &indices {
            let g = gauge_g(n, 24)?;
            let inv = DyadicInterval::from_int(1).div(&g, 24)?;
            sum_hi = &sum_hi + inv.hi();
        }
        if sum_hi.to_rational() > declared_bound {
            return Err(Error::validation(format!(
                "sum of 1/G(n_k) may reach {}, above the declared bound {}",
                sum_hi.to_decimal(),
                rational::fraction_string(&declared_bound)
            )));
        }
        Ok(GaugeSchedule { indices, declared_bound })
    }

    /// The rule `G(n_k) > k^2`, searched up to `cap`; fails once an index would exceed it.
    ///
    /// `G` grows like `ln ln n`, so only `n_1 = 2` is within reach of any real cap.
    pub fn threshold_rule(count: usize, cap: usize) -> Result<Self> {
        let mut indices = Vec::with_capacity(count);
        let mut n = 1;
        for k in 1..=count {
            let target = Rational::from_integer(((k * k) as i64).into());
            loop {
                if n > cap {
                    return Err(Error::validation(format!(
                        "no n <= {cap} with G(n) > {}; the threshold schedule is not materializable",
                        k * k
                    )));
                }
                let g = gauge_g(n, 24)?;
                n += 1;
                if g.lo().to_rational() > target {
                    indices.push(n - 1);
                    break;
                }
            }
        }
        // G(n_k) > k^2 gives sum 1/G(n_k) < sum 1/k^2 < 2
        Self::new(indices, rational::int(2))
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn declared_bound(&self) -> &Rational {
        &self.declared_bound
    }
}

/// `d_k = w(k) - w(k-1)` for `k = 1..=count`; errors if the witness decreases.
pub fn increments(w: &MonotoneWitness, count: usize) -> Result<Vec<Rational>> {
    if w.direction() != Direction::Nondecreasing {
        return Err(Error::validation("increments need a nondecreasing witness"));
    }
    let mut out = Vec::with_capacity(count);
    let mut prev = w.term(0);
    for k in 1..=count {
        let cur = w.term(k);
        let d = &cur - &prev;
        if d < Rational::zero() {
            return Err(Error::validation(format!("witness decreases at index {k}")));
        }
        out.push(d);
        prev = cur;
    }
    Ok(out)
}
