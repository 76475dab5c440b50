//! Certified maximum of `|p|` over the circle.
//!
//! The circle is covered by a uniform grid of cells sized by the degree. A cell
//! of half-width `h` around `c` is bounded by the second-order Taylor estimate
//! `|p(c)| + |p'(c)| h + L2 h^2 / 2`, where `L2 = sum k^2 (|a_k| + |b_k|)`
//! dominates `|p''|`. Cells are split best-first until the largest live bound
//! is within the requested width of the best sampled value.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::poly::{log2_ceil, PreparedPoly, TrigPoly};
use crate::exact_numeric::{pi_enclosure, Dyadic, DyadicInterval};

struct Cell {
    upper: Dyadic,
    center: Dyadic,
    half_width: Dyadic,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        // largest bound first; ties by smaller center for determinism
        self.upper.cmp(&other.upper).then_with(|| other.center.cmp(&self.center))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Counters from one sup computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SupStats {
    pub evaluations: usize,
    pub initial_cells: usize,
}

/// Enclosure of `max_t |p(t)|` with width at most `2^-prec_bits`.
pub fn certified_sup(p: &TrigPoly, prec_bits: u32) -> DyadicInterval {
    certified_sup_with_stats(p, prec_bits).0
}

pub fn certified_sup_with_stats(p: &TrigPoly, prec_bits: u32) -> (DyadicInterval, SupStats) {
    let mut guard = 4 + log2_ceil(p.degree() as u64 + 1);
    loop {
        let work = prec_bits + guard;
        let prepared = p.prepare(work + guard);
        let dprepared = p.derivative().prepare(work + guard);
        // a too-coarse evaluation can stall the search; retry with more guard bits
        if let Some(found) = search(&prepared, &dprepared, prec_bits, work) {
            return found;
        }
        guard *= 2;
    }
}

fn search(p: &PreparedPoly, dp: &PreparedPoly, prec_bits: u32, work: u32) -> Option<(DyadicInterval, SupStats)> {
    let tol = Dyadic::pow2(-(prec_bits as i64));
    let l2 = p.weighted_l1(2);
    let degree = p.degree();
    let mut stats = SupStats::default();
    // the grid covers [0, P] with P >= 2 pi
    let period = pi_enclosure(8).hi().ceil_to(8);
    let period = &period + &period;
    let n0 = (4 * (degree + 1)).max(16).next_power_of_two();
    stats.initial_cells = n0;
    let step_exp = log2_ceil(n0 as u64) as i64;
    let cell_width = &period * &Dyadic::pow2(-step_exp);
    let half = cell_width.half();
    let eval_precision_floor = Dyadic::pow2(-(work as i64));

    let mut best = Dyadic::zero();
    let mut heap = BinaryHeap::new();
    let eval_cell = |center: Dyadic, h: Dyadic, best: &mut Dyadic, stats: &mut SupStats| -> Cell {
        stats.evaluations += 1;
        let t = center.to_rational();
        let v = p.eval(&t).abs();
        let d = dp.eval(&t).mag();
        if v.lo() > best {
            *best = v.lo().clone();
        }
        let quad = &(&l2 * &(&h * &h)).half();
        let upper = &(&v.hi().clone() + &(&d * &h)) + quad;
        Cell { upper, center, half_width: h }
    };

    for i in 0..n0 {
        let center = &(&cell_width * &Dyadic::from_int(i as i64)) + &half;
        let cell = eval_cell(center, half.clone(), &mut best, &mut stats);
        heap.push(cell);
    }

    let mut splits = 0usize;
    while let Some(top) = heap.pop() {
        if top.upper <= best {
            return Some((DyadicInterval::point(best), stats));
        }
        if &top.upper - &best <= tol {
            let hi = top.upper.clone();
            return Some((DyadicInterval::new_unchecked(best, hi), stats));
        }
        if top.half_width < eval_precision_floor {
            return None;
        }
        splits += 1;
        if splits > 1 << 22 {
            return None;
        }
        let h = top.half_width.half();
        for c in [&top.center - &h, &top.center + &h] {
            let cell = eval_cell(c, h.clone(), &mut best, &mut stats);
            if cell.upper > best {
                heap.push(cell);
            }
        }
    }
    Some((DyadicInterval::point(best), stats))
}
