//! Dovetailed search for dyadic upper bounds of a computable real.

use effan::creal::CReal;
use effan::dovetail::{dyadic_bound_search, upper_bound_detector, EventKind};
use effan::exact_numeric::rational::{fraction_string, rat, to_f64};

pub fn main() {
    let x = CReal::constant(rat(3, 8));
    let result = dyadic_bound_search(|lambda| upper_bound_detector(&x, lambda), 14);
    let emits = result.events.iter().filter(|e| e.event == EventKind::Emit);
    for (b, e) in result.bounds.iter().zip(emits) {
        println!("round {:>2}  {:>8}  gap {:.6}", e.round, fraction_string(b), to_f64(b) - 0.375);
    }
    println!("{} events, {} machines still running", result.events.len(), result.live.len());
}
