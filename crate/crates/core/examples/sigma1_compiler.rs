//! Compiling x[A] into a function whose derivative has sup norm x[A].

use effan::creal::{Direction, MonotoneWitness};
use effan::derivative_lab::{sigma1_general_construction, sigma1_to_function, GaugeSchedule};
use effan::enumerators::Enumerator;
use effan::exact_numeric::rational::{fraction_string, int, rat};
use effan::trig_series::certified_sup;

pub fn main() {
    for set in [vec![2u64, 3], vec![1, 5], vec![3, 4, 8, 9]] {
        let mut e = Enumerator::finite(&set);
        let u = sigma1_to_function(&mut e, set.len(), 100);
        let s = certified_sup(&u.poly.derivative(), 20);
        println!("A = {set:?}: x = {:<8} ||u'|| in [{:.7}, {:.7}]", fraction_string(&u.weight()), s.lo().to_f64(), s.hi().to_f64());
    }

    let w = MonotoneWitness::from_prefix(Direction::Nondecreasing, vec![int(0), rat(1, 4), rat(3, 8), rat(7, 16)]);
    let schedule = GaugeSchedule::new(vec![1, 3, 6], int(4)).unwrap();
    let p = sigma1_general_construction(&w, &schedule, 3).unwrap();
    println!("P_3' sup {:.7}", certified_sup(&p.derivative(), 20).midpoint().to_f64());
    match GaugeSchedule::threshold_rule(2, 1000) {
        Ok(s) => println!("threshold schedule {:?}", s.indices()),
        Err(e) => println!("{e}"),
    }
}
