//! Certified sup norms, Wiener norms and the Poisson operator.

use effan::exact_numeric::rational::{int, rat};
use effan::trig_series::{certified_sup_with_stats, TrigPoly};

pub fn main() {
    let p = TrigPoly::from_rationals(&[int(0), int(0), int(0)], &[int(1), int(1)]).unwrap();
    let (s, stats) = certified_sup_with_stats(&p, 30);
    println!("max |sin t + sin 2t| in [{}, {}] after {} evaluations", s.lo().to_decimal(), s.hi().to_decimal(), stats.evaluations);
    println!("Wiener norm {}", p.wiener_norm(20).hi().to_decimal());

    for r in [rat(1, 2), rat(9, 10), rat(99, 100)] {
        let smoothed = p.poisson(&r).unwrap();
        let (s, _) = certified_sup_with_stats(&smoothed, 20);
        println!("r = {r:<6} sup P_r p = {:.8}", s.midpoint().to_f64());
    }
    let twice = p.poisson(&rat(1, 2)).unwrap().poisson(&rat(1, 3)).unwrap();
    println!("P_1/3 P_1/2 = P_1/6: {:?}", twice.exact_eq(&p.poisson(&rat(1, 6)).unwrap()));
}
