//! The polynomials p_n and partial sums u_m of u_A with their certified tail bounds.

use effan::derivative_lab::{build_ua, c1_enclosure, gauge_g, poly_p, UAFunction};
use effan::enumerators::Enumerator;
use effan::exact_numeric::rational::int;
use effan::trig_series::certified_sup;

pub fn main() {
    for n in [1, 2, 8, 32] {
        let g = gauge_g(n, 30).unwrap();
        let p = poly_p(n).unwrap();
        let d0 = p.derivative().eval(&int(0), 24);
        println!("G({n:>2}) = {:.8}   p_n'(0) in [{}, {}]", g.midpoint().to_f64(), d0.lo().to_decimal(), d0.hi().to_decimal());
    }
    println!("C1 in [{}, {}]", c1_enclosure(12).lo().to_decimal(), c1_enclosure(12).hi().to_decimal());

    let a = Enumerator::finite(&[1, 3, 4, 6, 7, 9, 10, 12]);
    let ua = UAFunction::new(&a, 1000);
    let u8 = build_ua(&mut a.restart(), 8, 1000).poly;
    for m in 0..8 {
        let gap = certified_sup(&u8.sub(&ua.partial(m).poly), 16);
        println!("||u_8 - u_{m}|| <= {:.6}   bound {:.6}", gap.hi().to_f64(), ua.tail_bound(m, 16).hi().to_f64());
    }
}
