//! The nondecreasing Poisson sequence d_n approaching ||u'|| from below.

use effan::derivative_lab::{build_ua, dseq_lower_bounds, DseqSource};
use effan::enumerators::Enumerator;
use effan::trig_series::certified_sup;

pub fn main() {
    let mut e = Enumerator::finite(&[1, 2, 4, 5, 7, 8, 10, 11]);
    let u = build_ua(&mut e, 8, 100).poly;
    let norm = certified_sup(&u.derivative(), 20);
    for n in [2u64, 4, 8, 16, 32, 64] {
        let d = dseq_lower_bounds(DseqSource::Poly(&u), n, 20).unwrap();
        println!("d_{n:<2} = {:.7}", d.midpoint().to_f64());
    }
    println!("||u_8'|| = {:.7}", norm.midpoint().to_f64());
}
