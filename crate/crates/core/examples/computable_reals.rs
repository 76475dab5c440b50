//! Computable reals: arithmetic on oracles and difference quotients of sin 2t.

use effan::creal::{diff_quotient_sequence, CReal};
use effan::exact_numeric::enclose_sin;
use effan::exact_numeric::rational::{int, rat, to_f64};
use effan::trig_series::{EffectiveFunction, TrigPoly};

pub fn main() {
    let sin1 = CReal::from_enclosure("sin 1", |b| enclose_sin(&int(1), b));
    let x = sin1.mul(&sin1).add(&CReal::constant(rat(1, 3)));
    println!("sin(1)^2 + 1/3 = {}", x.to_json(40).approx);

    let u = EffectiveFunction::from_poly(TrigPoly::sine(2, int(1)));
    let r = diff_quotient_sequence(&u, &int(0));
    for n in [1u64, 2, 10, 100] {
        let v = to_f64(&r.term(n).approx(30));
        println!("r_{n:<3} = {v:.9}   |r_n - 2| = {:.2e} <= 2/n = {:.2e}", (v - 2.0).abs(), 2.0 / n as f64);
    }
}
