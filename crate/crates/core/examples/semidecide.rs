//! Semideciding x > 0 and racing two semideciders.

use effan::creal::CReal;
use effan::dovetail::{race, run, semidecide_below, semidecide_positive};
use effan::exact_numeric::rational::{pow2, rat};

pub fn main() {
    for k in [1, 10, 20] {
        let mut m = semidecide_positive(&CReal::constant(pow2(-k)));
        println!("x = 2^-{k:<2}: {:?}", run(&mut m, 100));
    }
    let mut zero = semidecide_positive(&CReal::zero());
    println!("x = 0: {:?} after {} steps", run(&mut zero, 100_000), 100_000);

    let x = CReal::constant(rat(5, 8));
    let mut below = semidecide_below(&x, &rat(3, 4));
    let mut above = semidecide_positive(&x.sub(&CReal::constant(rat(1, 2))));
    println!("race x < 3/4 vs x > 1/2: {:?}", race(&mut below, &mut above, 50));
}
