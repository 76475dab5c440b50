//! A register machine enumerating the squares, and its Specker-number witness.

use effan::enumerators::{specker_sequence, squares_program, zw_real, Enumerator};
use effan::exact_numeric::rational::{fraction_string, to_f64};

pub fn main() {
    let mut e = Enumerator::vm(&squares_program()).unwrap();
    println!("first 100 steps emit {:?}", e.step(100));
    println!("next 2000 steps emit {:?}", e.step(2000));

    let w = specker_sequence(&e);
    for m in [6, 31, 74, 500] {
        println!("witness after {m:>3} steps: {}", to_f64(&w.term(m)));
    }

    let evens = zw_real(&Enumerator::finite(&[2, 4]));
    let exact = evens.value.unwrap();
    println!("x[{{2,4}}] = {}", fraction_string(exact.exact_value().unwrap()));
}
