//! Certified enclosures of pi, sin, cos and ln, and exact interval arithmetic.

use effan::exact_numeric::rational::{int, rat};
use effan::exact_numeric::{enclose_cos, enclose_ln, enclose_sin, interval_arith, pi_enclosure, ArithOp, DyadicInterval};

fn show(label: &str, x: &DyadicInterval) {
    println!("{label:<14} [{}, {}]", x.lo().to_decimal(), x.hi().to_decimal());
}

pub fn main() {
    show("pi", &pi_enclosure(60));
    show("sin 1", &enclose_sin(&int(1), 40));
    show("cos 1", &enclose_cos(&int(1), 40));
    show("ln 2", &enclose_ln(&int(2), 40).unwrap());

    let (s, c) = (enclose_sin(&rat(355, 113), 40), enclose_cos(&rat(355, 113), 40));
    show("sin^2+cos^2", &(&s.square() + &c.square()));

    let a = DyadicInterval::from_rational(&rat(1, 3), 20);
    let b = DyadicInterval::from_int(4);
    show("1/3 / 4", &interval_arith(&a, &b, ArithOp::Div, 20).unwrap());
    println!("json: {}", serde_json::to_string(&a.to_json(20)).unwrap());
    println!("ln(-1): {}", enclose_ln(&int(-1), 10).unwrap_err());
}
