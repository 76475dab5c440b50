//! Radial waves at the origin: closed form against spherical-mean quadrature.

use effan::exact_numeric::rational::{from_f64, to_f64};
use effan::wave_radial::{kirchhoff_richardson, quartic_bump, sextic_bump, wave_at_origin, window, PiExpr};

pub fn main() {
    let plateau = window(&PiExpr::parse("3/2 pi").unwrap(), &PiExpr::parse("5/2 pi").unwrap()).unwrap();
    for (name, q) in [("bump", quartic_bump()), ("sextic", sextic_bump()), ("window", plateau)] {
        for tf in [3.0, 1.5 * std::f64::consts::PI, 2.0 * std::f64::consts::PI, 8.5, 10.0] {
            let t = from_f64(tf).unwrap();
            let u = wave_at_origin(&q, &t, 40).unwrap();
            let est = kirchhoff_richardson(&q, to_f64(&t), [0.0; 3], 1e-3);
            println!("{name:<7} t = {tf:<7.4} u = {:>14.9}  quadrature {:>14.9}", u.midpoint().to_f64(), est.best());
        }
    }
}
