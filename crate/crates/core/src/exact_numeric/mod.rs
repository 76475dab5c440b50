//! Exact rationals, dyadic intervals, and certified elementary functions.

pub mod dyadic;
pub mod elementary;
pub mod rational;

pub use dyadic::{interval_arith, ArithOp, Dyadic, DyadicInterval, IntervalJson};
pub use elementary::{enclose_cos, enclose_ln, enclose_sin, enclose_sin_cos, pi_enclosure};
pub use rational::{parse_rational, Rational};
