//! Exact trigonometric polynomials, effective functions on the circle,
//! certified sup and Wiener norms, and the Poisson operator.

mod coeff;
mod effective;
mod poly;
mod sup;

pub use coeff::Coeff;
pub use effective::EffectiveFunction;
pub use poly::{CoeffInput, PreparedPoly, TrigPoly, TrigPolyInput, TrigPolyJson};
pub use sup::{certified_sup, certified_sup_with_stats, SupStats};

/// Free-function form of [`TrigPoly::eval`].
pub fn eval(p: &TrigPoly, t: &crate::exact_numeric::Rational, prec_bits: u32) -> crate::exact_numeric::DyadicInterval {
    p.eval(t, prec_bits)
}

pub fn derivative(p: &TrigPoly) -> TrigPoly {
    p.derivative()
}

pub fn wiener_norm(p: &TrigPoly, prec_bits: u32) -> crate::exact_numeric::DyadicInterval {
    p.wiener_norm(prec_bits)
}

pub fn poisson(p: &TrigPoly, r: &crate::exact_numeric::Rational) -> crate::Result<TrigPoly> {
    p.poisson(r)
}

#[cfg(test)]
mod tests;
