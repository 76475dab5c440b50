use num_traits::{One, Zero};

use crate::creal::CReal;
use crate::exact_numeric::rational::{self, Rational};
use crate::exact_numeric::DyadicInterval;

/// A trigonometric coefficient: an exact rational, or a rational multiple of a computable real.
///
/// Keeping the rational factor separate lets derivative and Poisson scalings
/// stay comparable for equality even when the base value is irrational.
#[derive(Clone, Debug)]
pub enum Coeff {
    Exact(Rational),
    Real { scale: Rational, base: CReal },
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Exact(Rational::zero())
    }

    pub fn exact(q: Rational) -> Self {
        Coeff::Exact(q)
    }

    pub fn real(x: CReal) -> Self {
        match x.exact_value() {
            Some(q) => Coeff::Exact(q.clone()),
            None => Coeff::Real { scale: Rational::one(), base: x },
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Coeff::Exact(q) if q.is_zero())
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Coeff::Exact(q) => Some(q),
            Coeff::Real { .. } => None,
        }
    }

    pub fn to_creal(&self) -> CReal {
        match self {
            Coeff::Exact(q) => CReal::constant(q.clone()),
            Coeff::Real { scale, base } => base.scale(scale),
        }
    }

    pub fn scale(&self, q: &Rational) -> Coeff {
        if q.is_zero() {
            return Coeff::zero();
        }
        match self {
            Coeff::Exact(v) => Coeff::Exact(v * q),
            Coeff::Real { scale, base } => Coeff::Real { scale: scale * q, base: base.clone() },
        }
    }

    pub fn neg(&self) -> Coeff {
        self.scale(&-Rational::one())
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a + b),
            (c, Coeff::Exact(z)) | (Coeff::Exact(z), c) if z.is_zero() => c.clone(),
            (Coeff::Real { scale: s1, base: b1 }, Coeff::Real { scale: s2, base: b2 }) if b1.ptr_eq(b2) => {
                let s = s1 + s2;
                if s.is_zero() {
                    Coeff::zero()
                } else {
                    Coeff::Real { scale: s, base: b1.clone() }
                }
            }
            (a, b) => Coeff::real(a.to_creal().add(&b.to_creal())),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    /// Structural equality where it is decidable: `None` when it would need real-number equality.
    pub fn exact_eq(&self, other: &Coeff) -> Option<bool> {
        match (self, other) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Some(a == b),
            (Coeff::Real { scale: s1, base: b1 }, Coeff::Real { scale: s2, base: b2 }) if b1.ptr_eq(b2) => Some(s1 == s2),
            _ => None,
        }
    }

    /// Enclosure of width at most `2^-bits`.
    pub fn enclose(&self, bits: u32) -> DyadicInterval {
        match self {
            Coeff::Exact(q) => DyadicInterval::from_rational(q, bits + 1),
            Coeff::Real { scale, base } => {
                let extra = rational::magnitude_bits(scale) as u32 + 1;
                base.enclose(bits + extra + 1).mul_rational(scale, bits + 2)
            }
        }
    }
}

impl From<Rational> for Coeff {
    fn from(q: Rational) -> Self {
        Coeff::Exact(q)
    }
}

impl From<CReal> for Coeff {
    fn from(x: CReal) -> Self {
        Coeff::real(x)
    }
}
