use crate::error::{Error, Result};
use crate::exact_numeric::rational::{self, Rational};
use crate::exact_numeric::{Dyadic, DyadicInterval};
use crate::trig_series::{certified_sup, EffectiveFunction, TrigPoly};

/// `r_n = 1 - 1/n`.
pub fn poisson_radius(n: u64) -> Rational {
    rational::int(1) - rational::rat(1, n as i64)
}

/// `2r/(1-r)^2`, bounding `||(P_r g)'|| / ||g||`.
pub fn poisson_derivative_gain(r: &Rational) -> Rational {
    let one = rational::int(1);
    let gap = &one - r;
    r * rational::int(2) / (&gap * &gap)
}

#[derive(Clone, Copy, Debug)]
pub enum DseqSource<'a> {
    Poly(&'a TrigPoly),
    Effective(&'a EffectiveFunction),
}

/// `d_n = max_t |d/dt (P_{r_n} u)(t)|`, width at most `2^-prec_bits`.
pub fn dseq_lower_bounds(u: DseqSource<'_>, n: u64, prec_bits: u32) -> Result<DyadicInterval> {
    if n < 2 {
        return Err(Error::validation("d_n needs n >= 2"));
    }
    let r = poisson_radius(n);
    match u {
        DseqSource::Poly(p) => Ok(certified_sup(&p.poisson(&r)?.derivative(), prec_bits)),
        DseqSource::Effective(f) => {
            let gain = poisson_derivative_gain(&r);
            let n_bits = prec_bits + 2 + rational::magnitude_bits(&gain) as u32 + 1;
            let p = f.approximant(f.modulus(n_bits));
            let s = certified_sup(&p.poisson(&r)?.derivative(), prec_bits + 2);
            // the residual g has ||g|| <= 2^-n_bits
            let slack = Dyadic::try_from_rational(&rational::pow2(-(n_bits as i64)))?;
            let slack = &slack * &Dyadic::ceil_of(&gain, 0);
            let lo = s.lo() - &slack;
            let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
            Ok(DyadicInterval::new_unchecked(lo, s.hi() + &slack))
        }
    }
}

/// `(n, d_n)` for `n` in `range`.
pub fn dseq_sequence(u: DseqSource<'_>, range: std::ops::RangeInclusive<u64>, prec_bits: u32) -> Result<Vec<(u64, DyadicInterval)>> {
    range.map(|n| dseq_lower_bounds(u, n, prec_bits).map(|d| (n, d))).collect()
}
