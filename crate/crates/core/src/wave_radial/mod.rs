//! Radial solutions of the wave equation `u_tt = Laplace u` in three space
//! dimensions with `u(0, x) = q(|x|)` and `u_t(0, x) = 0`.
//!
//! At the origin the spherical-mean formula collapses to `u(t, 0) = q(t) + t q'(t)`.

mod pi_expr;
mod profile;

pub use pi_expr::PiExpr;
pub use profile::{quartic_bump, sextic_bump, window, zero_profile, LocalPoly, ProfileJson, RadialProfile};

use crate::error::{Error, Result};
use crate::exact_numeric::rational::{self, Rational};
use crate::exact_numeric::DyadicInterval;

use num_traits::Signed;

/// Enclosure of `u(t, 0) = q(t) + t q'(t)`, width at most `2^-prec_bits`.
pub fn wave_at_origin(q: &RadialProfile, t: &Rational, prec_bits: u32) -> Result<DyadicInterval> {
    if !t.is_positive() {
        return Err(Error::domain(format!("wave_at_origin needs t > 0, got {}", rational::fraction_string(t))));
    }
    let mut extra = 4 + rational::magnitude_bits(t) as u32;
    loop {
        let w = prec_bits + extra;
        let v = q.enclose_value(t, w);
        let d = q.enclose_derivative(t, w);
        let out = &v + &d.mul_rational(t, w + 2);
        if out.width_within(prec_bits) {
            return Ok(out);
        }
        extra *= 2;
    }
}

/// `(t_i, u(t_i, 0))` on `steps + 1` evenly spaced times in `[t0, t1]`.
pub fn wave_sweep(q: &RadialProfile, t0: &Rational, t1: &Rational, steps: u32, prec_bits: u32) -> Result<Vec<(Rational, DyadicInterval)>> {
    if steps == 0 {
        return Err(Error::validation("a sweep needs at least one step"));
    }
    let dt = (t1 - t0) / rational::int(steps as i64);
    (0..=steps)
        .map(|i| {
            let t = t0 + &dt * rational::int(i as i64);
            wave_at_origin(q, &t, prec_bits).map(|v| (t, v))
        })
        .collect()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Latitude-longitude quadrature sizes for the spherical mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphereRule {
    pub latitudes: usize,
    pub longitudes: usize,
}

impl Default for SphereRule {
    fn default() -> Self {
        SphereRule { latitudes: 96, longitudes: 64 }
    }
}

/// `s` times the mean of `q(|x + s w|)` over unit vectors `w`.
fn spherical_moment(q: &RadialProfile, s: f64, x: [f64; 3], rule: SphereRule, nodes: &[(f64, f64)]) -> f64 {
    let mut total = 0.0;
    for &(mu, wt) in nodes {
        let sin_theta = (1.0 - mu * mu).max(0.0).sqrt();
        let mut ring = 0.0;
        for j in 0..rule.longitudes {
            let phi = std::f64::consts::TAU * j as f64 / rule.longitudes as f64;
            let p = [x[0] + s * sin_theta * phi.cos(), x[1] + s * sin_theta * phi.sin(), x[2] + s * mu];
            ring += q.eval_f64((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()).0;
        }
        total += wt * ring / rule.longitudes as f64;
    }
    // the weights integrate to 2 over mu in [-1, 1]
    s * total / 2.0
}

/// Uncertified `u(t, x)` from the spherical-mean formula with a central time difference of step `h`.
pub fn kirchhoff_quadrature_oracle(q: &RadialProfile, t: f64, x: [f64; 3], h: f64) -> f64 {
    kirchhoff_with_rule(q, t, x, h, SphereRule::default())
}

pub fn kirchhoff_with_rule(q: &RadialProfile, t: f64, x: [f64; 3], h: f64, rule: SphereRule) -> f64 {
    let nodes = gauss_legendre(rule.latitudes);
    (spherical_moment(q, t + h, x, rule, &nodes) - spherical_moment(q, t - h, x, rule, &nodes)) / (2.0 * h)
}

/// Oracle values at `h`, `h/2`, `h/4` and two Richardson extrapolations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RichardsonEstimate {
    pub steps: [f64; 3],
    pub raw: [f64; 3],
    pub extrapolated: [f64; 2],
}

impl RichardsonEstimate {
    /// The extrapolation from the two finest steps.
    pub fn best(&self) -> f64 {
        self.extrapolated[1]
    }

    /// Disagreement between the two extrapolations.
    pub fn spread(&self) -> f64 {
        (self.extrapolated[1] - self.extrapolated[0]).abs()
    }
}

pub fn kirchhoff_richardson(q: &RadialProfile, t: f64, x: [f64; 3], h: f64) -> RichardsonEstimate {
    let steps = [h, h / 2.0, h / 4.0];
    let raw = steps.map(|s| kirchhoff_quadrature_oracle(q, t, x, s));
    // central differences have an h^2 leading error
    let r = |a: f64, b: f64| (4.0 * b - a) / 3.0;
    RichardsonEstimate { steps, raw, extrapolated: [r(raw[0], raw[1]), r(raw[1], raw[2])] }
}
