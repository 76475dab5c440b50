//! The gauge `G(n)`, the polynomials `p_n`, the functions `u_A` and their
//! partial sums, the compiler from Sigma_1 numbers to functions, and the
//! Poisson sequence `d_n` approaching `||u'||` from below.
//!
//! `ln` is the natural logarithm throughout.

mod dseq;
mod gauge;
mod ua;

pub use dseq::{dseq_lower_bounds, dseq_sequence, poisson_derivative_gain, poisson_radius, DseqSource};
pub use gauge::{c1_enclosure, gauge_creal, gauge_g, gauge_lower_estimate, increments, k0_enclosure, ln_int, GaugeSchedule};
pub use ua::{build_ua, poly_p, sigma1_general_construction, sigma1_to_function, UAFunction, UaPartial};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::creal::{Direction, MonotoneWitness};
    use crate::enumerators::Enumerator;
    use crate::exact_numeric::rational::{int, pow2, rat};
    use crate::exact_numeric::Rational;
    use crate::trig_series::{certified_sup, TrigPoly};

    // reference values computed with mpmath at 30 digits
    const G1: f64 = 0.7213475204444817;
    const G2: f64 = 1.0247605959867608;
    const C1: f64 = 0.6055162159363109;

    #[test]
    fn gauge_values() {
        let g1 = gauge_g(1, 40).unwrap();
        assert!(g1.width_within(40));
        assert!((g1.midpoint().to_f64() - G1).abs() < 1e-12);
        assert!((gauge_g(2, 40).unwrap().midpoint().to_f64() - G2).abs() < 1e-12);
        for n in 1..20 {
            let (a, b) = (gauge_g(n, 30).unwrap(), gauge_g(n + 1, 30).unwrap());
            assert!(a.hi() < b.lo());
        }
        assert!(gauge_g(0, 10).is_err());
    }

    #[test]
    fn c1_and_k0() {
        let c = c1_enclosure(12);
        assert!(c.width_within(12));
        assert!(c.lo().to_f64() <= C1 && C1 <= c.hi().to_f64());
        let k = k0_enclosure(10);
        assert!(k.lo().to_f64() <= 2.0 * C1 && 2.0 * C1 <= k.hi().to_f64());
    }

    #[test]
    fn p_n_basics() {
        for n in [1, 2, 5, 12] {
            let p = poly_p(n).unwrap();
            assert_eq!(p.degree(), n + 1);
            assert!(p.eval(&int(0), 30).contains_rational(&int(0)));
            let d0 = p.derivative().eval(&int(0), 24);
            assert!(d0.contains_rational(&int(1)) && d0.width_within(24));
        }
        // p_1 = sin(2t) / (4 G(1) ln 2) = sin(2t) / 2
        let w = poly_p(1).unwrap().wiener_norm(30);
        assert!(w.contains_rational(&rat(1, 2)));
        assert!(poly_p(0).is_err());
    }

    #[test]
    fn p_n_sup_bounds() {
        for n in [1, 3, 8] {
            let p = poly_p(n).unwrap();
            assert!(certified_sup(&p.derivative(), 20).contains_rational(&int(1)));
            // |p_n| <= C1 / G(n)
            let s = certified_sup(&p, 20);
            let g = gauge_g(n, 30).unwrap();
            assert!(s.hi().to_f64() <= C1 / g.lo().to_f64() + 1e-6);
        }
    }

    #[test]
    fn ua_partials() {
        let mut e = Enumerator::finite(&[1]);
        let u0 = build_ua(&mut e, 0, 100);
        assert_eq!(u0.poly.exact_eq(&TrigPoly::zero(0)), Some(true));
        let u1 = build_ua(&mut e, 1, 100);
        assert!(!u1.saturated);
        assert!(u1.poly.derivative().eval(&int(0), 30).contains_rational(&rat(1, 2)));
        let u5 = build_ua(&mut e, 5, 100);
        assert!(u5.saturated);
        assert_eq!(u5.values, vec![1]);
    }

    #[test]
    fn tail_law_small_set() {
        let e = Enumerator::finite(&[2, 1, 5, 3]);
        let ua = UAFunction::new(&e, 1000);
        let c1_lo = c1_enclosure(12).lo().to_rational();
        for m in 0..4 {
            let um = ua.partial(m).poly;
            let g = gauge_g(m + 1, 30).unwrap();
            for big in (m + 1)..=4 {
                let d = certified_sup(&ua.partial(big).poly.sub(&um), 20);
                let bound = rational::to_f64(&(&c1_lo * int(2))) / g.hi().to_f64();
                assert!(d.hi().to_f64() <= bound + 1e-6, "m={m} M={big}");
            }
            let t = ua.tail_bound(m, 20);
            let reference = 2.0 * C1 / g.midpoint().to_f64();
            assert!(t.lo().to_f64() <= reference && reference <= t.hi().to_f64());
        }
    }

    #[test]
    fn compiler_identity() {
        for (set, x) in [(vec![2u64, 3], 0.375), (vec![], 0.0), (vec![1], 0.5)] {
            let mut e = Enumerator::finite(&set);
            let u = sigma1_to_function(&mut e, set.len(), 100);
            let s = certified_sup(&u.poly.derivative(), 20);
            assert!(s.lo().to_f64() <= x + 1e-9 && x - 1e-9 <= s.hi().to_f64(), "{set:?}");
        }
    }

    #[test]
    fn general_construction() {
        let zero = MonotoneWitness::constant(int(0));
        let sched = GaugeSchedule::new(vec![2, 3, 5], int(3)).unwrap();
        let p = sigma1_general_construction(&zero, &sched, 3).unwrap();
        assert!(certified_sup(&p, 20).hi().to_f64() < 1e-6);
        let half = MonotoneWitness::from_prefix(Direction::Nondecreasing, vec![int(0), rat(1, 2)]);
        let p = sigma1_general_construction(&half, &sched, 1).unwrap();
        let expected = poly_p(2).unwrap().scale(&rat(1, 2));
        let diff = certified_sup(&p.sub(&expected), 24);
        assert!(diff.hi().to_f64() < 1e-6);
        assert!(sigma1_general_construction(&half, &sched, 4).is_err());
    }

    #[test]
    fn general_construction_remainder() {
        let w = MonotoneWitness::from_prefix(
            Direction::Nondecreasing,
            vec![int(0), rat(1, 4), rat(3, 8), rat(1, 2), rat(9, 16)],
        );
        let sched = GaugeSchedule::new(vec![1, 2, 4, 7], int(4)).unwrap();
        let full = sigma1_general_construction(&w, &sched, 4).unwrap().derivative();
        for k in 0..4 {
            let part = sigma1_general_construction(&w, &sched, k).unwrap().derivative();
            let gap = certified_sup(&full.sub(&part), 20);
            let bound: Rational = rat(9, 16) - w.term(k);
            assert!(gap.lo().to_rational() <= bound.clone() + pow2(-20), "K={k}");
        }
    }

    #[test]
    fn schedules() {
        assert!(GaugeSchedule::new(vec![3, 3], int(10)).is_err());
        assert!(GaugeSchedule::new(vec![1, 2], int(1)).is_err());
        let rule = GaugeSchedule::threshold_rule(1, 10).unwrap();
        assert_eq!(rule.indices(), &[2]);
        assert!(GaugeSchedule::threshold_rule(2, 200).is_err());
    }

    #[test]
    fn dseq_on_sine_and_constant() {
        let s = TrigPoly::sine(1, int(1));
        let mut prev = None;
        for n in 2..=12u64 {
            let d = dseq_lower_bounds(DseqSource::Poly(&s), n, 20).unwrap();
            assert!(d.contains_rational(&poisson_radius(n)));
            if let Some(p) = prev {
                let p: crate::exact_numeric::DyadicInterval = p;
                assert!(p.lo() <= d.hi());
            }
            prev = Some(d);
        }
        let c = TrigPoly::constant(int(5));
        assert!(dseq_lower_bounds(DseqSource::Poly(&c), 3, 20).unwrap().contains_rational(&int(0)));
        assert!(dseq_lower_bounds(DseqSource::Poly(&c), 1, 20).is_err());
    }

    #[test]
    fn dseq_effective_matches_poly() {
        let e = Enumerator::finite(&[1, 3]);
        let ua = UAFunction::new(&e, 100);
        let f = ua.effective();
        let p = ua.partial(2).poly;
        for n in [2, 5, 9] {
            let a = dseq_lower_bounds(DseqSource::Effective(&f), n, 16).unwrap();
            let b = dseq_lower_bounds(DseqSource::Poly(&p), n, 16).unwrap();
            assert!(a.overlaps(&b) && a.width_within(16));
        }
    }

    fn kernel_derivative_l1(r: f64, samples: usize) -> f64 {
        // P_r(t) = (1 - r^2) / (2 pi (1 - 2 r cos t + r^2))
        let h = std::f64::consts::TAU / samples as f64;
        (0..samples)
            .map(|i| {
                let t = (i as f64 + 0.5) * h;
                let d = 1.0 - 2.0 * r * t.cos() + r * r;
                ((1.0 - r * r) * 2.0 * r * t.sin() / (std::f64::consts::TAU * d * d)).abs() * h
            })
            .sum()
    }

    #[test]
    fn poisson_derivative_gain_dominates_kernel() {
        for n in [2u64, 3, 5, 10, 32, 100] {
            let r = poisson_radius(n);
            let rf = rational::to_f64(&r);
            let l1 = kernel_derivative_l1(rf, 400_000);
            let closed = 4.0 * rf / (std::f64::consts::PI * (1.0 - rf * rf));
            assert!((l1 - closed).abs() < 1e-6 * closed.max(1.0), "n={n}: {l1} vs {closed}");
            assert!(l1 <= rational::to_f64(&poisson_derivative_gain(&r)));
        }
    }

    #[test]
    fn infinite_set_modulus_saturates() {
        let ua = UAFunction::new(&Enumerator::progression(1, 1), 1000);
        let f = ua.effective();
        assert!(f.modulus(0) < 64);
        assert!(f.modulus(1) > 1000);
        assert_eq!(f.modulus(3), usize::MAX);
    }

    use crate::exact_numeric::rational;
}
