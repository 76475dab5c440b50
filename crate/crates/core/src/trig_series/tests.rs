use super::*;
use crate::creal::CReal;
use crate::exact_numeric::rational::{int, pow2, rat, to_f64};
use crate::exact_numeric::{enclose_sin, Dyadic, Rational};

fn poly(cos: &[Rational], sin: &[Rational]) -> TrigPoly {
    TrigPoly::from_rationals(cos, sin).unwrap()
}

fn f64_eval(cos: &[f64], sin: &[f64], t: f64) -> f64 {
    let mut v = cos[0] / 2.0;
    for (k, a) in cos.iter().enumerate().skip(1) {
        v += a * (k as f64 * t).cos();
    }
    for (k, b) in sin.iter().enumerate() {
        v += b * ((k + 1) as f64 * t).sin();
    }
    v
}

#[test]
fn eval_matches_float_reference() {
    let p = poly(&[int(1), rat(1, 2), rat(-1, 3)], &[rat(2, 5), rat(-7, 4)]);
    for t in [rat(0, 1), rat(1, 3), rat(7, 2), rat(-11, 5), rat(40, 1)] {
        let v = p.eval(&t, 40);
        assert!(v.width_within(40));
        let reference = f64_eval(&[1.0, 0.5, -1.0 / 3.0], &[0.4, -1.75], to_f64(&t));
        assert!((v.midpoint().to_f64() - reference).abs() < 1e-12, "t={t}");
    }
}

#[test]
fn eval_of_sine_is_sine() {
    let p = TrigPoly::sine(1, int(1));
    let v = p.eval(&int(1), 50);
    assert!(v.overlaps(&enclose_sin(&int(1), 60)));
    assert!((v.midpoint().to_f64() - 0.8414709848078965).abs() < 1e-15);
}

#[test]
fn high_degree_eval_stays_tight() {
    let cos: Vec<Rational> = (0..=80).map(|k| rat(1, (k + 1) * (k + 1))).collect();
    let sin: Vec<Rational> = (1..=80).map(|k| rat(-1, k * k + 3)).collect();
    let p = poly(&cos, &sin);
    let cf: Vec<f64> = cos.iter().map(to_f64).collect();
    let sf: Vec<f64> = sin.iter().map(to_f64).collect();
    let v = p.eval(&rat(13, 7), 30);
    assert!(v.width_within(30));
    assert!((v.midpoint().to_f64() - f64_eval(&cf, &sf, 13.0 / 7.0)).abs() < 1e-8);
}

#[test]
fn derivative_is_termwise() {
    let p = poly(&[int(3), int(2), int(5)], &[int(7), rat(1, 2)]);
    let d = p.derivative();
    // d/dt (2 cos t + 5 cos 2t + 7 sin t + 1/2 sin 2t)
    let expected = poly(&[int(0), int(7), int(1)], &[int(-2), int(-10)]);
    assert_eq!(d.exact_eq(&expected), Some(true));
    assert_eq!(derivative(&d).exact_eq(&p.derivative().derivative()), Some(true));
}

#[test]
fn poisson_damps_harmonics() {
    let p = poly(&[int(4), int(1), int(1)], &[int(1), int(1)]);
    let r = rat(1, 2);
    let q = poisson(&p, &r).unwrap();
    let expected = poly(&[int(4), rat(1, 2), rat(1, 4)], &[rat(1, 2), rat(1, 4)]);
    assert_eq!(q.exact_eq(&expected), Some(true));
    assert!(p.poisson(&int(1)).is_err());
    assert!(p.poisson(&rat(-1, 3)).is_err());
    let zero = p.poisson(&int(0)).unwrap();
    assert_eq!(zero.exact_eq(&TrigPoly::constant(int(2))), Some(true));
}

#[test]
fn poisson_commutes_with_derivative() {
    let p = poly(&[int(1), rat(1, 3), int(-2)], &[rat(5, 7), int(1)]);
    let r = rat(3, 5);
    let a = p.poisson(&r).unwrap().derivative();
    let b = p.derivative().poisson(&r).unwrap();
    assert_eq!(a.exact_eq(&b), Some(true));
}

#[test]
fn exact_eq_pads_degrees() {
    let short = poly(&[int(1), int(2)], &[int(3)]);
    let long = poly(&[int(1), int(2), int(0)], &[int(3), int(0)]);
    assert_eq!(short.exact_eq(&long), Some(true));
    let other = poly(&[int(1), int(2), int(0)], &[int(3), rat(1, 1000)]);
    assert_eq!(short.exact_eq(&other), Some(false));
}

#[test]
fn real_coefficients_scale_exactly() {
    let x = CReal::from_oracle("third", |n| Dyadic::floor_of(&rat(1, 3), n + 1).to_rational());
    let p = TrigPoly::sine(2, Coeff::real(x));
    let lhs = p.scale(&int(3)).derivative();
    let rhs = p.derivative().scale(&int(3));
    assert_eq!(lhs.exact_eq(&rhs), Some(true));
    let v = lhs.eval(&rat(1, 5), 30);
    // 3 * 2 * (1/3) * cos(2/5)
    assert!((v.midpoint().to_f64() - 2.0 * (0.4f64).cos()).abs() < 1e-8);
}

#[test]
fn sup_of_two_sines() {
    let p = poly(&[int(0), int(0), int(0)], &[int(1), int(1)]);
    let s = certified_sup(&p, 20);
    assert!(s.width_within(20));
    // max of sin t + sin 2t
    let reference = 1.760_172_593_046_087;
    assert!(s.lo().to_f64() <= reference + 1e-12 && reference - 1e-12 <= s.hi().to_f64());
}

#[test]
fn sup_of_constant_and_cosine() {
    let c = certified_sup(&TrigPoly::constant(rat(-3, 4)), 20);
    assert!(c.contains_rational(&rat(3, 4)));
    let k = certified_sup(&TrigPoly::cosine(5, rat(2, 3)), 24);
    assert!(k.contains_rational(&rat(2, 3)));
    assert!(k.width_within(24));
}

#[test]
fn sup_bounded_by_wiener_norm() {
    let cos: Vec<Rational> = (0..=40).map(|k| rat(if k % 3 == 0 { 1 } else { -1 }, k * k + 1)).collect();
    let sin: Vec<Rational> = (1..=40).map(|k| rat(1, 2 * k * k)).collect();
    let p = poly(&cos, &sin);
    let s = certified_sup(&p, 20);
    let w = wiener_norm(&p, 20);
    assert!(s.hi() <= w.hi());
    // dense float scan as an independent lower estimate
    let cf: Vec<f64> = cos.iter().map(to_f64).collect();
    let sf: Vec<f64> = sin.iter().map(to_f64).collect();
    let scan = (0..200_000).map(|i| f64_eval(&cf, &sf, i as f64 * std::f64::consts::TAU / 200_000.0).abs()).fold(0.0, f64::max);
    assert!(s.lo().to_f64() >= scan - 1e-6 && s.hi().to_f64() <= scan + 1e-5);
}

#[test]
fn wiener_norm_exact_cases() {
    let p = poly(&[int(2), rat(-1, 2)], &[rat(1, 4)]);
    let w = p.wiener_norm(30);
    assert!(w.contains_rational(&rat(7, 4)));
    assert!(w.width_within(30));
}

#[test]
fn effective_eval_and_sup() {
    // f = sum_k 2^-k sin(kt), truncated at modulus N -> N + 2 terms
    let f = EffectiveFunction::new(
        |m| {
            let sin: Vec<Rational> = (1..=m.max(1)).map(|k| pow2(-(k as i64))).collect();
            let cos = vec![int(0); sin.len() + 1];
            TrigPoly::from_rationals(&cos, &sin).unwrap()
        },
        |n| n as usize + 2,
    );
    let t = rat(1, 2);
    let v = f.eval_at(&t).approx(30);
    // closed form: sum 2^-k sin(kt) = Im(z/(1-z)), z = e^{it}/2
    let (s, c) = (0.5f64.sin(), 0.5f64.cos());
    let z_re = c / 2.0;
    let z_im = s / 2.0;
    let den = (1.0 - z_re).powi(2) + z_im * z_im;
    let im = (z_im * (1.0 - z_re) + z_re * z_im) / den;
    assert!((to_f64(&v) - im).abs() < 1e-8);
    let sup = f.sup_norm(12);
    assert!(sup.width_within(11));
}

#[test]
fn json_roundtrip() {
    let input: TrigPolyInput = serde_json::from_str(r#"{"degree":2,"cos":["1","1/2"],"sin":["0","-3/4"]}"#).unwrap();
    let p = TrigPoly::from_input(&input).unwrap();
    assert_eq!(p.degree(), 2);
    let expected = poly(&[int(1), rat(1, 2), int(0)], &[int(0), rat(-3, 4)]);
    assert_eq!(p.exact_eq(&expected), Some(true));
    let j = p.to_json(20);
    assert_eq!(j.cos.len(), 3);
    assert_eq!(j.sin.len(), 2);
    let bad: TrigPolyInput = serde_json::from_str(r#"{"degree":1,"cos":["1","2","3"],"sin":[]}"#).unwrap();
    assert!(TrigPoly::from_input(&bad).is_err());
}
