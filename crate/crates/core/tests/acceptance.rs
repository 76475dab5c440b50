//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

use std::io::Write;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use effan::creal::{diff_quotient_sequence, CReal};
use effan::derivative_lab::{c1_enclosure, dseq_lower_bounds, gauge_g, poly_p, DseqSource, UAFunction};
use effan::dovetail::{dyadic_bound_search, run, semidecide_positive, upper_bound_detector, EventKind, SearchEvent, Status};
use effan::enumerators::Enumerator;
use effan::exact_numeric::rational::{from_f64, int, pow2, rat, to_f64, Rational};
use effan::exact_numeric::{enclose_cos, enclose_ln, enclose_sin, interval_arith, ArithOp, Dyadic, DyadicInterval};
use effan::trig_series::{certified_sup, EffectiveFunction, TrigPoly};
use effan::wave_radial::{kirchhoff_richardson, quartic_bump, sextic_bump, wave_at_origin, window, PiExpr, RadialProfile};

const GOLDEN_3_8: &str = include_str!("golden/search_bound_3_8.json");

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_rational(rng: &mut StdRng, num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn random_unit(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(0..=1000), 1000)
}

fn width_ok(iv: &DyadicInterval, bits: u32) -> bool {
    iv.width().to_rational() <= pow2(-(bits as i64))
}

fn c1_enclosure_contracts() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let ops = [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div];
    let mut failures = Vec::new();
    for i in 0..1000 {
        let bits = rng.gen_range(10..=40u32);
        let (a0, a1) = {
            let x = random_rational(&mut rng, 50, 17);
            (x.clone(), x + rat(rng.gen_range(0..=20), rng.gen_range(1..=13)))
        };
        let op = ops[i % 4];
        let (b0, b1) = if op == ArithOp::Div {
            let lo = rat(rng.gen_range(1..=40), 10);
            let hi = &lo + rat(rng.gen_range(0..=10), 10);
            if rng.gen_bool(0.5) { (-hi, -lo) } else { (lo, hi) }
        } else {
            let x = random_rational(&mut rng, 50, 17);
            (x.clone(), x + rat(rng.gen_range(0..=20), rng.gen_range(1..=13)))
        };
        let a = DyadicInterval::from_rational_bounds(&a0, &a1, bits);
        let b = DyadicInterval::from_rational_bounds(&b0, &b1, bits);
        let x = &a0 + (&a1 - &a0) * random_unit(&mut rng);
        let y = &b0 + (&b1 - &b0) * random_unit(&mut rng);
        let exact = match op {
            ArithOp::Add => &x + &y,
            ArithOp::Sub => &x - &y,
            ArithOp::Mul => &x * &y,
            ArithOp::Div => &x / &y,
        };
        let got = interval_arith(&a, &b, op, bits).expect("divisor excludes zero");
        if !got.contains_rational(&exact) {
            failures.push(format!("containment {op:?} #{i}"));
        }

        // width contract on single-valued enclosures
        let q = random_rational(&mut rng, 400, 97);
        let w = match i % 5 {
            0 => DyadicInterval::from_rational(&q, bits),
            1 => {
                // exact dyadic divisor, so the quotient is a single real number
                let d = Dyadic::floor_of(&q, 6);
                let d = if d.is_zero() { Dyadic::from_int(3) } else { d };
                DyadicInterval::from_int(1).div(&DyadicInterval::point(d), bits).unwrap()
            }
            2 => enclose_sin(&q, bits),
            3 => enclose_cos(&q, bits),
            _ => enclose_ln(&(q.abs() + rat(1, 7)), bits).unwrap(),
        };
        if !width_ok(&w, bits) {
            failures.push(format!("width #{i} at {bits} bits"));
        }
    }
    let mut pyth = 0;
    for _ in 0..50 {
        let t = random_rational(&mut rng, 1000, 37);
        let (s, c) = (enclose_sin(&t, 40), enclose_cos(&t, 40));
        if (&s.square() + &c.square()).contains_rational(&int(1)) {
            pyth += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && pyth == 50 && elapsed < Duration::from_secs(10);
    outcome(pass, format!("{} failures {:?}, sin^2+cos^2 brackets 1 at {pyth}/50, {:.2?} (limit 10 s)", failures.len(), &failures[..failures.len().min(8)], elapsed))
}

fn c2_p_derivative_at_zero() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=64 {
        let dp = poly_p(n).unwrap().derivative();
        let at0 = dp.eval(&int(0), 20);
        let sup = certified_sup(&dp, 20);
        if !(at0.contains_rational(&int(1)) && width_ok(&at0, 20) && sup.contains_rational(&int(1))) {
            bad.push(n);
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(60);
    outcome(pass, format!("n = 1..64, failing {bad:?}, {:.2?} (limit 60 s)", elapsed))
}

/// `sum_{k>=2} 1/(k^2 ln k)` in `f64` using an Euler-Maclaurin tail.
fn c1_f64() -> f64 {
    let f = |k: f64| 1.0 / (k * k * k.ln());
    let n = 100_000u32;
    let head: f64 = (2..=n).map(|k| f(k as f64)).sum();
    // tail ~ integral from N to infinity plus half the endpoint; integral <= 1/(N ln N)
    let big = n as f64;
    let integral = 1.0 / (big * big.ln()) - 1.0 / (big * big.ln() * big.ln());
    head + integral - f(big) / 2.0
}

fn c3_tail_bound() -> Outcome {
    let start = Instant::now();
    let a = [1u64, 3, 4, 6, 7, 9, 10, 12];
    let ua = UAFunction::new(&Enumerator::finite(&a), 10_000);
    let c1 = c1_enclosure(14);
    let oracle = c1_f64();
    let c1_agrees = to_f64(&c1.lo().to_rational()) - 1e-9 <= oracle && oracle <= to_f64(&c1.hi().to_rational()) + 1e-9;
    let partials: Vec<TrigPoly> = (0..=8).map(|m| ua.partial(m).poly).collect();
    let mut worst = f64::INFINITY;
    let mut violations = 0;
    for m in 0..8 {
        let g = gauge_g(m + 1, 30).unwrap();
        let rhs = c1.lo().to_rational() * int(2) / g.hi().to_rational() + pow2(-20);
        for big_m in (m + 1)..=8 {
            let s = certified_sup(&partials[big_m].sub(&partials[m]), 20);
            let slack = &rhs - s.hi().to_rational();
            if slack.is_negative() {
                violations += 1;
            }
            worst = worst.min(to_f64(&slack));
        }
    }
    let elapsed = start.elapsed();
    let pass = violations == 0 && c1_agrees && elapsed < Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "36 pairs, {violations} violations, min slack {worst:.3e}, C1 in [{:.10}, {:.10}] vs series {oracle:.10}, {:.2?} (limit 120 s)",
            c1.lo().to_f64(),
            c1.hi().to_f64(),
            elapsed
        ),
    )
}

fn c4_compiler_identity() -> Outcome {
    let sets: [&[u64]; 5] = [&[1], &[2, 3], &[1, 5], &[1, 3, 4, 6], &[2, 4, 5, 7, 8]];
    let tol = pow2(-15);
    let mut worst = Rational::zero();
    let mut pass = true;
    for set in sets {
        let x: Rational = set.iter().map(|&n| pow2(-(n as i64))).sum();
        let ua = UAFunction::new(&Enumerator::finite(set), 1000);
        let s = certified_sup(&ua.partial(set.len()).poly.derivative(), 20);
        let err = (s.lo().to_rational() - &x).abs().max((s.hi().to_rational() - &x).abs());
        pass &= err <= tol;
        if err > worst {
            worst = err;
        }
    }
    outcome(pass, format!("5 sets, max |sup - x| = {:.3e} (limit 2^-15 = {:.3e})", to_f64(&worst), to_f64(&tol)))
}

fn c5_dseq() -> Outcome {
    let tol = pow2(-15);
    let sin = TrigPoly::sine(1, int(1));
    let mut pass = true;
    let mut prev: Option<Rational> = None;
    for n in 2..=32u64 {
        let d = dseq_lower_bounds(DseqSource::Poly(&sin), n, 20).unwrap();
        let target = int(1) - rat(1, n as i64);
        pass &= d.lo().to_rational() >= &target - &tol && d.hi().to_rational() <= &target + &tol;
        let mid = d.midpoint().to_rational();
        if let Some(p) = &prev {
            pass &= mid >= p - &tol * int(2);
        }
        prev = Some(mid);
    }

    let a = [1u64, 3, 4, 6, 7, 9, 10, 12];
    let u8 = UAFunction::new(&Enumerator::finite(&a), 1000).partial(8).poly;
    let norm = certified_sup(&u8.derivative(), 20);
    let slack = pow2(-20);
    let ds: Vec<DyadicInterval> = (2..=32).map(|n| dseq_lower_bounds(DseqSource::Poly(&u8), n, 20).unwrap()).collect();
    let monotone = ds.windows(2).all(|w| w[1].lo().to_rational() >= w[0].lo().to_rational() - &slack);
    let last = ds.last().unwrap();
    let below = last.lo() <= norm.hi();
    pass &= monotone && below;
    outcome(
        pass,
        format!("sin t within 2^-15 of 1-1/n; u_8 monotone {monotone}, d_32 = {:.7} <= {:.7}", last.midpoint().to_f64(), norm.hi().to_f64()),
    )
}

fn random_poly(rng: &mut StdRng) -> TrigPoly {
    let m = rng.gen_range(1..=5);
    let cos: Vec<Rational> = (0..=m).map(|_| random_rational(rng, 8, 8)).collect();
    let sin: Vec<Rational> = (0..m).map(|_| random_rational(rng, 8, 8)).collect();
    TrigPoly::from_rationals(&cos, &sin).unwrap()
}

fn c6_poisson_laws() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let (mut semigroup, mut modulus, mut commute) = (0, 0, 0);
    for _ in 0..50 {
        let p = random_poly(&mut rng);
        let r = rat(rng.gen_range(1..=19), 20);
        let rho = rat(rng.gen_range(1..=19), 20);
        let twice = p.poisson(&rho).unwrap().poisson(&r).unwrap();
        if twice.exact_eq(&p.poisson(&(&r * &rho)).unwrap()) == Some(true) {
            semigroup += 1;
        }
        let smoothed = certified_sup(&p.poisson(&r).unwrap(), 16);
        let original = certified_sup(&p, 16);
        if smoothed.hi().to_rational() <= original.lo().to_rational() + pow2(-12) {
            modulus += 1;
        }
        if p.poisson(&r).unwrap().derivative().exact_eq(&p.derivative().poisson(&r).unwrap()) == Some(true) {
            commute += 1;
        }
    }
    outcome(semigroup == 50 && modulus == 50 && commute == 50, format!("semigroup {semigroup}/50, max modulus {modulus}/50, commutation {commute}/50"))
}

fn c7_wave() -> Outcome {
    let plateau = window(&PiExpr::parse("3/2 pi").unwrap(), &PiExpr::parse("5/2 pi").unwrap()).unwrap();
    let profiles: [(&str, RadialProfile); 3] = [("bump", quartic_bump()), ("sextic", sextic_bump()), ("window", plateau)];
    let pi = std::f64::consts::PI;
    let mut worst = 0f64;
    let mut spread = 0f64;
    let mut support = true;
    for (_, q) in &profiles {
        for tf in [1.5 * pi, 2.0 * pi, 2.5 * pi] {
            let t = from_f64(tf).unwrap();
            let u = wave_at_origin(q, &t, 40).unwrap();
            let est = kirchhoff_richardson(q, tf, [0.0; 3], 1e-3);
            worst = worst.max((u.midpoint().to_f64() - est.best()).abs());
            spread = spread.max(est.spread());
        }
        for t in [int(1), int(10)] {
            support &= wave_at_origin(q, &t, 40).unwrap().contains_rational(&int(0));
        }
    }
    let pass = worst <= 1e-6 && support;
    outcome(pass, format!("max |closed form - quadrature| = {worst:.3e} (limit 1e-6), Richardson spread {spread:.3e}, support zero {support}"))
}

fn c8_semidecision() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for k in [1i64, 10, 20] {
        let x = CReal::constant(pow2(-k));
        let mut m = semidecide_positive(&x);
        match run(&mut m, 25) {
            Status::Halted(n) => {
                // independent check: a tight enclosure of x lies strictly right of 0
                let confirmed = DyadicInterval::from_rational(&pow2(-k), 40).lo() > &Dyadic::zero();
                pass &= n <= 25 && confirmed;
                detail.push(format!("2^-{k} halted at {n}"));
            }
            Status::Running => {
                pass = false;
                detail.push(format!("2^-{k} still running"));
            }
        }
    }
    let mut zero = semidecide_positive(&CReal::zero());
    let running = run(&mut zero, 100_000) == Status::Running;
    pass &= running;
    detail.push(format!("0 running after 1e5 steps: {running}"));
    outcome(pass, detail.join(", "))
}

fn c9_search() -> Outcome {
    const ROUNDS: u64 = 10;
    let x = rat(3, 8);
    let xr = CReal::constant(x.clone());
    let result = dyadic_bound_search(|l| upper_bound_detector(&xr, l), ROUNDS);
    let decreasing = result.bounds.windows(2).all(|w| w[1] < w[0]);
    let above = result.bounds.iter().all(|b| b > &x);
    let final_gap = result.bounds.last().map(|b| b - &x);
    let close = final_gap.as_ref().is_some_and(|g| g <= &pow2(-5));
    let emits = result.events.iter().filter(|e| e.event == EventKind::Emit).count() == result.bounds.len();
    let golden: Vec<SearchEvent> = serde_json::from_str(GOLDEN_3_8).expect("golden log parses");
    let matches = golden == result.events;
    outcome(
        decreasing && above && close && emits && matches,
        format!(
            "{ROUNDS} rounds, bounds {:?}, final gap {}, strictly decreasing {decreasing}, golden log ({} events) matches {matches}",
            result.bounds.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            final_gap.map(|g| g.to_string()).unwrap_or_default(),
            golden.len()
        ),
    )
}

fn c10_difference_quotients() -> Outcome {
    let u = EffectiveFunction::from_poly(TrigPoly::sine(2, int(1)));
    let r = diff_quotient_sequence(&u, &int(0));
    let mut bad = Vec::new();
    let mut oracle_gap = 0f64;
    for n in 1..=100u64 {
        let e = r.term(n).enclose(40);
        let bound = rat(2, n as i64);
        let inside = e.lo().to_rational() >= int(2) - &bound && e.hi().to_rational() <= int(2) + &bound;
        // closed form n sin(2/n)
        let reference = n as f64 * (2.0 / n as f64).sin();
        oracle_gap = oracle_gap.max((e.midpoint().to_f64() - reference).abs());
        if !inside {
            bad.push(n);
        }
    }
    outcome(bad.is_empty() && oracle_gap < 1e-9, format!("n = 1..100, failing {bad:?}, max gap to n sin(2/n) {oracle_gap:.2e}"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("enclosure contracts", c1_enclosure_contracts),
        ("p_n'(0) = 1", c2_p_derivative_at_zero),
        ("partial sum tail bound", c3_tail_bound),
        ("compiler identity", c4_compiler_identity),
        ("Poisson d-sequence", c5_dseq),
        ("Poisson laws", c6_poisson_laws),
        ("radial wave closed form", c7_wave),
        ("semidecision", c8_semidecision),
        ("dyadic bound search", c9_search),
        ("difference quotients", c10_difference_quotients),
    ];
    let mut failed = Vec::new();
    let mut stdout = std::io::stdout();
    writeln!(stdout).unwrap();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        writeln!(stdout, "{tag} {:>2} {name}: {}", i + 1, o.detail).unwrap();
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria {failed:?}");
}
