//! The `effan` command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 budget exhausted before an answer
//! (partial output is still written), 64 unknown or missing subcommand.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::creal::CReal;
use crate::derivative_lab::{build_ua, dseq_lower_bounds, DseqSource, UAFunction};
use crate::dovetail::{dyadic_bound_search, run as run_machine, semidecide_below, semidecide_positive, upper_bound_detector, Status};
use crate::enumerators::{zw_real, Enumerator, Program};
use crate::error::{Error, Result};
use crate::exact_numeric::rational::{self, Rational};
use crate::exact_numeric::DyadicInterval;
use crate::trig_series::{certified_sup_with_stats, TrigPoly, TrigPolyInput};
use crate::wave_radial::{kirchhoff_richardson, quartic_bump, sextic_bump, wave_at_origin, wave_sweep, window, PiExpr, RadialProfile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

const SCHEMAS: &str = "\
Input formats (each flag takes a file path or inline JSON):
  polynomial  {\"degree\": M, \"cos\": [\"a0\", ..., \"aM\"], \"sin\": [\"b1\", ..., \"bM\"]}
              value a0/2 + sum a_k cos kt + b_k sin kt; coefficients are exact
              strings (\"3/4\", \"0.125\") or point intervals {lo, hi, bits}
  program     {\"type\": \"finite\", \"body\": [3, 5]}
              {\"type\": \"progression\", \"body\": \"2n+1\"}   (or {\"start\": 1, \"step\": 2})
              {\"type\": \"vm\", \"body\": [\"TOP: JZ r2, BACK\", ...], \"registers\": 3}
              opcodes INC r, DEC r, JZ r,L, EMIT r, JMP L, HALT; optional `label:` prefix
  profile     {\"knots\": [\"pi\", \"3/2 pi\", ..., \"3 pi\"], \"pieces\": [[\"0\", \"0\", \"10\"], ...]}
              piece i is sum c_j s^j in s = (t - k_i)/(k_{i+1} - k_i); entries are
              rational polynomials in pi such as \"16 pi^4\"; the names bump, sextic
              and window (plateau [3/2 pi, 5/2 pi]) select built-in profiles
Output: intervals are {lo, hi, bits} with exact decimal endpoints; reals are
  {approx, error_bound}; sequences stream as CSV with --format csv.
Reals on the command line accept integers, decimals, fractions and 2^-k.
Environment: EFFAN_PRECISION overrides the default precision (30 bits).";

#[derive(Parser, Debug)]
#[command(name = "effan", version, about = "Certified computations from effective analysis", after_help = SCHEMAS)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Output precision in bits.
    #[arg(long, global = true, default_value_t = 30, env = "EFFAN_PRECISION", value_parser = clap::value_parser!(u32).range(1..=4096))]
    pub precision: u32,
    /// Step budget for enumerators and semideciders; also caps search rounds.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SetSource {
    /// A finite set, e.g. "1,3".
    #[arg(long)]
    set: Option<String>,
    /// A program (file or inline JSON).
    #[arg(long)]
    program: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partial sum u_m = sum_{n<=m} 2^-phi(n) p_n of u_A.
    UaBuild {
        #[command(flatten)]
        source: SetSource,
        #[arg(long)]
        m: usize,
        /// Also evaluate u_m here.
        #[arg(long)]
        eval: Option<String>,
    },
    /// Evaluate a polynomial (or its derivative) at t.
    Eval {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        derivative: bool,
    },
    /// Certified max |p(t)|.
    Sup {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        derivative: bool,
    },
    /// d_n = max |d/dt P_{1-1/n} u| for n in [n-min, n-max].
    Dseq {
        #[arg(long, conflicts_with_all = ["set", "program"])]
        poly: Option<String>,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        program: Option<String>,
        /// Partial sum index when the input is a set or program.
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n_min: u64,
        #[arg(long, default_value_t = 32)]
        n_max: u64,
    },
    /// Compile x[A] into u_m with ||u_m'|| approaching x[A].
    CompileSigma1 {
        #[command(flatten)]
        source: SetSource,
        #[arg(long)]
        m: usize,
    },
    /// u(t, 0) = q(t) + t q'(t) at t, or a CSV sweep over [t0, t1].
    Wave {
        #[arg(long)]
        profile: String,
        #[arg(long, required_unless_present = "t0")]
        t: Option<String>,
        #[arg(long, requires = "t1")]
        t0: Option<String>,
        #[arg(long)]
        t1: Option<String>,
        #[arg(long, default_value_t = 100)]
        steps: u32,
    },
    /// Compare the closed form with spherical-mean quadrature.
    WaveCheck {
        #[arg(long)]
        profile: String,
        #[arg(long)]
        t: String,
        /// Evaluation point "x,y,z"; the closed form applies only at the origin.
        #[arg(long, default_value = "0,0,0")]
        x: String,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
    },
    /// Run a semidecider on a rational x until it halts or the budget runs out.
    Semidecide {
        #[arg(long, conflicts_with = "below")]
        positive: bool,
        /// Decide x < C.
        #[arg(long)]
        below: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Dovetailed search for dyadic upper bounds of x.
    SearchBound {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 10)]
        rounds: u64,
    },
    /// Step an enumerator and list its emissions.
    EnumRun {
        #[command(flatten)]
        source: SetSource,
    },
}

/// Parses integers, decimals, fractions and powers `2^-k`.
pub fn parse_cli_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if let Some(exp) = s.strip_prefix("2^") {
        let k: i64 = exp.parse().map_err(|_| Error::parse(format!("bad exponent in {s:?}")))?;
        return Ok(rational::pow2(k));
    }
    rational::parse_rational(s)
}

fn inline_or_file(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Error::validation(format!("cannot read {arg}: {e}")))
}

fn load_poly(arg: &str) -> Result<TrigPoly> {
    let text = inline_or_file(arg)?;
    let input: TrigPolyInput = serde_json::from_str(&text).map_err(|e| Error::parse(format!("polynomial: {e}")))?;
    TrigPoly::from_input(&input)
}

fn load_profile(arg: &str) -> Result<RadialProfile> {
    match arg {
        "bump" => Ok(quartic_bump()),
        "sextic" => Ok(sextic_bump()),
        "window" => window(&PiExpr::parse("3/2 pi")?, &PiExpr::parse("5/2 pi")?),
        _ => RadialProfile::parse_json(&inline_or_file(arg)?),
    }
}

fn parse_set(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|_| Error::parse(format!("bad set element {s:?}"))))
        .collect()
}

fn load_enumerator(set: Option<&str>, program: Option<&str>) -> Result<Enumerator> {
    match (set, program) {
        (Some(s), None) => Ok(Enumerator::finite(&parse_set(s)?)),
        (None, Some(p)) => Ok(Enumerator::new(Program::parse_json(&inline_or_file(p)?)?)),
        _ => Err(Error::validation("give exactly one of --set or --program")),
    }
}

fn real_json(x: &CReal, bits: u32) -> Value {
    serde_json::to_value(x.to_json(bits)).expect("serializable")
}

fn iv(x: &DyadicInterval, bits: u32) -> Value {
    serde_json::to_value(x.to_json(bits)).expect("serializable")
}

struct Output<'a> {
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn json(&mut self, v: &impl Serialize) -> Result<()> {
        let text = serde_json::to_string(v).expect("serializable");
        self.line(&text)
    }

    fn line(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "{text}").and_then(|_| self.out.flush()).map_err(|e| Error::validation(format!("write failed: {e}")))
    }
}

fn execute(cli: Cli, out: &mut Output<'_>) -> Result<i32> {
    let cfg = cli.config;
    let bits = cfg.precision;
    match cli.command {
        Command::UaBuild { source, m, eval } => {
            let mut e = load_enumerator(source.set.as_deref(), source.program.as_deref())?;
            let u = build_ua(&mut e, m, cfg.budget);
            let mut doc = json!({
                "m": m,
                "values": u.values,
                "saturated": u.saturated,
                "weight": rational::fraction_string(&u.weight()),
                "tail_bound": iv(&UAFunction::new(&e, cfg.budget).tail_bound(m, bits), bits),
                "poly": u.poly.to_json(bits),
            });
            if let Some(t) = eval {
                let t = parse_cli_rational(&t)?;
                doc["eval"] = json!({ "t": rational::fraction_string(&t), "value": iv(&u.poly.eval(&t, bits), bits) });
            }
            out.json(&doc)?;
            Ok(if u.saturated && !e.is_exhausted() { EXIT_BUDGET } else { EXIT_OK })
        }
        Command::Eval { poly, t, derivative } => {
            let mut p = load_poly(&poly)?;
            if derivative {
                p = p.derivative();
            }
            let t = parse_cli_rational(&t)?;
            out.json(&json!({ "t": rational::fraction_string(&t), "value": iv(&p.eval(&t, bits), bits) }))?;
            Ok(EXIT_OK)
        }
        Command::Sup { poly, derivative } => {
            let mut p = load_poly(&poly)?;
            if derivative {
                p = p.derivative();
            }
            let (s, stats) = certified_sup_with_stats(&p, bits);
            out.json(&json!({ "sup": iv(&s, bits), "evaluations": stats.evaluations }))?;
            Ok(EXIT_OK)
        }
        Command::Dseq { poly, set, program, m, n_min, n_max } => {
            if n_min < 2 || n_max < n_min {
                return Err(Error::validation("need 2 <= n-min <= n-max"));
            }
            let mut code = EXIT_OK;
            let p = match poly {
                Some(p) => load_poly(&p)?,
                None => {
                    let mut e = load_enumerator(set.as_deref(), program.as_deref())?;
                    let u = build_ua(&mut e, m, cfg.budget);
                    if u.saturated && !e.is_exhausted() {
                        code = EXIT_BUDGET;
                    }
                    u.poly
                }
            };
            let mut rows = Vec::new();
            if cfg.format == Format::Csv {
                out.line("n,d_lo,d_hi")?;
            }
            for n in n_min..=n_max {
                let d = dseq_lower_bounds(DseqSource::Poly(&p), n, bits)?;
                match cfg.format {
                    Format::Csv => out.line(&format!("{n},{},{}", d.lo().to_decimal(), d.hi().to_decimal()))?,
                    Format::Json => rows.push(json!({ "n": n, "d": iv(&d, bits) })),
                }
            }
            if cfg.format == Format::Json {
                out.json(&rows)?;
            }
            Ok(code)
        }
        Command::CompileSigma1 { source, m } => {
            let mut e = load_enumerator(source.set.as_deref(), source.program.as_deref())?;
            let u = build_ua(&mut e, m, cfg.budget);
            let s = certified_sup_with_stats(&u.poly.derivative(), bits).0;
            let x = zw_real(&e);
            let mut doc = json!({
                "m": m,
                "values": u.values,
                "x_lower": rational::fraction_string(&u.weight()),
                "derivative_sup": iv(&s, bits),
                "poly": u.poly.to_json(bits),
            });
            if let Some(v) = x.value {
                doc["x"] = real_json(&v, bits);
            }
            out.json(&doc)?;
            Ok(if u.saturated && !e.is_exhausted() { EXIT_BUDGET } else { EXIT_OK })
        }
        Command::Wave { profile, t, t0, t1, steps } => {
            let q = load_profile(&profile)?;
            if let Some(t) = t {
                let t = parse_cli_rational(&t)?;
                let u = wave_at_origin(&q, &t, bits)?;
                out.json(&json!({ "t": rational::fraction_string(&t), "u": iv(&u, bits) }))?;
                return Ok(EXIT_OK);
            }
            let (t0, t1) = (parse_cli_rational(&t0.unwrap_or_default())?, parse_cli_rational(&t1.unwrap_or_default())?);
            let rows = wave_sweep(&q, &t0, &t1, steps, bits)?;
            match cfg.format {
                Format::Csv => {
                    out.line("t,u_lo,u_hi")?;
                    for (t, u) in rows {
                        let t = rational::dyadic_to_decimal(&t).unwrap_or_else(|| rational::fraction_string(&t));
                        out.line(&format!("{t},{},{}", u.lo().to_decimal(), u.hi().to_decimal()))?;
                    }
                }
                Format::Json => {
                    let v: Vec<Value> =
                        rows.iter().map(|(t, u)| json!({ "t": rational::fraction_string(t), "u": iv(u, bits) })).collect();
                    out.json(&v)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::WaveCheck { profile, t, x, h } => {
            let q = load_profile(&profile)?;
            let t = parse_cli_rational(&t)?;
            let coords: Vec<f64> = x
                .split(',')
                .map(|c| c.trim().parse::<f64>().map_err(|_| Error::parse(format!("bad point coordinate {c:?}"))))
                .collect::<Result<_>>()?;
            let point: [f64; 3] = coords.try_into().map_err(|_| Error::validation("--x needs three coordinates"))?;
            if h.is_nan() || h <= 0.0 {
                return Err(Error::validation("--h must be positive"));
            }
            let est = kirchhoff_richardson(&q, rational::to_f64(&t), point, h);
            let mut doc = json!({
                "t": rational::fraction_string(&t),
                "x": x,
                "quadrature": {
                    "steps": est.steps.map(|s| format!("{s:e}")),
                    "raw": est.raw.map(|v| format!("{v:.12e}")),
                    "extrapolated": format!("{:.12e}", est.best()),
                    "spread": format!("{:.3e}", est.spread()),
                    "certified": false,
                },
            });
            if point == [0.0; 3] {
                let u = wave_at_origin(&q, &t, bits)?;
                doc["closed_form"] = iv(&u, bits);
                doc["difference"] = json!(format!("{:.3e}", (u.midpoint().to_f64() - est.best()).abs()));
            }
            out.json(&doc)?;
            Ok(EXIT_OK)
        }
        Command::Semidecide { positive, below, x } => {
            let x = CReal::constant(parse_cli_rational(&x)?);
            let mut m = match (positive, below) {
                (true, None) => semidecide_positive(&x),
                (false, Some(c)) => semidecide_below(&x, &parse_cli_rational(&c)?),
                _ => return Err(Error::validation("give --positive or --below C")),
            };
            match run_machine(&mut m, cfg.budget) {
                Status::Halted(n) => {
                    out.json(&json!({ "status": "halted", "step": n }))?;
                    Ok(EXIT_OK)
                }
                Status::Running => {
                    out.json(&json!({ "status": "still running", "budget": cfg.budget }))?;
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::SearchBound { x, rounds } => {
            let x = CReal::constant(parse_cli_rational(&x)?);
            let rounds = rounds.min(cfg.budget);
            let r = dyadic_bound_search(|l| upper_bound_detector(&x, l), rounds);
            let bounds: Vec<String> = r.bounds.iter().map(rational::fraction_string).collect();
            out.json(&json!({ "rounds": rounds, "bounds": bounds, "events": r.events }))?;
            Ok(EXIT_OK)
        }
        Command::EnumRun { source } => {
            let mut e = load_enumerator(source.set.as_deref(), source.program.as_deref())?;
            let emitted = e.step(cfg.budget);
            out.json(&json!({ "emitted": emitted, "units": e.units(), "exhausted": e.is_exhausted() }))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_INVALID,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let result = match cli.config.output.clone() {
        Some(path) => match std::fs::File::create(&path) {
            Ok(mut f) => execute(cli, &mut Output { out: &mut f }),
            Err(e) => Err(Error::validation(format!("cannot create {}: {e}", path.display()))),
        },
        None => execute(cli, &mut Output { out }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "effan: {e}");
            EXIT_INVALID
        }
    }
}
