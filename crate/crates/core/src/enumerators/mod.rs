//! Recursively enumerable sets as programs, and the reals `x[A] = sum_{n in A} 2^-n`.
//!
//! A program is a finite list, an arithmetic progression, or a [`vm`] register
//! machine. One stepping unit is one list or progression yield, or one machine
//! step. Emissions of `0` and repeats are dropped, so the log is injective and
//! every `x[A]` lies in `[0, 1]`.

pub mod vm;

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::Zero;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::creal::{CReal, Direction, MonotoneWitness, Provenance};
use crate::error::{Error, Result};
use crate::exact_numeric::rational::{self, Rational};
pub use vm::{squares_program, Instr, Step, VmProgram, VmState};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Program {
    Finite(Vec<u64>),
    /// `start + step * n` for `n = 0, 1, 2, ...`
    Progression { start: u64, step: u64 },
    Vm(VmProgram),
}

/// Progression bodies are `{start, step}` or text like `"2n+1"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProgressionBody {
    Fields { start: u64, step: u64 },
    Text(String),
}

/// On-disk form: `{"type": "finite" | "progression" | "vm", "body": ..., "registers": n}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ProgramJson {
    Finite {
        body: Vec<u64>,
    },
    Progression {
        body: ProgressionBody,
    },
    Vm {
        body: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        registers: Option<usize>,
    },
}

fn parse_progression(text: &str) -> Result<(u64, u64)> {
    let bad = || Error::validation(format!("progression `{text}` is not of the form `an+b`"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (lin, constant) = match compact.split_once('+') {
        Some((l, c)) => (l, c.parse::<u64>().map_err(|_| bad())?),
        None => (compact.as_str(), 0),
    };
    let coef = lin.strip_suffix('n').ok_or_else(bad)?;
    let step = if coef.is_empty() { 1 } else { coef.parse::<u64>().map_err(|_| bad())? };
    Ok((constant, step))
}

impl Program {
    pub fn from_json(j: &ProgramJson) -> Result<Program> {
        Ok(match j {
            ProgramJson::Finite { body } => Program::Finite(body.clone()),
            ProgramJson::Progression { body } => {
                let (start, step) = match body {
                    ProgressionBody::Fields { start, step } => (*start, *step),
                    ProgressionBody::Text(t) => parse_progression(t)?,
                };
                Program::Progression { start, step }
            }
            ProgramJson::Vm { body, registers } => Program::Vm(VmProgram::parse(body, *registers)?),
        })
    }

    pub fn parse_json(text: &str) -> Result<Program> {
        let j: ProgramJson = serde_json::from_str(text).map_err(|e| Error::parse(format!("program: {e}")))?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> ProgramJson {
        match self {
            Program::Finite(v) => ProgramJson::Finite { body: v.clone() },
            Program::Progression { start, step } => {
                ProgramJson::Progression { body: ProgressionBody::Fields { start: *start, step: *step } }
            }
            Program::Vm(p) => ProgramJson::Vm { body: p.source().to_vec(), registers: Some(p.registers()) },
        }
    }
}

#[derive(Clone, Debug)]
enum Cursor {
    Index(u64),
    Machine(VmState),
}

/// A stepped enumeration with its injective emission log.
#[derive(Clone, Debug)]
pub struct Enumerator {
    program: Program,
    cursor: Cursor,
    emitted: Vec<u64>,
    seen: HashSet<u64>,
    units: u64,
}

impl Enumerator {
    pub fn new(program: Program) -> Self {
        let cursor = match &program {
            Program::Vm(p) => Cursor::Machine(VmState::new(p)),
            _ => Cursor::Index(0),
        };
        Enumerator { program, cursor, emitted: Vec::new(), seen: HashSet::new(), units: 0 }
    }

    pub fn finite(values: &[u64]) -> Self {
        Self::new(Program::Finite(values.to_vec()))
    }

    pub fn progression(start: u64, step: u64) -> Self {
        Self::new(Program::Progression { start, step })
    }

    pub fn vm(lines: &[String]) -> Result<Self> {
        Ok(Self::new(Program::Vm(VmProgram::parse(lines, None)?)))
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    /// Values emitted so far, in order.
    pub fn emitted(&self) -> &[u64] {
        &self.emitted
    }

    /// Stepping units consumed so far.
    pub fn units(&self) -> u64 {
        self.units
    }

    /// True once no further value can appear (list consumed or machine halted).
    pub fn is_exhausted(&self) -> bool {
        match (&self.program, &self.cursor) {
            (Program::Finite(v), Cursor::Index(i)) => *i as usize >= v.len(),
            (Program::Progression { step: 0, .. }, Cursor::Index(i)) => *i >= 1,
            (_, Cursor::Machine(s)) => s.is_halted(),
            _ => false,
        }
    }

    /// One stepping unit; returns a value only if it is new and nonzero.
    fn unit(&mut self) -> Option<u64> {
        self.units += 1;
        let raw = match (&self.program, &mut self.cursor) {
            (Program::Finite(v), Cursor::Index(i)) => {
                let out = v.get(*i as usize).copied();
                if out.is_some() {
                    *i += 1;
                }
                out
            }
            (Program::Progression { start, step }, Cursor::Index(i)) => {
                let out = step.checked_mul(*i).and_then(|s| s.checked_add(*start));
                *i += 1;
                out
            }
            (Program::Vm(p), Cursor::Machine(s)) => match s.step(p) {
                Step::Emitted(v) => Some(v),
                _ => None,
            },
            _ => unreachable!("cursor matches program kind"),
        };
        let v = raw.filter(|&v| v >= 1)?;
        if self.seen.insert(v) {
            self.emitted.push(v);
            Some(v)
        } else {
            None
        }
    }

    /// Runs exactly `budget` units and returns the values that were new.
    pub fn step(&mut self, budget: u64) -> Vec<u64> {
        (0..budget).filter_map(|_| self.unit()).collect()
    }

    /// Steps until `count` values have been emitted or `budget` units are spent.
    pub fn step_until(&mut self, count: usize, budget: u64) -> bool {
        let mut spent = 0;
        while self.emitted.len() < count && spent < budget && !self.is_exhausted() {
            self.unit();
            spent += 1;
        }
        self.emitted.len() >= count
    }

    /// An unstepped copy of the same program.
    pub fn restart(&self) -> Enumerator {
        Enumerator::new(self.program.clone())
    }
}

pub fn step_enumerator(e: &mut Enumerator, budget: u64) -> Result<Vec<u64>> {
    if budget == 0 {
        return Err(Error::validation("budget must be at least 1"));
    }
    Ok(e.step(budget))
}

/// `x[A]` seen from below, plus the exact value when the program makes it computable.
#[derive(Clone, Debug)]
pub struct ZwReal {
    pub witness: MonotoneWitness,
    pub value: Option<CReal>,
}

/// Exact `x[A]` for lists and progressions; `None` for machines.
pub fn exact_value(program: &Program) -> Option<Rational> {
    match program {
        Program::Finite(_) => {
            let mut e = Enumerator::new(program.clone());
            e.step_until(usize::MAX, u64::MAX);
            Some(e.emitted().iter().map(|&v| rational::pow2(-(v as i64))).sum())
        }
        Program::Progression { start, step } => {
            if *step == 0 {
                return Some(if *start >= 1 { rational::pow2(-(*start as i64)) } else { Rational::zero() });
            }
            let first = if *start == 0 { *step } else { *start };
            // 2^-first / (1 - 2^-step)
            let ratio = rational::pow2(-(*step as i64));
            Some(rational::pow2(-(first as i64)) / (rational::int(1) - ratio))
        }
        Program::Vm(_) => None,
    }
}

/// Partial sums `sum 2^-v` over the values emitted within the first `m` units.
fn partial_sums(program: Program) -> impl Fn(usize) -> Rational + Send + Sync {
    let state = Arc::new(Mutex::new((Enumerator::new(program), Rational::zero())));
    move |m| {
        let mut guard = state.lock();
        let (e, sum) = &mut *guard;
        if e.units() as usize > m {
            *e = e.restart();
            *sum = Rational::zero();
        }
        while (e.units() as usize) < m {
            if let Some(v) = e.unit() {
                *sum += rational::pow2(-(v as i64));
            }
            if e.is_exhausted() {
                // nothing more can be added; skip the remaining units
                e.units = m as u64;
            }
        }
        sum.clone()
    }
}

pub fn zw_real(e: &Enumerator) -> ZwReal {
    let program = e.program().clone();
    let witness = MonotoneWitness::new(Direction::Nondecreasing, Provenance::Oracle("zw".into()), partial_sums(program.clone()));
    let value = exact_value(&program).map(CReal::constant);
    ZwReal { witness, value }
}

pub fn specker_sequence(e: &Enumerator) -> MonotoneWitness {
    zw_real(e).witness.with_provenance(Provenance::Specker)
}
