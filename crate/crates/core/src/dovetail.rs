//! Cooperative stepping of semideciders: positivity tests on computable reals,
//! round-robin races, and a dovetailed search for dyadic upper bounds.
//!
//! One step of a semidecider is one oracle query at the next precision. A
//! machine that has not halted is reported as still running; nothing here
//! ever concludes that a machine diverges.

use serde::{Deserialize, Serialize};

use crate::creal::CReal;
use crate::exact_numeric::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "step")]
pub enum Status {
    Running,
    Halted(u64),
}

/// A resumable computation; stepping a halted machine does nothing.
pub trait SteppedMachine {
    fn step(&mut self);
    fn status(&self) -> Status;
    /// Steps taken so far (not counting no-op steps after halting).
    fn steps(&self) -> u64;

    fn is_halted(&self) -> bool {
        matches!(self.status(), Status::Halted(_))
    }
}

/// Steps `m` until it halts or `budget` steps have been spent.
pub fn run(m: &mut dyn SteppedMachine, budget: u64) -> Status {
    for _ in 0..budget {
        if m.is_halted() {
            break;
        }
        m.step();
    }
    m.status()
}

/// Halts at the first `n` with `approx(n) - 2^-n > 0`, which certifies `x > 0`.
#[derive(Clone, Debug)]
pub struct PositivityMachine {
    x: CReal,
    n: u64,
    halted: Option<u64>,
}

impl PositivityMachine {
    pub fn target(&self) -> &CReal {
        &self.x
    }
}

impl SteppedMachine for PositivityMachine {
    fn step(&mut self) {
        if self.halted.is_some() {
            return;
        }
        self.n += 1;
        let n = u32::try_from(self.n).expect("step count fits an oracle index");
        let q = self.x.approx(n);
        if q > rational::pow2(-(n as i64)) {
            self.halted = Some(self.n);
        }
    }

    fn status(&self) -> Status {
        self.halted.map_or(Status::Running, Status::Halted)
    }

    fn steps(&self) -> u64 {
        self.n
    }
}

pub fn semidecide_positive(x: &CReal) -> PositivityMachine {
    PositivityMachine { x: x.clone(), n: 0, halted: None }
}

/// Halts iff `x < c`.
pub fn semidecide_below(x: &CReal, c: &Rational) -> PositivityMachine {
    semidecide_positive(&CReal::constant(c.clone()).sub(x))
}

/// Halts iff `lambda` is a strict upper bound of `x`.
pub fn upper_bound_detector(x: &CReal, lambda: &Rational) -> PositivityMachine {
    semidecide_below(x, lambda)
}

/// A machine that halts after a fixed number of steps, or never.
#[derive(Clone, Debug)]
pub struct ScriptedMachine {
    halt_at: Option<u64>,
    n: u64,
}

impl ScriptedMachine {
    pub fn halting_at(step: u64) -> Self {
        ScriptedMachine { halt_at: Some(step), n: 0 }
    }

    pub fn never() -> Self {
        ScriptedMachine { halt_at: None, n: 0 }
    }
}

impl SteppedMachine for ScriptedMachine {
    fn step(&mut self) {
        if !self.is_halted() {
            self.n += 1;
        }
    }

    fn status(&self) -> Status {
        match self.halt_at {
            Some(h) if self.n >= h => Status::Halted(self.n),
            _ => Status::Running,
        }
    }

    fn steps(&self) -> u64 {
        self.n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome", content = "step")]
pub enum RaceOutcome {
    AHalted(u64),
    BHalted(u64),
    BothRunning,
}

/// Alternates one step of `a` and one of `b` for `budget` rounds; `a` wins ties.
pub fn race(a: &mut dyn SteppedMachine, b: &mut dyn SteppedMachine, budget: u64) -> RaceOutcome {
    for _ in 0..budget {
        if let Status::Halted(n) = a.status() {
            return RaceOutcome::AHalted(n);
        }
        if let Status::Halted(n) = b.status() {
            return RaceOutcome::BHalted(n);
        }
        a.step();
        if let Status::Halted(n) = a.status() {
            return RaceOutcome::AHalted(n);
        }
        b.step();
        if let Status::Halted(n) = b.status() {
            return RaceOutcome::BHalted(n);
        }
    }
    RaceOutcome::BothRunning
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Spawn,
    Halt,
    Emit,
}

/// One entry of the search log; `value` is an exact fraction such as `"3/8"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchEvent {
    pub round: u64,
    pub event: EventKind,
    pub value: String,
}

/// A machine alive at the end of the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiveMachine {
    pub lambda: Rational,
    pub spawn_round: u64,
    pub steps: u64,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Emitted bounds, strictly decreasing.
    pub bounds: Vec<Rational>,
    pub events: Vec<SearchEvent>,
    pub live: Vec<LiveMachine>,
    pub rounds: u64,
}

/// Dovetailed search for ever smaller dyadic `lambda` accepted by `detector`.
///
/// Round `i` spawns detectors for `k / 2^i` (odd `k`, increasing) below the
/// current bound `U` (initially 1), then steps every live machine once in spawn
/// order. If any halt, the smallest halted `lambda` is emitted, becomes `U`, and
/// machines at or above it are dropped. Survivors keep their progress.
pub fn dyadic_bound_search<M, F>(detector: F, rounds: u64) -> SearchResult
where
    M: SteppedMachine,
    F: Fn(&Rational) -> M,
{
    let mut upper = rational::int(1);
    let mut live: Vec<(Rational, u64, M)> = Vec::new();
    let mut events = Vec::new();
    let mut bounds = Vec::new();
    let value = |q: &Rational| rational::fraction_string(q);
    for round in 1..=rounds {
        let level = i64::try_from(round).expect("round fits i64");
        let denom = rational::pow2(-level);
        let mut k = 1i64;
        loop {
            let lambda = rational::int(k) * &denom;
            if lambda >= upper {
                break;
            }
            events.push(SearchEvent { round, event: EventKind::Spawn, value: value(&lambda) });
            live.push((lambda.clone(), round, detector(&lambda)));
            k += 2;
        }
        let mut best: Option<Rational> = None;
        for (lambda, _, m) in live.iter_mut() {
            m.step();
            if m.is_halted() {
                events.push(SearchEvent { round, event: EventKind::Halt, value: value(lambda) });
                if best.as_ref().is_none_or(|b| *lambda < *b) {
                    best = Some(lambda.clone());
                }
            }
        }
        if let Some(b) = best {
            events.push(SearchEvent { round, event: EventKind::Emit, value: value(&b) });
            live.retain(|(l, _, _)| *l < b);
            bounds.push(b.clone());
            upper = b;
        }
    }
    let live = live.into_iter().map(|(lambda, spawn_round, m)| LiveMachine { lambda, spawn_round, steps: m.steps() }).collect();
    SearchResult { bounds, events, live, rounds }
}
