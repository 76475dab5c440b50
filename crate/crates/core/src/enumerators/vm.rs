//! A six-opcode register machine.
//!
//! Grammar, one instruction per line, optional `label:` prefix, case-insensitive
//! opcodes, registers written `r0` or `0`:
//!
//! ```text
//! INC r      r := r + 1
//! DEC r      r := r - 1 (stays at 0)
//! JZ r, L    jump to L when r = 0
//! EMIT r     output the value of r
//! JMP L      jump to L
//! HALT
//! ```
//!
//! Jump targets are labels or instruction indices. Running past the last
//! instruction halts. Registers hold `u64`; one step adds at most one, so they
//! cannot overflow within any feasible budget.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instr {
    Inc(usize),
    Dec(usize),
    Jz(usize, usize),
    Emit(usize),
    Jmp(usize),
    Halt,
}

/// A validated program: labels resolved, registers within the declared count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VmProgram {
    code: Vec<Instr>,
    registers: usize,
    source: Vec<String>,
}

fn parse_register(tok: &str, line: usize) -> Result<usize> {
    let t = tok.trim();
    let digits = t.strip_prefix('r').or_else(|| t.strip_prefix('R')).unwrap_or(t);
    digits.parse().map_err(|_| Error::validation(format!("line {line}: bad register `{t}`")))
}

impl VmProgram {
    /// Parses and validates; `registers` defaults to one more than the highest register used.
    pub fn parse(lines: &[String], registers: Option<usize>) -> Result<Self> {
        let mut labels = HashMap::new();
        let mut bodies = Vec::with_capacity(lines.len());
        for (i, raw) in lines.iter().enumerate() {
            let mut body = raw.trim();
            if let Some((head, rest)) = body.split_once(':') {
                let name = head.trim();
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(Error::validation(format!("line {i}: bad label `{name}`")));
                }
                if labels.insert(name.to_string(), i).is_some() {
                    return Err(Error::validation(format!("line {i}: duplicate label `{name}`")));
                }
                body = rest.trim();
            }
            bodies.push(body);
        }
        let target = |tok: &str, line: usize| -> Result<usize> {
            let t = tok.trim();
            if let Some(&i) = labels.get(t) {
                return Ok(i);
            }
            match t.parse::<usize>() {
                Ok(i) if i <= lines.len() => Ok(i),
                _ => Err(Error::validation(format!("line {line}: unknown label `{t}`"))),
            }
        };
        let mut code = Vec::with_capacity(bodies.len());
        for (i, body) in bodies.iter().enumerate() {
            let (op, args) = match body.split_once(char::is_whitespace) {
                Some((op, args)) => (op, args.trim()),
                None => (*body, ""),
            };
            let args: Vec<&str> = if args.is_empty() { vec![] } else { args.split(',').map(str::trim).collect() };
            let arity = |n: usize| -> Result<()> {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(Error::validation(format!("line {i}: `{op}` takes {n} operand(s)")))
                }
            };
            let instr = match op.to_ascii_uppercase().as_str() {
                "INC" => {
                    arity(1)?;
                    Instr::Inc(parse_register(args[0], i)?)
                }
                "DEC" => {
                    arity(1)?;
                    Instr::Dec(parse_register(args[0], i)?)
                }
                "JZ" => {
                    arity(2)?;
                    Instr::Jz(parse_register(args[0], i)?, target(args[1], i)?)
                }
                "EMIT" => {
                    arity(1)?;
                    Instr::Emit(parse_register(args[0], i)?)
                }
                "JMP" => {
                    arity(1)?;
                    Instr::Jmp(target(args[0], i)?)
                }
                "HALT" => {
                    arity(0)?;
                    Instr::Halt
                }
                other => return Err(Error::validation(format!("line {i}: unknown opcode `{other}`"))),
            };
            code.push(instr);
        }
        let used = code
            .iter()
            .filter_map(|ins| match *ins {
                Instr::Inc(r) | Instr::Dec(r) | Instr::Jz(r, _) | Instr::Emit(r) => Some(r + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let registers = registers.unwrap_or(used);
        if used > registers {
            return Err(Error::validation(format!("register r{} exceeds declared count {registers}", used - 1)));
        }
        Ok(VmProgram { code, registers, source: lines.to_vec() })
    }

    pub fn instructions(&self) -> &[Instr] {
        &self.code
    }

    pub fn registers(&self) -> usize {
        self.registers
    }

    pub fn source(&self) -> &[String] {
        &self.source
    }
}

/// Outcome of one machine step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Continue,
    Emitted(u64),
    Halted,
}

#[derive(Clone, Debug)]
pub struct VmState {
    pc: usize,
    regs: Vec<u64>,
    halted: bool,
}

impl VmState {
    pub fn new(program: &VmProgram) -> Self {
        VmState { pc: 0, regs: vec![0; program.registers], halted: false }
    }

    pub fn is_halted(&self) -> bool {
        self.halted
    }

    pub fn registers(&self) -> &[u64] {
        &self.regs
    }

    pub fn step(&mut self, program: &VmProgram) -> Step {
        if self.halted {
            return Step::Halted;
        }
        let Some(&ins) = program.code.get(self.pc) else {
            self.halted = true;
            return Step::Halted;
        };
        self.pc += 1;
        match ins {
            Instr::Inc(r) => self.regs[r] += 1,
            Instr::Dec(r) => self.regs[r] = self.regs[r].saturating_sub(1),
            Instr::Jz(r, t) => {
                if self.regs[r] == 0 {
                    self.pc = t;
                }
            }
            Instr::Emit(r) => return Step::Emitted(self.regs[r]),
            Instr::Jmp(t) => self.pc = t,
            Instr::Halt => {
                self.halted = true;
                return Step::Halted;
            }
        }
        Step::Continue
    }
}

/// Emits the perfect squares `1, 4, 9, ...` using `(k+1)^2 = k^2 + 2k + 1`.
///
/// Register 0 holds `k^2`, register 2 holds `2k`, register 1 is scratch.
pub fn squares_program() -> Vec<String> {
    [
        "TOP: JZ r2, BACK",
        "DEC r2",
        "INC r0",
        "INC r1",
        "JMP TOP",
        "BACK: JZ r1, DONE",
        "DEC r1",
        "INC r2",
        "JMP BACK",
        "DONE: INC r0",
        "INC r2",
        "INC r2",
        "EMIT r0",
        "JMP TOP",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}
