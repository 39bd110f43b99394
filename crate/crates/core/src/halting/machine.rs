use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::HaltingError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Inc(usize),
    /// Jump to the target if the register is zero, otherwise decrement it
    /// and fall through.
    DecJz(usize, usize),
    Halt,
}

/// A counter-machine program whose jump targets are all in range.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinskyProgram {
    ops: Vec<Op>,
    labels: BTreeMap<usize, String>,
}

impl MinskyProgram {
    pub fn new(ops: Vec<Op>) -> Result<Self, HaltingError> {
        Self::with_labels(ops, BTreeMap::new())
    }

    /// `labels` maps instruction indices to names, used only for printing.
    pub fn with_labels(
        ops: Vec<Op>,
        labels: BTreeMap<usize, String>,
    ) -> Result<Self, HaltingError> {
        if ops.is_empty() {
            return Err(HaltingError::malformed(None, "program has no instructions"));
        }
        for (i, op) in ops.iter().enumerate() {
            if let Op::DecJz(_, target) = *op {
                if target >= ops.len() {
                    return Err(HaltingError::malformed(
                        None,
                        alloc::format!("instruction {i} jumps to {target}, past the end"),
                    ));
                }
            }
        }
        Ok(MinskyProgram { ops, labels })
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn label_at(&self, index: usize) -> Option<&str> {
        self.labels.get(&index).map(String::as_str)
    }

    /// One more than the highest register mentioned.
    pub fn register_count(&self) -> usize {
        self.ops
            .iter()
            .filter_map(|op| match *op {
                Op::Inc(r) | Op::DecJz(r, _) => Some(r + 1),
                Op::Halt => None,
            })
            .max()
            .unwrap_or(0)
    }
}

/// A full machine configuration. Two equal states mean the run repeats
/// forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MachineState {
    pub pc: usize,
    pub registers: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Running,
    Halted,
}

/// A program paired with its current state.
#[derive(Debug, Clone)]
pub struct Machine<'p> {
    program: &'p MinskyProgram,
    state: MachineState,
    steps: u64,
    halted: bool,
}

impl<'p> Machine<'p> {
    /// Registers not covered by `input` start at zero.
    pub fn new(program: &'p MinskyProgram, input: &[u64]) -> Self {
        let mut registers = vec![0; program.register_count().max(input.len())];
        registers[..input.len()].copy_from_slice(input);
        Machine {
            program,
            state: MachineState { pc: 0, registers },
            steps: 0,
            halted: false,
        }
    }

    pub fn state(&self) -> &MachineState {
        &self.state
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_halted(&self) -> bool {
        self.halted
    }

    /// Executes one instruction. Running off the end of the program halts
    /// without counting a step.
    pub fn step(&mut self) -> Result<Step, HaltingError> {
        if self.halted {
            return Ok(Step::Halted);
        }
        let Some(&op) = self.program.ops.get(self.state.pc) else {
            self.halted = true;
            return Ok(Step::Halted);
        };
        let regs = &mut self.state.registers;
        match op {
            Op::Inc(r) => {
                regs[r] = regs[r]
                    .checked_add(1)
                    .ok_or(HaltingError::RegisterOverflow { register: r })?;
                self.state.pc += 1;
            }
            Op::DecJz(r, target) => {
                if regs[r] == 0 {
                    self.state.pc = target;
                } else {
                    regs[r] -= 1;
                    self.state.pc += 1;
                }
            }
            Op::Halt => self.halted = true,
        }
        self.steps += 1;
        Ok(if self.halted || self.state.pc >= self.program.ops.len() {
            self.halted = true;
            Step::Halted
        } else {
            Step::Running
        })
    }
}

/// Periodic progress record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Heartbeat {
    pub step: u64,
    pub state: MachineState,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    Halted {
        steps: u64,
        registers: Vec<u64>,
    },
    /// The state reached after `first_step` steps equals the one reached
    /// after `first_seen` steps; `period = first_step − first_seen`.
    CycleDetected {
        first_step: u64,
        period: u64,
        first_seen: u64,
        witness: MachineState,
    },
    BudgetExhausted {
        budget: u64,
    },
}

pub const POSSIBLE_LACK_OF_HALT: &str = "possible lack of halt";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub outcome: RunOutcome,
    pub steps_executed: u64,
    pub heartbeats: Vec<Heartbeat>,
}

impl RunReport {
    /// Set when the budget ran out without a decision.
    pub fn warning(&self) -> Option<&'static str> {
        match self.outcome {
            RunOutcome::BudgetExhausted { .. } => Some(POSSIBLE_LACK_OF_HALT),
            _ => None,
        }
    }
}

/// Runs `program` on `input` for at most `budget` steps, watching for an
/// exact repeat of the full state.
pub fn run(
    program: &MinskyProgram,
    input: &[u64],
    budget: u64,
    heartbeat_every: u64,
) -> Result<RunReport, HaltingError> {
    if budget == 0 {
        return Err(HaltingError::ZeroBudget);
    }
    if heartbeat_every == 0 {
        return Err(HaltingError::ZeroHeartbeat);
    }
    let mut machine = Machine::new(program, input);
    let mut seen: BTreeMap<MachineState, u64> = BTreeMap::new();
    seen.insert(machine.state().clone(), 0);
    let mut heartbeats = Vec::new();

    let outcome = loop {
        if machine.steps() >= budget {
            break RunOutcome::BudgetExhausted { budget };
        }
        let step = machine.step()?;
        let steps = machine.steps();
        if steps.is_multiple_of(heartbeat_every) {
            heartbeats.push(Heartbeat {
                step: steps,
                state: machine.state().clone(),
            });
        }
        if step == Step::Halted {
            break RunOutcome::Halted {
                steps,
                registers: machine.state().registers.clone(),
            };
        }
        if let Some(first_seen) = seen.insert(machine.state().clone(), steps) {
            break RunOutcome::CycleDetected {
                first_step: steps,
                period: steps - first_seen,
                first_seen,
                witness: machine.state().clone(),
            };
        }
    };
    Ok(RunReport {
        outcome,
        steps_executed: machine.steps(),
        heartbeats,
    })
}

/// State after exactly `steps` steps, or `None` if the machine halts first.
pub fn state_after(
    program: &MinskyProgram,
    input: &[u64],
    steps: u64,
) -> Result<Option<MachineState>, HaltingError> {
    let mut machine = Machine::new(program, input);
    while machine.steps() < steps {
        if machine.step()? == Step::Halted && machine.steps() < steps {
            return Ok(None);
        }
    }
    Ok(Some(machine.state().clone()))
}
