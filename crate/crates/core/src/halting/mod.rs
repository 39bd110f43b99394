//! Halting testers over counter machines.
//!
//! [`run`] executes a program with exact cycle detection and periodic
//! heartbeats. [`tester_t`] turns a run into a three-valued verdict: a
//! halting run means `Halts`, a repeated full state means `Loops`, and an
//! exhausted budget means `Unknown`. No finite budget makes the tester total;
//! `Unknown` is where undecidability shows up.
//!
//! [`arena`] composes the tester with the monitor T′ and runs both in
//! lockstep, and stages the diagonal constructions.

use alloc::string::String;

use thiserror::Error;

pub mod arena;
pub mod asm;
mod machine;

pub use machine::{
    run, state_after, Heartbeat, Machine, MachineState, MinskyProgram, Op, RunOutcome, RunReport,
    Step, POSSIBLE_LACK_OF_HALT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HaltingError {
    #[error("MalformedProgram{}: {reason}", line.map(|l| alloc::format!(" (line {l})")).unwrap_or_default())]
    MalformedProgram { line: Option<usize>, reason: String },
    #[error("register r{register} overflowed")]
    RegisterOverflow { register: usize },
    #[error("bad register assignment {0:?}, expected r<k>=<value>")]
    BadInput(String),
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("heartbeat interval must be at least 1")]
    ZeroHeartbeat,
}

impl HaltingError {
    pub(crate) fn malformed(line: Option<usize>, reason: impl Into<String>) -> Self {
        HaltingError::MalformedProgram {
            line,
            reason: reason.into(),
        }
    }
}

/// `Halts` plays the role of output 1, `Loops` of output 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TesterVerdict {
    Halts,
    Loops,
    Unknown,
}

impl TesterVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            TesterVerdict::Halts => "1",
            TesterVerdict::Loops => "0",
            TesterVerdict::Unknown => "unknown",
        }
    }

    pub fn from_outcome(outcome: &RunOutcome) -> Self {
        match outcome {
            RunOutcome::Halted { .. } => TesterVerdict::Halts,
            RunOutcome::CycleDetected { .. } => TesterVerdict::Loops,
            RunOutcome::BudgetExhausted { .. } => TesterVerdict::Unknown,
        }
    }
}

/// The verdict together with the run backing it.
pub fn tester_t_with_report(
    program: &MinskyProgram,
    input: &[u64],
    budget: u64,
) -> Result<(TesterVerdict, RunReport), HaltingError> {
    let report = run(program, input, budget, budget)?;
    Ok((TesterVerdict::from_outcome(&report.outcome), report))
}

pub fn tester_t(
    program: &MinskyProgram,
    input: &[u64],
    budget: u64,
) -> Result<TesterVerdict, HaltingError> {
    tester_t_with_report(program, input, budget).map(|(v, _)| v)
}

/// What T′ can see of T.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TStatus {
    Running,
    HaltedWithVerdict,
    LoopDetected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TprimeAction {
    ContinueObserving,
    LoopForever,
    Return0,
}

impl TprimeAction {
    pub fn as_str(&self) -> &'static str {
        match self {
            TprimeAction::ContinueObserving => "observe",
            TprimeAction::LoopForever => "loop_forever",
            TprimeAction::Return0 => "return_0",
        }
    }
}

/// T′: loop forever once T has stopped, return 0 once T is caught looping,
/// keep watching otherwise.
pub fn monitor_tprime(t_status: TStatus) -> TprimeAction {
    match t_status {
        TStatus::Running => TprimeAction::ContinueObserving,
        TStatus::HaltedWithVerdict => TprimeAction::LoopForever,
        TStatus::LoopDetected => TprimeAction::Return0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn halt() -> MinskyProgram {
        MinskyProgram::new(vec![Op::Halt]).unwrap()
    }

    fn self_loop() -> MinskyProgram {
        MinskyProgram::new(vec![Op::DecJz(0, 0)]).unwrap()
    }

    fn incrementer() -> MinskyProgram {
        MinskyProgram::new(vec![Op::Inc(0), Op::DecJz(1, 0)]).unwrap()
    }

    #[test]
    fn run_examples() {
        let r = run(&halt(), &[], 10, 1).unwrap();
        assert_eq!(
            r.outcome,
            RunOutcome::Halted {
                steps: 1,
                registers: vec![]
            }
        );

        let r = run(&self_loop(), &[0], 10, 1).unwrap();
        assert!(matches!(
            r.outcome,
            RunOutcome::CycleDetected {
                first_step: 1,
                period: 1,
                ..
            }
        ));

        let r = run(&incrementer(), &[0, 0], 1000, 100).unwrap();
        assert_eq!(r.outcome, RunOutcome::BudgetExhausted { budget: 1000 });
        assert_eq!(r.warning(), Some(POSSIBLE_LACK_OF_HALT));
        assert_eq!(r.heartbeats.len(), 10);
    }

    #[test]
    fn tester_examples() {
        assert_eq!(tester_t(&halt(), &[], 10), Ok(TesterVerdict::Halts));
        assert_eq!(tester_t(&self_loop(), &[0], 10), Ok(TesterVerdict::Loops));
        assert_eq!(
            tester_t(&incrementer(), &[], 50),
            Ok(TesterVerdict::Unknown)
        );
    }

    #[test]
    fn decjz_falls_through_on_nonzero() {
        let r = run(&self_loop(), &[3], 100, 1).unwrap();
        assert_eq!(
            r.outcome,
            RunOutcome::Halted {
                steps: 1,
                registers: vec![2]
            }
        );
    }

    #[test]
    fn falling_off_the_end_halts() {
        let p = MinskyProgram::new(vec![Op::Inc(0), Op::Inc(0)]).unwrap();
        let r = run(&p, &[], 10, 1).unwrap();
        assert_eq!(
            r.outcome,
            RunOutcome::Halted {
                steps: 2,
                registers: vec![2]
            }
        );
    }

    #[test]
    fn bad_arguments() {
        assert_eq!(run(&halt(), &[], 0, 1), Err(HaltingError::ZeroBudget));
        assert_eq!(run(&halt(), &[], 1, 0), Err(HaltingError::ZeroHeartbeat));
        assert!(MinskyProgram::new(vec![]).is_err());
        assert!(MinskyProgram::new(vec![Op::DecJz(0, 5)]).is_err());
    }

    #[test]
    fn register_overflow() {
        let p = MinskyProgram::new(vec![Op::Inc(0), Op::Halt]).unwrap();
        assert_eq!(
            run(&p, &[u64::MAX], 10, 1),
            Err(HaltingError::RegisterOverflow { register: 0 })
        );
    }

    #[test]
    fn monitor_rule() {
        assert_eq!(
            monitor_tprime(TStatus::Running),
            TprimeAction::ContinueObserving
        );
        assert_eq!(
            monitor_tprime(TStatus::HaltedWithVerdict),
            TprimeAction::LoopForever
        );
        assert_eq!(monitor_tprime(TStatus::LoopDetected), TprimeAction::Return0);
    }
}
