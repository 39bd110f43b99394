use limitlab_core::halting::arena::{
    diagonal_scenario, large_tester, ArenaConfig, Component, DiagonalKind, Marker, Reflexive,
    Schedule, Subject, TView, Terminal, TprimeView,
};
use limitlab_core::halting::asm::{parse_input, parse_program, to_text};
use limitlab_core::halting::{
    monitor_tprime, run, state_after, tester_t, MinskyProgram, Op, RunOutcome, TStatus,
    TesterVerdict, TprimeAction,
};
use proptest::prelude::*;

/// Straight interpreter kept apart from the library's machine.
fn reference_run(ops: &[Op], input: &[u64], limit: u64) -> Option<(u64, Vec<u64>)> {
    let regs_needed = ops
        .iter()
        .map(|op| match *op {
            Op::Inc(r) | Op::DecJz(r, _) => r + 1,
            Op::Halt => 0,
        })
        .max()
        .unwrap_or(0)
        .max(input.len());
    let mut regs = input.to_vec();
    regs.resize(regs_needed, 0);
    let mut pc = 0;
    for step in 1..=limit {
        match ops[pc] {
            Op::Halt => return Some((step, regs)),
            Op::Inc(r) => {
                regs[r] += 1;
                pc += 1;
            }
            Op::DecJz(r, t) => {
                if regs[r] == 0 {
                    pc = t;
                } else {
                    regs[r] -= 1;
                    pc += 1;
                }
            }
        }
        if pc == ops.len() {
            return Some((step, regs));
        }
    }
    None
}

fn arb_program() -> impl Strategy<Value = (Vec<Op>, Vec<u64>)> {
    (1usize..7).prop_flat_map(|len| {
        let op = prop_oneof![
            (0usize..3).prop_map(Op::Inc),
            (0usize..3, 0..len).prop_map(|(r, t)| Op::DecJz(r, t)),
            Just(Op::Halt),
        ];
        (
            proptest::collection::vec(op, len),
            proptest::collection::vec(0u64..5, 0..3),
        )
    })
}

fn tight_loop() -> MinskyProgram {
    parse_program("L: DECJZ r0 L").unwrap()
}

fn incrementer() -> MinskyProgram {
    parse_program("L: INC r0\nDECJZ r1 L").unwrap()
}

fn halt_only() -> MinskyProgram {
    parse_program("HALT").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn definite_verdicts_have_witnesses((ops, input) in arb_program(), budget in 1u64..300) {
        let program = MinskyProgram::new(ops.clone()).unwrap();
        let report = run(&program, &input, budget, 1).unwrap();
        match &report.outcome {
            RunOutcome::Halted { steps, registers } => {
                let (ref_steps, ref_regs) = reference_run(&ops, &input, budget).expect("halts");
                prop_assert_eq!(*steps, ref_steps);
                let width = registers.len().max(ref_regs.len());
                let (mut a, mut b) = (registers.clone(), ref_regs);
                a.resize(width, 0);
                b.resize(width, 0);
                prop_assert_eq!(a, b);
            }
            RunOutcome::CycleDetected { first_step, period, first_seen, witness } => {
                prop_assert_eq!(*period, first_step - first_seen);
                prop_assert!(*period >= 1);
                let a = state_after(&program, &input, *first_seen).unwrap();
                let b = state_after(&program, &input, *first_step).unwrap();
                prop_assert_eq!(a.as_ref(), Some(witness));
                prop_assert_eq!(b.as_ref(), Some(witness));
                prop_assert!(reference_run(&ops, &input, first_step + 200).is_none());
            }
            RunOutcome::BudgetExhausted { budget: b } => {
                prop_assert_eq!(*b, budget);
                prop_assert_eq!(report.steps_executed, budget);
                prop_assert!(reference_run(&ops, &input, budget - 1).is_none());
            }
        }
    }

    #[test]
    fn heartbeat_cadence((ops, input) in arb_program(), budget in 1u64..500, every in 1u64..50) {
        let program = MinskyProgram::new(ops).unwrap();
        let report = run(&program, &input, budget, every).unwrap();
        prop_assert_eq!(report.heartbeats.len() as u64, report.steps_executed / every);
        for (i, hb) in report.heartbeats.iter().enumerate() {
            prop_assert_eq!(hb.step, (i as u64 + 1) * every);
        }
    }

    #[test]
    fn assembly_round_trips((ops, _) in arb_program()) {
        let program = MinskyProgram::new(ops).unwrap();
        let text = to_text(&program);
        let back = parse_program(&text).unwrap();
        prop_assert_eq!(back.ops(), program.ops());
    }
}

#[test]
fn fixed_programs() {
    let r = run(&tight_loop(), &[], 10, 1).unwrap();
    assert!(matches!(
        r.outcome,
        RunOutcome::CycleDetected {
            first_step: 1,
            period: 1,
            ..
        }
    ));
    let r = run(&halt_only(), &[], 10, 1).unwrap();
    assert!(matches!(r.outcome, RunOutcome::Halted { steps: 1, .. }));
    for budget in [1, 7, 1000, 1_000_000] {
        let r = run(&incrementer(), &[], budget, 1000).unwrap();
        assert_eq!(r.outcome, RunOutcome::BudgetExhausted { budget });
        assert_eq!(r.warning(), Some("possible lack of halt"));
        assert_eq!(r.heartbeats.len() as u64, budget / 1000);
    }
}

#[test]
fn input_parsing() {
    assert_eq!(parse_input("r0=3,r2=1").unwrap(), vec![3, 0, 1]);
    assert_eq!(parse_input("").unwrap(), Vec::<u64>::new());
    assert!(parse_input("r0").is_err());
    assert!(parse_input("x=1").is_err());
}

#[test]
fn monitor_is_total() {
    for s in [
        TStatus::Running,
        TStatus::HaltedWithVerdict,
        TStatus::LoopDetected,
    ] {
        let a = monitor_tprime(s);
        assert!(matches!(
            a,
            TprimeAction::ContinueObserving | TprimeAction::LoopForever | TprimeAction::Return0
        ));
    }
}

#[test]
fn large_tester_on_plain_programs() {
    let halting = Subject::Program {
        program: halt_only(),
        input: vec![],
    };
    let (v, trace) = large_tester(&halting, 100, Schedule::Lockstep).unwrap();
    assert_eq!(v, TesterVerdict::Halts);
    let last = trace.events.last().unwrap();
    assert_eq!(last.t, TView::Returned(TesterVerdict::Halts));
    assert_eq!(last.tprime, TprimeView::Acted(TprimeAction::LoopForever));
    assert!(matches!(trace.terminal, Terminal::Verdict(v) if v.by == Component::T));

    let looping = Subject::Program {
        program: tight_loop(),
        input: vec![],
    };
    let (v, _) = large_tester(&looping, 100, Schedule::Lockstep).unwrap();
    assert_eq!(v, TesterVerdict::Loops);

    let diverging = Subject::Program {
        program: incrementer(),
        input: vec![],
    };
    let (v, trace) = large_tester(&diverging, 50, Schedule::Lockstep).unwrap();
    assert_eq!(v, TesterVerdict::Unknown);
    assert_eq!(trace.terminal, Terminal::BothLooping);
    assert_eq!(
        trace.events.last().unwrap().marker,
        Some(Marker::BothLooping)
    );
}

#[test]
fn reflexive_subject_is_answered_by_the_monitor() {
    let s = Subject::Reflexive(Reflexive::default());
    let (v, trace) = large_tester(&s, 1000, Schedule::Lockstep).unwrap();
    assert_eq!(v, TesterVerdict::Loops);
    let last = trace.events.last().unwrap();
    assert_eq!(last.t, TView::Running);
    assert!(matches!(trace.terminal, Terminal::Verdict(v) if v.by == Component::TPrime));

    // Without the monitor running alongside, nobody ever answers.
    let (v, trace) = large_tester(&s, 1000, Schedule::Sequential).unwrap();
    assert_eq!(v, TesterVerdict::Unknown);
    assert_eq!(trace.terminal, Terminal::BothLooping);
}

#[test]
fn scenarios_are_deterministic() {
    for kind in [DiagonalKind::Classic, DiagonalKind::PaperEscape] {
        for budget in [5, 40, 1000] {
            let config = ArenaConfig {
                budget,
                ..ArenaConfig::default()
            };
            assert_eq!(
                diagonal_scenario(kind, &config).unwrap(),
                diagonal_scenario(kind, &config).unwrap()
            );
        }
    }
}

#[test]
fn classic_outcomes() {
    let trace = diagonal_scenario(DiagonalKind::Classic, &ArenaConfig::default()).unwrap();
    assert_eq!(trace.terminal, Terminal::ContradictionDetected);
    assert_eq!(trace.verdict(), None);
    let small = ArenaConfig {
        budget: 5,
        ..ArenaConfig::default()
    };
    let trace = diagonal_scenario(DiagonalKind::Classic, &small).unwrap();
    assert_eq!(trace.verdict(), Some(TesterVerdict::Unknown));
}

#[test]
fn reflexive_realization_matches_the_answer() {
    let s = Reflexive::default();
    let (p, input) = s.realize(TesterVerdict::Halts);
    assert_eq!(tester_t(&p, &input, 1000), Ok(TesterVerdict::Loops));
    let (p, input) = s.realize(TesterVerdict::Loops);
    assert_eq!(tester_t(&p, &input, 1000), Ok(TesterVerdict::Halts));
}
