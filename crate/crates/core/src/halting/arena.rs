//! The large tester: T and the monitor T′ advanced in strict alternation,
//! one step each per tick, plus the two staged diagonal arguments.
//!
//! T′ never looks at the tested program. It watches T's own configuration
//! and runs exact cycle detection on it; when T stops, T′ loops forever,
//! and when T is caught repeating itself, T′ returns 0. Whichever component
//! produces a terminal output first decides the verdict.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::machine::{Machine, MachineState, MinskyProgram, Op, Step};
use super::{monitor_tprime, HaltingError, TStatus, TesterVerdict, TprimeAction};

/// The reflexive program S: it asks T whether S halts on S and then does the
/// opposite (loops on 1, halts on 0).
///
/// S is a harness-level script rather than a counter machine, because its
/// first action is a call to T. Once T's answer is fixed, S's remaining
/// behaviour is an ordinary counter machine, see [`Reflexive::realize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Reflexive {
    /// Countdown iterations standing in for the work of S's own call to T.
    pub call_cost: u64,
}

impl Default for Reflexive {
    fn default() -> Self {
        Reflexive { call_cost: 8 }
    }
}

impl Reflexive {
    /// S's behaviour once T has answered `answer`: a countdown over `r0`
    /// followed by a tight loop (answer 1) or a HALT (answer 0 or unknown).
    pub fn realize(&self, answer: TesterVerdict) -> (MinskyProgram, Vec<u64>) {
        let branch = match answer {
            TesterVerdict::Halts => Op::DecJz(1, 2),
            TesterVerdict::Loops | TesterVerdict::Unknown => Op::Halt,
        };
        let ops = vec![Op::DecJz(0, 2), Op::DecJz(1, 0), branch];
        let program = MinskyProgram::new(ops).expect("targets are in range");
        (program, vec![self.call_cost, 0])
    }
}

/// What T is asked about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Program {
        program: MinskyProgram,
        input: Vec<u64>,
    },
    Reflexive(Reflexive),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Phase {
    Simulating,
    /// Reflexive subject: start evaluating the query (S, S).
    Begin,
    /// Reflexive subject: S has asked for T(S, S), which is the query T is
    /// already answering.
    AwaitingSelf,
}

/// Everything that determines T's future behaviour. Two equal
/// configurations mean T repeats itself forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TesterConfig {
    phase_tag: u8,
    subject_state: Option<MachineState>,
    /// Size of T's visited-state memory; it is part of T's configuration.
    memory: u64,
}

/// T as a process that can be advanced one step at a time.
pub struct TesterProcess<'s> {
    phase: Phase,
    machine: Option<Machine<'s>>,
    seen: BTreeMap<MachineState, u64>,
    budget: Option<u64>,
    steps: u64,
    verdict: Option<TesterVerdict>,
}

impl<'s> TesterProcess<'s> {
    /// `budget` bounds the steps T spends before answering unknown; `None`
    /// lets T run for as long as it is driven.
    pub fn new(subject: &'s Subject, budget: Option<u64>) -> Self {
        let (phase, machine) = match subject {
            Subject::Program { program, input } => {
                (Phase::Simulating, Some(Machine::new(program, input)))
            }
            Subject::Reflexive(_) => (Phase::Begin, None),
        };
        let mut seen = BTreeMap::new();
        if let Some(m) = &machine {
            seen.insert(m.state().clone(), 0);
        }
        TesterProcess {
            phase,
            machine,
            seen,
            budget,
            steps: 0,
            verdict: None,
        }
    }

    pub fn verdict(&self) -> Option<TesterVerdict> {
        self.verdict
    }

    pub fn config(&self) -> TesterConfig {
        TesterConfig {
            phase_tag: self.phase as u8,
            subject_state: self.machine.as_ref().map(|m| m.state().clone()),
            memory: self.seen.len() as u64,
        }
    }

    /// One logical step of T. Returns the verdict once T has one.
    pub fn step(&mut self) -> Result<Option<TesterVerdict>, HaltingError> {
        if self.verdict.is_some() {
            return Ok(self.verdict);
        }
        if self.budget.is_some_and(|b| self.steps >= b) {
            self.verdict = Some(TesterVerdict::Unknown);
            return Ok(self.verdict);
        }
        self.steps += 1;
        match self.phase {
            Phase::Begin => self.phase = Phase::AwaitingSelf,
            // The nested query is the pending one: start answering it again.
            Phase::AwaitingSelf => self.phase = Phase::Begin,
            Phase::Simulating => {
                let machine = self.machine.as_mut().expect("simulating a program");
                if machine.step()? == Step::Halted {
                    self.verdict = Some(TesterVerdict::Halts);
                } else if self
                    .seen
                    .insert(machine.state().clone(), machine.steps())
                    .is_some()
                {
                    self.verdict = Some(TesterVerdict::Loops);
                }
            }
        }
        Ok(self.verdict)
    }
}

/// T′'s cycle detector over T's configurations.
#[derive(Debug, Default)]
pub struct Monitor {
    seen: BTreeMap<TesterConfig, u64>,
}

impl Monitor {
    pub fn observe(&mut self, t: &TesterProcess<'_>, tick: u64) -> TStatus {
        if t.verdict().is_some() {
            return TStatus::HaltedWithVerdict;
        }
        match self.seen.insert(t.config(), tick) {
            Some(_) => TStatus::LoopDetected,
            None => TStatus::Running,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    T,
    TPrime,
    Harness,
}

impl Component {
    pub fn as_str(&self) -> &'static str {
        match self {
            Component::T => "T",
            Component::TPrime => "T'",
            Component::Harness => "harness",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub value: TesterVerdict,
    pub by: Component,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marker {
    BothLooping,
    ContradictionDetected,
}

impl Marker {
    pub fn as_str(&self) -> &'static str {
        match self {
            Marker::BothLooping => "both_looping",
            Marker::ContradictionDetected => "contradiction_detected",
        }
    }
}

/// T as seen in one tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TView {
    Running,
    Returned(TesterVerdict),
}

/// T′ as seen in one tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TprimeView {
    /// Not part of this construction.
    Idle,
    /// Sequential mode: T′ only runs after T has finished.
    Waiting,
    Acted(TprimeAction),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceEvent {
    pub tick: u64,
    pub t: TView,
    pub tprime: TprimeView,
    pub verdict: Option<Verdict>,
    /// Classic scenario: the answer assumed for T(S, S) ...
    pub hypothesis: Option<TesterVerdict>,
    /// ... and what T actually says about S under that assumption.
    pub observed: Option<TesterVerdict>,
    pub marker: Option<Marker>,
}

impl TraceEvent {
    fn tick(tick: u64, t: TView, tprime: TprimeView) -> Self {
        TraceEvent {
            tick,
            t,
            tprime,
            verdict: None,
            hypothesis: None,
            observed: None,
            marker: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Terminal {
    Verdict(Verdict),
    BothLooping,
    ContradictionDetected,
}

/// Tick log of one construction. The last event is the terminal one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LargeTesterTrace {
    pub events: Vec<TraceEvent>,
    pub terminal: Terminal,
}

impl LargeTesterTrace {
    /// The composite output: the terminal verdict, `Unknown` when both
    /// components were still looping, `None` after a contradiction.
    pub fn verdict(&self) -> Option<TesterVerdict> {
        match self.terminal {
            Terminal::Verdict(v) => Some(v.value),
            Terminal::BothLooping => Some(TesterVerdict::Unknown),
            Terminal::ContradictionDetected => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    /// T and T′ alternate within every tick.
    #[default]
    Lockstep,
    /// T runs alone; T′ would only start once T has finished.
    Sequential,
}

/// Runs T on `subject` with T′ watching, for at most `budget` ticks.
pub fn large_tester(
    subject: &Subject,
    budget: u64,
    schedule: Schedule,
) -> Result<(TesterVerdict, LargeTesterTrace), HaltingError> {
    if budget == 0 {
        return Err(HaltingError::ZeroBudget);
    }
    let mut t = TesterProcess::new(subject, None);
    let mut monitor = Monitor::default();
    let mut events = Vec::new();

    for tick in 1..=budget {
        let t_out = t.step()?;
        let t_view = t_out.map_or(TView::Running, TView::Returned);
        let tprime = match schedule {
            Schedule::Lockstep => TprimeView::Acted(monitor_tprime(monitor.observe(&t, tick))),
            Schedule::Sequential => TprimeView::Waiting,
        };
        let mut ev = TraceEvent::tick(tick, t_view, tprime);
        let terminal = match (t_out, tprime) {
            (Some(value), _) => Some(Verdict {
                value,
                by: Component::T,
            }),
            (None, TprimeView::Acted(TprimeAction::Return0)) => Some(Verdict {
                value: TesterVerdict::Loops,
                by: Component::TPrime,
            }),
            _ => None,
        };
        if let Some(v) = terminal {
            ev.verdict = Some(v);
            events.push(ev);
            let trace = LargeTesterTrace {
                events,
                terminal: Terminal::Verdict(v),
            };
            return Ok((v.value, trace));
        }
        events.push(ev);
    }

    let last = events.last_mut().expect("budget >= 1");
    last.marker = Some(Marker::BothLooping);
    last.verdict = Some(Verdict {
        value: TesterVerdict::Unknown,
        by: Component::Harness,
    });
    Ok((
        TesterVerdict::Unknown,
        LargeTesterTrace {
            events,
            terminal: Terminal::BothLooping,
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagonalKind {
    /// Assume T answers about S, let S act on the answer, and check the
    /// answer against what S then does.
    Classic,
    /// Run S under the large tester.
    PaperEscape,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArenaConfig {
    /// `Classic`: T's step budget per question. `PaperEscape`: tick budget.
    pub budget: u64,
    pub schedule: Schedule,
    pub s: Reflexive,
}

impl Default for ArenaConfig {
    fn default() -> Self {
        ArenaConfig {
            budget: 1000,
            schedule: Schedule::Lockstep,
            s: Reflexive::default(),
        }
    }
}

pub fn diagonal_scenario(
    kind: DiagonalKind,
    config: &ArenaConfig,
) -> Result<LargeTesterTrace, HaltingError> {
    match kind {
        DiagonalKind::Classic => classic(config),
        DiagonalKind::PaperEscape => large_tester(
            &Subject::Reflexive(config.s),
            config.budget,
            config.schedule,
        )
        .map(|(_, trace)| trace),
    }
}

/// For each answer T could give about S, realize S's resulting behaviour,
/// ask T about it, and keep the answers T would actually confirm.
fn classic(config: &ArenaConfig) -> Result<LargeTesterTrace, HaltingError> {
    if config.budget == 0 {
        return Err(HaltingError::ZeroBudget);
    }
    let mut events = Vec::new();
    let mut tick = 0;
    let mut consistent = Vec::new();

    for hypothesis in [
        TesterVerdict::Halts,
        TesterVerdict::Loops,
        TesterVerdict::Unknown,
    ] {
        let (program, input) = config.s.realize(hypothesis);
        let subject = Subject::Program { program, input };
        let mut t = TesterProcess::new(&subject, Some(config.budget));
        let observed = loop {
            tick += 1;
            let out = t.step()?;
            let mut ev = TraceEvent::tick(
                tick,
                out.map_or(TView::Running, TView::Returned),
                TprimeView::Idle,
            );
            if let Some(v) = out {
                ev.hypothesis = Some(hypothesis);
                ev.observed = Some(v);
                events.push(ev);
                break v;
            }
            events.push(ev);
        };
        if observed == hypothesis {
            consistent.push(hypothesis);
        }
    }

    let last = events.last_mut().expect("three questions were asked");
    let terminal = match consistent.first() {
        None => {
            last.marker = Some(Marker::ContradictionDetected);
            Terminal::ContradictionDetected
        }
        Some(&value) => {
            let v = Verdict {
                value,
                by: Component::T,
            };
            last.verdict = Some(v);
            Terminal::Verdict(v)
        }
    };
    Ok(LargeTesterTrace { events, terminal })
}
