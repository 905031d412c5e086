//! Self-application demo for halting deciders.
//!
//! Given a candidate decider `D`, the diagonal wrapper `H` behaves as follows on
//! an input description `x`: ask `D` whether `x` halts on `x`; if the answer is
//! "halts", loop forever, otherwise halt. Running `H` on its own description then
//! contradicts whatever `D` predicted about it.
//!
//! Deciders are ordinary Rust code, so `H` is not a pure rule table. Its
//! description names the decider and carries the two tail machines it switches
//! between. Everything runs under nested step meters: a decider that simulates
//! another program opens a meter of its own, and every step charges all open
//! meters, so a decider simulating `H` (which in turn consults the decider) runs
//! out of its own budget rather than recursing forever.

use std::thread;

use serde::Serialize;

use super::library;
use super::machine::{is_valid_token, EncodeError, Symbol, TuringMachine};
use super::tape::Tape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Prediction {
    Halts,
    Loops,
}

/// A meter ran dry. `level` is the outermost exhausted meter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted {
    pub level: usize,
}

/// A candidate halting decider. Must return for every input.
pub trait Decider: Sync {
    /// Token naming this decider inside wrapper descriptions.
    fn name(&self) -> String;

    /// Predicts whether `program` halts on `input`. Any simulation must go
    /// through `exec` so that its steps are metered.
    fn predict(
        &self,
        program: &[Symbol],
        input: &[Symbol],
        exec: &mut Executor<'_>,
    ) -> Result<Prediction, Exhausted>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AlwaysHalt;

impl Decider for AlwaysHalt {
    fn name(&self) -> String {
        "always-halt".into()
    }

    fn predict(&self, _: &[Symbol], _: &[Symbol], _: &mut Executor<'_>) -> Result<Prediction, Exhausted> {
        Ok(Prediction::Halts)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AlwaysLoop;

impl Decider for AlwaysLoop {
    fn name(&self) -> String {
        "always-loop".into()
    }

    fn predict(&self, _: &[Symbol], _: &[Symbol], _: &mut Executor<'_>) -> Result<Prediction, Exhausted> {
        Ok(Prediction::Loops)
    }
}

/// Simulates the program for a fixed number of steps; predicts "halts" iff it
/// halted in time.
#[derive(Debug, Clone, Copy)]
pub struct BudgetRunner {
    pub budget: u64,
}

impl BudgetRunner {
    pub fn new(budget: u64) -> Self {
        Self { budget }
    }
}

impl Decider for BudgetRunner {
    fn name(&self) -> String {
        format!("budget-runner-{}", self.budget)
    }

    fn predict(
        &self,
        program: &[Symbol],
        input: &[Symbol],
        exec: &mut Executor<'_>,
    ) -> Result<Prediction, Exhausted> {
        Ok(match exec.simulate(program, input, self.budget)? {
            Observation::Halted { .. } => Prediction::Halts,
            _ => Prediction::Loops,
        })
    }
}

/// Bounded observation of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Observation {
    Halted { steps: u64 },
    BudgetExceeded { steps: u64 },
    /// The budget ran out while the wrapper was still waiting on the decider,
    /// so its constructed behavior was never reached.
    Inconclusive { steps: u64 },
}

impl Observation {
    /// Whether this observation bears out `prediction`; `None` if inconclusive.
    pub fn confirms(&self, prediction: Prediction) -> Option<bool> {
        match self {
            Observation::Halted { .. } => Some(prediction == Prediction::Halts),
            Observation::BudgetExceeded { .. } => Some(prediction == Prediction::Loops),
            Observation::Inconclusive { .. } => None,
        }
    }
}

/// The diagonal wrapper for one decider.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalMachine {
    pub decider: String,
    /// Runs on a blank tape when the decider predicts "halts". Must loop.
    pub if_halts: TuringMachine,
    /// Runs on a blank tape when the decider predicts "loops". Must halt.
    pub if_loops: TuringMachine,
}

const DIAG: &str = "diag";
const IF_HALTS: &str = "if-halts";
const IF_LOOPS: &str = "if-loops";

impl DiagonalMachine {
    /// Wrapper using the committed mover and immediate-halt machines as tails.
    pub fn for_decider(decider: &dyn Decider) -> Self {
        Self {
            decider: decider.name(),
            if_halts: library::mover(),
            if_loops: library::immediate_halt(),
        }
    }

    pub fn tail(&self, prediction: Prediction) -> &TuringMachine {
        match prediction {
            Prediction::Halts => &self.if_halts,
            Prediction::Loops => &self.if_loops,
        }
    }

    /// `diag <decider> ; if-halts { <machine> } ; if-loops { <machine> }`
    pub fn encode(&self) -> Result<Vec<Symbol>, EncodeError> {
        if !is_valid_token(&self.decider) {
            return Err(EncodeError {
                token: self.decider.clone(),
            });
        }
        let words = |ws: &[&str]| ws.iter().map(Symbol::new).collect::<Vec<_>>();
        let mut out = words(&[DIAG, &self.decider, ";", IF_HALTS, "{"]);
        out.extend(self.if_halts.encode()?);
        out.extend(words(&["}", ";", IF_LOOPS, "{"]));
        out.extend(self.if_loops.encode()?);
        out.push(Symbol::new("}"));
        Ok(out)
    }

    pub fn decode(tokens: &[Symbol]) -> Option<Self> {
        let text: Vec<&str> = tokens.iter().map(Symbol::as_str).collect();
        let [DIAG, decider, ";", IF_HALTS, "{", ..] = text.as_slice() else {
            return None;
        };
        let first_end = 5 + text[5..].iter().position(|t| *t == "}")?;
        let [";", IF_LOOPS, "{", .., "}"] = &text[first_end + 1..] else {
            return None;
        };
        Some(Self {
            decider: (*decider).to_owned(),
            if_halts: TuringMachine::decode(&tokens[5..first_end]).ok()?,
            if_loops: TuringMachine::decode(&tokens[first_end + 4..tokens.len() - 1]).ok()?,
        })
    }
}

/// What a description decodes to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Program {
    Plain(TuringMachine),
    Diagonal(DiagonalMachine),
    /// Not a valid description. Executes as a machine that halts at once.
    Invalid,
}

impl Program {
    pub fn decode(tokens: &[Symbol]) -> Self {
        if tokens.first().is_some_and(|t| t.as_str() == DIAG) {
            DiagonalMachine::decode(tokens).map_or(Program::Invalid, Program::Diagonal)
        } else {
            TuringMachine::decode(tokens).map_or(Program::Invalid, Program::Plain)
        }
    }
}

/// Metered interpreter for descriptions, shared by the demo and by deciders
/// that simulate.
pub struct Executor<'d> {
    decider: &'d dyn Decider,
    meters: Vec<u64>,
}

impl<'d> Executor<'d> {
    /// Wrapper descriptions naming `decider` resolve to it; any other decider
    /// name makes the description invalid.
    pub fn new(decider: &'d dyn Decider) -> Self {
        Self {
            decider,
            meters: Vec::new(),
        }
    }

    /// Number of open meters.
    pub fn depth(&self) -> usize {
        self.meters.len()
    }

    /// Deducts `n` steps from every open meter.
    pub fn charge(&mut self, n: u64) -> Result<(), Exhausted> {
        let mut hit = None;
        for (level, remaining) in self.meters.iter_mut().enumerate() {
            if *remaining < n {
                *remaining = 0;
                hit.get_or_insert(level);
            } else {
                *remaining -= n;
            }
        }
        hit.map_or(Ok(()), |level| Err(Exhausted { level }))
    }

    /// Runs `program` on `input` under a new meter of `budget` steps. Running
    /// out of this meter is an observation; running out of an enclosing one
    /// propagates as `Err`.
    pub fn simulate(
        &mut self,
        program: &[Symbol],
        input: &[Symbol],
        budget: u64,
    ) -> Result<Observation, Exhausted> {
        let level = self.meters.len();
        self.meters.push(budget);
        let result = self.execute(program, input);
        let remaining = self.meters.pop().expect("meter pushed above");
        match result {
            Ok(()) => Ok(Observation::Halted {
                steps: budget - remaining,
            }),
            Err(e) if e.level == level => Ok(Observation::BudgetExceeded { steps: budget }),
            Err(e) => Err(e),
        }
    }

    /// Runs until the program halts; only returns `Err` when a meter runs dry.
    fn execute(&mut self, program: &[Symbol], input: &[Symbol]) -> Result<(), Exhausted> {
        match Program::decode(program) {
            Program::Plain(machine) => self.run_machine(&machine, input),
            Program::Diagonal(wrapper) if wrapper.decider == self.decider.name() => {
                // reading its own description
                self.charge(program.len() as u64)?;
                let decider = self.decider;
                let prediction = decider.predict(input, input, self)?;
                self.run_machine(wrapper.tail(prediction), &[])
            }
            Program::Diagonal(_) | Program::Invalid => self.charge(1),
        }
    }

    fn run_machine(&mut self, machine: &TuringMachine, input: &[Symbol]) -> Result<(), Exhausted> {
        let mut tape = Tape::with_input(machine.blank().clone(), input.iter().cloned());
        let mut state = machine.start_state();
        loop {
            self.charge(1)?;
            match machine.advance(&mut tape, state) {
                Some(next) if next != machine.halt_state() => state = next,
                _ => return Ok(()),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiagonalVerdict {
    /// Observed behavior contradicts the prediction.
    Mismatch,
    /// Observed behavior matches the prediction.
    Agreement,
    /// Budget too small to reach the wrapper's constructed behavior.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusRow {
    pub index: usize,
    /// Decider's prediction for the machine run on its own description.
    pub prediction: Prediction,
    /// The machine run on its own description.
    pub observed: Observation,
    pub decider_correct: Option<bool>,
    /// The wrapper run on the machine's description.
    pub wrapper: Observation,
    /// Wrapper halted iff the prediction was "loops".
    pub wrapper_inverts: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfApplication {
    pub encoding: Vec<Symbol>,
    pub prediction: Prediction,
    pub observed: Observation,
    pub verdict: DiagonalVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalReport {
    pub decider: String,
    pub budget: u64,
    pub corpus: Vec<CorpusRow>,
    pub self_application: SelfApplication,
}

impl DiagonalReport {
    pub fn mismatch_exhibited(&self) -> bool {
        self.self_application.verdict == DiagonalVerdict::Mismatch
    }
}

/// Runs `wrapper` on `input` at the top level, telling apart exhaustion
/// during the decider call from exhaustion in the tail.
fn observe_wrapper(
    decider: &dyn Decider,
    wrapper: &DiagonalMachine,
    description_len: usize,
    input: &[Symbol],
    budget: u64,
) -> Observation {
    let mut exec = Executor::new(decider);
    exec.meters.push(budget);
    let prediction = exec
        .charge(description_len as u64)
        .and_then(|()| decider.predict(input, input, &mut exec));
    let Ok(prediction) = prediction else {
        return Observation::Inconclusive { steps: budget };
    };
    match exec.run_machine(wrapper.tail(prediction), &[]) {
        Ok(()) => Observation::Halted {
            steps: budget - exec.meters[0],
        },
        Err(_) => Observation::BudgetExceeded { steps: budget },
    }
}

/// Unmetered prediction; relies on the decider being total.
fn predict(decider: &dyn Decider, program: &[Symbol], input: &[Symbol]) -> Prediction {
    let mut exec = Executor::new(decider);
    decider
        .predict(program, input, &mut exec)
        .expect("no meters are open, so none can run dry")
}

fn observe_machine(machine: &TuringMachine, input: &[Symbol], budget: u64) -> Observation {
    let tape = Tape::with_input(machine.blank().clone(), input.iter().cloned());
    let out = machine.run(tape, budget);
    if out.halted() {
        Observation::Halted { steps: out.steps }
    } else {
        Observation::BudgetExceeded { steps: out.steps }
    }
}

/// Nested simulation recurses once per decider call, so it runs on a thread
/// with a generous stack.
const DEMO_STACK_BYTES: usize = 256 * 1024 * 1024;

/// Builds the wrapper for `decider`, runs it on every corpus description and
/// on its own, and reports predictions against bounded observations.
pub fn diagonalize_demo(
    decider: &dyn Decider,
    corpus: &[TuringMachine],
    budget: u64,
) -> Result<DiagonalReport, EncodeError> {
    let wrapper = DiagonalMachine::for_decider(decider);
    let own = wrapper.encode()?;
    let encodings = corpus
        .iter()
        .map(TuringMachine::encode)
        .collect::<Result<Vec<_>, _>>()?;

    let report = thread::scope(|s| {
        thread::Builder::new()
            .name("diagonalize".into())
            .stack_size(DEMO_STACK_BYTES)
            .spawn_scoped(s, || {
                let rows = corpus
                    .iter()
                    .zip(&encodings)
                    .enumerate()
                    .map(|(index, (machine, enc))| {
                        let prediction = predict(decider, enc, enc);
                        let observed = observe_machine(machine, enc, budget);
                        let wrapper_run = observe_wrapper(decider, &wrapper, own.len(), enc, budget);
                        CorpusRow {
                            index,
                            prediction,
                            observed,
                            decider_correct: observed.confirms(prediction),
                            wrapper: wrapper_run,
                            wrapper_inverts: wrapper_run.confirms(prediction).map(|same| !same),
                        }
                    })
                    .collect();

                let prediction = predict(decider, &own, &own);
                let observed = observe_wrapper(decider, &wrapper, own.len(), &own, budget);
                let verdict = match observed.confirms(prediction) {
                    Some(false) => DiagonalVerdict::Mismatch,
                    Some(true) => DiagonalVerdict::Agreement,
                    None => DiagonalVerdict::Inconclusive,
                };
                DiagonalReport {
                    decider: decider.name(),
                    budget,
                    corpus: rows,
                    self_application: SelfApplication {
                        encoding: own.clone(),
                        prediction,
                        observed,
                        verdict,
                    },
                }
            })
            .expect("spawn diagonalization thread")
            .join()
            .expect("diagonalization thread panicked")
    });
    Ok(report)
}
