use serde::Serialize;

use super::machine::{Direction, StateId, Symbol, TuringMachine};
use super::tape::Tape;

/// Outcome of one transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    /// State the rule fired from.
    pub state: StateId,
    /// Head position before the move.
    pub head: i64,
    pub read: Symbol,
    pub written: Symbol,
    /// `None` when no rule matched and the machine halted in place.
    pub direction: Option<Direction>,
    pub next: StateId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RunKind {
    Halted,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub kind: RunKind,
    /// Symbol under the head when the machine halted.
    pub output_symbol: Option<Symbol>,
    pub steps: u64,
    pub final_state: StateId,
    pub final_tape: Tape,
}

impl RunOutcome {
    pub fn halted(&self) -> bool {
        self.kind == RunKind::Halted
    }
}

/// Steps allowed when the caller does not choose.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

impl TuringMachine {
    /// Applies one transition, returning the next state. A missing rule moves
    /// to `h1` without touching the tape or head. Returns `None` from `h1`.
    pub(crate) fn advance<'m>(&'m self, tape: &mut Tape, state: &StateId) -> Option<&'m StateId> {
        if state == self.halt_state() {
            return None;
        }
        match self.action(state.as_str(), tape.read().as_str()) {
            Some(action) => {
                tape.write(action.write.clone());
                tape.shift(action.direction);
                Some(&action.next)
            }
            None => Some(self.halt_state()),
        }
    }

    /// One step from `state`. `None` if `state` is terminal.
    pub fn step(&self, tape: &mut Tape, state: &StateId) -> Option<Transition> {
        if state == self.halt_state() {
            return None;
        }
        let head = tape.head();
        let read = tape.read().clone();
        let action = self.action(state.as_str(), read.as_str());
        let next = self.advance(tape, state)?.clone();
        Some(Transition {
            state: state.clone(),
            head,
            written: action.map_or_else(|| read.clone(), |a| a.write.clone()),
            read,
            direction: action.map(|a| a.direction),
            next,
        })
    }

    /// Runs from `h0` until `h1` or until `budget` steps have been taken.
    /// A zero budget reports `BudgetExceeded` after zero steps.
    pub fn run(&self, tape: Tape, budget: u64) -> RunOutcome {
        let mut tape = tape;
        let mut state = self.start_state();
        let mut steps = 0;
        while steps < budget {
            match self.advance(&mut tape, state) {
                Some(next) => {
                    state = next;
                    steps += 1;
                    if state == self.halt_state() {
                        break;
                    }
                }
                None => break,
            }
        }
        self.outcome(tape, state.clone(), steps)
    }

    /// As [`TuringMachine::run`], reporting every transition to `observer`
    /// with its 1-based step number.
    pub fn run_traced(
        &self,
        tape: Tape,
        budget: u64,
        mut observer: impl FnMut(u64, &Transition),
    ) -> RunOutcome {
        let mut tape = tape;
        let mut state = self.start_state().clone();
        let mut steps = 0;
        while steps < budget {
            let Some(t) = self.step(&mut tape, &state) else {
                break;
            };
            steps += 1;
            observer(steps, &t);
            state = t.next;
            if &state == self.halt_state() {
                break;
            }
        }
        self.outcome(tape, state, steps)
    }

    /// Convenience: tape laid out from `input`, one symbol per character.
    pub fn run_on_str(&self, input: &str, budget: u64) -> RunOutcome {
        self.run(Tape::from_chars(self.blank().clone(), input), budget)
    }

    fn outcome(&self, tape: Tape, state: StateId, steps: u64) -> RunOutcome {
        let halted = &state == self.halt_state();
        RunOutcome {
            kind: if halted {
                RunKind::Halted
            } else {
                RunKind::BudgetExceeded
            },
            output_symbol: halted.then(|| tape.read().clone()),
            steps,
            final_state: state,
            final_tape: tape,
        }
    }
}
