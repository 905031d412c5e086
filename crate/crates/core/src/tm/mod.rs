//! Classical Turing machine engine.
//!
//! A machine is a rule table `(I, a) -> (I', a', d)` with `d = ±1`, started in
//! `h0` and stopped in `h1`. A state/symbol pair with no rule sends the machine
//! to `h1` in place, so every valid machine either halts or runs forever; runs
//! are cut off by a step budget and report `BudgetExceeded` distinctly.

mod diag;
pub mod library;
mod machine;
mod parse;
mod run;
mod tape;

pub use diag::{
    diagonalize_demo, AlwaysHalt, AlwaysLoop, BudgetRunner, CorpusRow, Decider, DiagonalMachine,
    DiagonalReport, DiagonalVerdict, Executor, Exhausted, Observation, Prediction, Program,
    SelfApplication,
};
pub use machine::{
    decode_machine, encode_machine, is_valid_token, Action, Direction, EncodeError, MachineError,
    Rule, StateId, Symbol, TuringMachine, HALT, RESERVED_TOKENS, START,
};
pub use parse::{parse_machine, ParseError, ParseErrorKind};
pub use run::{RunKind, RunOutcome, Transition, DEFAULT_BUDGET};
pub use tape::Tape;
