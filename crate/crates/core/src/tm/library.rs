//! Machines committed alongside the crate in `machines/`.

use super::{parse_machine, TuringMachine};

pub const UNARY_INCREMENT: &str = include_str!("../../machines/unary_increment.tm");
pub const MOVER: &str = include_str!("../../machines/mover.tm");
pub const IMMEDIATE_HALT: &str = include_str!("../../machines/immediate_halt.tm");
pub const LEFT_RUNNER: &str = include_str!("../../machines/left_runner.tm");

fn load(src: &str) -> TuringMachine {
    parse_machine(src).expect("committed machine files parse")
}

/// Appends a 1 to a unary number.
pub fn unary_increment() -> TuringMachine {
    load(UNARY_INCREMENT)
}

/// Runs right over blanks forever.
pub fn mover() -> TuringMachine {
    load(MOVER)
}

/// Halts on the first step from a blank cell.
pub fn immediate_halt() -> TuringMachine {
    load(IMMEDIATE_HALT)
}

/// Loops forever when fed any machine description.
pub fn left_runner() -> TuringMachine {
    load(LEFT_RUNNER)
}

/// All committed machines, by file stem.
pub fn all() -> Vec<(&'static str, TuringMachine)> {
    vec![
        ("unary_increment", unary_increment()),
        ("mover", mover()),
        ("immediate_halt", immediate_halt()),
        ("left_runner", left_runner()),
    ]
}
