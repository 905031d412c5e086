use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

macro_rules! token_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
        #[serde(transparent)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(s: impl AsRef<str>) -> Self {
                Self(Arc::from(s.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self::new(s)
            }
        }
    };
}

token_newtype!(
    /// Tape symbol.
    Symbol
);
token_newtype!(
    /// Internal state identifier.
    StateId
);

/// Start state.
pub const START: &str = "h0";
/// Terminal state. No rule fires from it.
pub const HALT: &str = "h1";

/// Tokens that delimit statements or wrapper blocks in the DSL.
pub const RESERVED_TOKENS: [&str; 4] = ["->", ";", "{", "}"];

/// True if `token` can appear as a state or symbol name in DSL text.
pub fn is_valid_token(token: &str) -> bool {
    !token.is_empty()
        && !token.chars().any(|c| c.is_whitespace() || c == '#' || c == ';')
        && !RESERVED_TOKENS.contains(&token)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn offset(self) -> i64 {
        match self {
            Direction::Left => -1,
            Direction::Right => 1,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Direction::Left => "-1",
            Direction::Right => "+1",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        match token {
            "-1" => Some(Direction::Left),
            "+1" => Some(Direction::Right),
            _ => None,
        }
    }
}

/// Right-hand side of `(I, a) -> (I', a', d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Action {
    pub next: StateId,
    pub write: Symbol,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Rule {
    pub state: StateId,
    pub read: Symbol,
    pub action: Action,
}

impl Rule {
    pub fn new(
        state: impl Into<StateId>,
        read: impl Into<Symbol>,
        next: impl Into<StateId>,
        write: impl Into<Symbol>,
        direction: Direction,
    ) -> Self {
        Self {
            state: state.into(),
            read: read.into(),
            action: Action {
                next: next.into(),
                write: write.into(),
                direction,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("rule fires from terminal state {HALT} on symbol `{symbol}`")]
    RuleFromTerminal { symbol: Symbol },
    #[error("state `{0}` is not declared")]
    UndeclaredState(StateId),
    #[error("symbol `{0}` is not declared")]
    UndeclaredSymbol(Symbol),
    #[error("more than one rule for state `{state}` reading `{symbol}`")]
    DuplicateRule { state: StateId, symbol: Symbol },
}

/// Which token of a rule a [`MachineError`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RulePart {
    State,
    Read,
    Next,
    Write,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{token}` collides with a DSL delimiter and cannot be encoded")]
pub struct EncodeError {
    pub token: String,
}

/// Deterministic single-tape machine. Starts in `h0`, stops in `h1`.
///
/// States and symbols are sets, rules a map keyed by `(state, symbol)`, so two
/// machines with the same content compare equal regardless of the order they
/// were written in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    states: BTreeSet<StateId>,
    symbols: BTreeSet<Symbol>,
    blank: Symbol,
    rules: BTreeMap<StateId, BTreeMap<Symbol, Action>>,
    start: StateId,
    halt: StateId,
}

impl TuringMachine {
    /// `h0`, `h1` and the blank are added to the declared sets.
    pub fn new(
        states: impl IntoIterator<Item = StateId>,
        symbols: impl IntoIterator<Item = Symbol>,
        blank: Symbol,
        rules: impl IntoIterator<Item = Rule>,
    ) -> Result<Self, MachineError> {
        let mut machine = Self::empty(states, symbols, blank);
        for rule in rules {
            machine.check_rule(&rule).map_err(|(e, _)| e)?;
            machine.insert_unchecked(rule);
        }
        Ok(machine)
    }

    pub(crate) fn empty(
        states: impl IntoIterator<Item = StateId>,
        symbols: impl IntoIterator<Item = Symbol>,
        blank: Symbol,
    ) -> Self {
        let start = StateId::new(START);
        let halt = StateId::new(HALT);
        let mut states: BTreeSet<StateId> = states.into_iter().collect();
        states.insert(start.clone());
        states.insert(halt.clone());
        let mut symbols: BTreeSet<Symbol> = symbols.into_iter().collect();
        symbols.insert(blank.clone());
        Self {
            states,
            symbols,
            blank,
            rules: BTreeMap::new(),
            start,
            halt,
        }
    }

    pub(crate) fn check_terminal_and_duplicate(
        &self,
        rule: &Rule,
    ) -> Result<(), (MachineError, RulePart)> {
        if rule.state == self.halt {
            return Err((
                MachineError::RuleFromTerminal {
                    symbol: rule.read.clone(),
                },
                RulePart::State,
            ));
        }
        if self.action(rule.state.as_str(), rule.read.as_str()).is_some() {
            return Err((
                MachineError::DuplicateRule {
                    state: rule.state.clone(),
                    symbol: rule.read.clone(),
                },
                RulePart::Read,
            ));
        }
        Ok(())
    }

    pub(crate) fn check_membership(&self, rule: &Rule) -> Result<(), (MachineError, RulePart)> {
        let state = |s: &StateId, part| {
            if self.states.contains(s) {
                Ok(())
            } else {
                Err((MachineError::UndeclaredState(s.clone()), part))
            }
        };
        let symbol = |s: &Symbol, part| {
            if self.symbols.contains(s) {
                Ok(())
            } else {
                Err((MachineError::UndeclaredSymbol(s.clone()), part))
            }
        };
        state(&rule.state, RulePart::State)?;
        symbol(&rule.read, RulePart::Read)?;
        state(&rule.action.next, RulePart::Next)?;
        symbol(&rule.action.write, RulePart::Write)
    }

    fn check_rule(&self, rule: &Rule) -> Result<(), (MachineError, RulePart)> {
        self.check_terminal_and_duplicate(rule)?;
        self.check_membership(rule)
    }

    pub(crate) fn insert_unchecked(&mut self, rule: Rule) {
        self.rules
            .entry(rule.state)
            .or_default()
            .insert(rule.read, rule.action);
    }

    pub fn states(&self) -> &BTreeSet<StateId> {
        &self.states
    }

    pub fn symbols(&self) -> &BTreeSet<Symbol> {
        &self.symbols
    }

    pub fn blank(&self) -> &Symbol {
        &self.blank
    }

    pub fn start_state(&self) -> &StateId {
        &self.start
    }

    pub fn halt_state(&self) -> &StateId {
        &self.halt
    }

    pub fn rule_count(&self) -> usize {
        self.rules.values().map(BTreeMap::len).sum()
    }

    /// Rules in canonical `(state, symbol)` order.
    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.rules.iter().flat_map(|(state, row)| {
            row.iter().map(move |(read, action)| Rule {
                state: state.clone(),
                read: read.clone(),
                action: action.clone(),
            })
        })
    }

    pub fn action(&self, state: &str, read: &str) -> Option<&Action> {
        self.rules.get(state).and_then(|row| row.get(read))
    }

    /// Canonical statements: states (h0, h1 first), non-blank symbols, blank,
    /// then rules sorted by `(state, symbol)`.
    fn statements(&self) -> Result<Vec<Vec<&str>>, EncodeError> {
        let mut out = Vec::new();
        let mut states = vec!["states", START, HALT];
        states.extend(
            self.states
                .iter()
                .map(StateId::as_str)
                .filter(|s| *s != START && *s != HALT),
        );
        out.push(states);
        let symbols: Vec<&str> = self
            .symbols
            .iter()
            .filter(|s| **s != self.blank)
            .map(Symbol::as_str)
            .collect();
        if !symbols.is_empty() {
            let mut line = vec!["symbols"];
            line.extend(symbols);
            out.push(line);
        }
        out.push(vec!["blank", self.blank.as_str()]);
        for (state, row) in &self.rules {
            for (read, action) in row {
                out.push(vec![
                    "rule",
                    state.as_str(),
                    read.as_str(),
                    "->",
                    action.next.as_str(),
                    action.write.as_str(),
                    action.direction.token(),
                ]);
            }
        }
        let names = self
            .states
            .iter()
            .map(StateId::as_str)
            .chain(self.symbols.iter().map(Symbol::as_str));
        for name in names {
            if !is_valid_token(name) {
                return Err(EncodeError {
                    token: name.to_owned(),
                });
            }
        }
        Ok(out)
    }

    /// Canonical multi-line DSL text.
    pub fn to_dsl(&self) -> Result<String, EncodeError> {
        Ok(self
            .statements()?
            .iter()
            .map(|line| line.join(" ") + "\n")
            .collect())
    }

    /// Description of this machine as tape symbols: the tokens of its
    /// canonical DSL text, with `;` between statements.
    pub fn encode(&self) -> Result<Vec<Symbol>, EncodeError> {
        let statements = self.statements()?;
        let mut tokens = Vec::new();
        for (i, line) in statements.iter().enumerate() {
            if i > 0 {
                tokens.push(Symbol::new(";"));
            }
            tokens.extend(line.iter().map(Symbol::new));
        }
        Ok(tokens)
    }

    /// Inverse of [`TuringMachine::encode`].
    pub fn decode(tokens: &[Symbol]) -> Result<Self, super::ParseError> {
        let text = tokens
            .iter()
            .map(Symbol::as_str)
            .collect::<Vec<_>>()
            .join(" ");
        super::parse_machine(&text)
    }
}

/// Free-function form of [`TuringMachine::encode`].
pub fn encode_machine(machine: &TuringMachine) -> Result<Vec<Symbol>, EncodeError> {
    machine.encode()
}

/// Free-function form of [`TuringMachine::decode`].
pub fn decode_machine(tokens: &[Symbol]) -> Result<TuringMachine, super::ParseError> {
    TuringMachine::decode(tokens)
}
