//! Line-oriented rule DSL.
//!
//! ```text
//! # comment
//! states h0 h1 scan
//! symbols 1
//! blank _
//! rule h0 1 -> h0 1 +1
//! ```
//!
//! `;` separates statements on one line. `h0` and `h1` are always declared, and
//! the blank defaults to `_`.

use std::fmt;

use thiserror::Error;

use super::machine::{
    is_valid_token, Direction, MachineError, Rule, RulePart, StateId, Symbol, TuringMachine,
    RESERVED_TOKENS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
    #[error("`{0}` is reserved and cannot name a state or symbol")]
    Reserved(String),
    #[error("invalid direction `{0}`, expected +1 or -1")]
    BadDirection(String),
    #[error("blank symbol declared more than once")]
    DuplicateBlank,
    #[error(transparent)]
    Machine(#[from] MachineError),
}

/// Parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }
}

/// Splits source into statements of tokens.
fn statements(source: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (line_idx, line) in source.lines().enumerate() {
        let mut current = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        let mut column = 0;
        let mut end_at = line.len();
        for (byte, ch) in line.char_indices() {
            column += 1;
            if ch == '#' {
                end_at = byte;
                break;
            }
            if ch.is_whitespace() || ch == ';' {
                if let Some((b, c)) = start.take() {
                    current.push(Token {
                        text: &line[b..byte],
                        line: line_idx + 1,
                        column: c,
                    });
                }
                if ch == ';' && !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
            } else if start.is_none() {
                start = Some((byte, column));
            }
        }
        if let Some((b, c)) = start {
            current.push(Token {
                text: &line[b..end_at],
                line: line_idx + 1,
                column: c,
            });
        }
        if !current.is_empty() {
            out.push(current);
        }
    }
    out
}

fn name<'a>(token: &Token<'a>) -> Result<&'a str, ParseError> {
    if RESERVED_TOKENS.contains(&token.text) || !is_valid_token(token.text) {
        return Err(token.error(ParseErrorKind::Reserved(token.text.to_owned())));
    }
    Ok(token.text)
}

fn expect<'s, 'a>(
    stmt: &'s [Token<'a>],
    idx: usize,
    expected: &'static str,
) -> Result<&'s Token<'a>, ParseError> {
    stmt.get(idx).ok_or_else(|| {
        let last = stmt.last().expect("statements are non-empty");
        ParseError {
            line: last.line,
            column: last.column + last.text.chars().count(),
            kind: ParseErrorKind::Unexpected {
                expected,
                found: "end of statement".to_owned(),
            },
        }
    })
}

struct ParsedRule<'a> {
    rule: Rule,
    tokens: [Token<'a>; 4],
}

impl<'a> ParsedRule<'a> {
    fn error_at(&self, (kind, part): (MachineError, RulePart)) -> ParseError {
        let token = match part {
            RulePart::State => &self.tokens[0],
            RulePart::Read => &self.tokens[1],
            RulePart::Next => &self.tokens[2],
            RulePart::Write => &self.tokens[3],
        };
        token.error(ParseErrorKind::Machine(kind))
    }
}

fn parse_rule<'a>(stmt: &[Token<'a>]) -> Result<ParsedRule<'a>, ParseError> {
    let state = expect(stmt, 1, "state")?;
    let read = expect(stmt, 2, "symbol")?;
    let arrow = expect(stmt, 3, "`->`")?;
    if arrow.text != "->" {
        return Err(arrow.error(ParseErrorKind::Unexpected {
            expected: "`->`",
            found: format!("`{}`", arrow.text),
        }));
    }
    let next = expect(stmt, 4, "state")?;
    let write = expect(stmt, 5, "symbol")?;
    let dir = expect(stmt, 6, "direction")?;
    if let Some(extra) = stmt.get(7) {
        return Err(extra.error(ParseErrorKind::Unexpected {
            expected: "end of statement",
            found: format!("`{}`", extra.text),
        }));
    }
    let direction = Direction::from_token(dir.text)
        .ok_or_else(|| dir.error(ParseErrorKind::BadDirection(dir.text.to_owned())))?;
    let rule = Rule::new(
        name(state)?,
        name(read)?,
        name(next)?,
        name(write)?,
        direction,
    );
    Ok(ParsedRule {
        rule,
        tokens: [state.clone(), read.clone(), next.clone(), write.clone()],
    })
}

/// Parses and validates a machine.
pub fn parse_machine(source: &str) -> Result<TuringMachine, ParseError> {
    let mut states: Vec<StateId> = Vec::new();
    let mut symbols: Vec<Symbol> = Vec::new();
    let mut blank: Option<Symbol> = None;
    let mut rules: Vec<ParsedRule<'_>> = Vec::new();

    let stmts = statements(source);
    for stmt in &stmts {
        let head = &stmt[0];
        match head.text {
            "states" => {
                for t in &stmt[1..] {
                    states.push(StateId::new(name(t)?));
                }
            }
            "symbols" => {
                for t in &stmt[1..] {
                    symbols.push(Symbol::new(name(t)?));
                }
            }
            "blank" => {
                let t = expect(stmt, 1, "blank symbol")?;
                if let Some(extra) = stmt.get(2) {
                    return Err(extra.error(ParseErrorKind::Unexpected {
                        expected: "end of statement",
                        found: format!("`{}`", extra.text),
                    }));
                }
                if blank.is_some() {
                    return Err(head.error(ParseErrorKind::DuplicateBlank));
                }
                blank = Some(Symbol::new(name(t)?));
            }
            "rule" => {
                let parsed = parse_rule(stmt)?;
                if parsed.rule.state.as_str() == super::HALT {
                    return Err(parsed.error_at((
                        MachineError::RuleFromTerminal {
                            symbol: parsed.rule.read.clone(),
                        },
                        RulePart::State,
                    )));
                }
                if rules.iter().any(|r| {
                    r.rule.state == parsed.rule.state && r.rule.read == parsed.rule.read
                }) {
                    return Err(parsed.error_at((
                        MachineError::DuplicateRule {
                            state: parsed.rule.state.clone(),
                            symbol: parsed.rule.read.clone(),
                        },
                        RulePart::Read,
                    )));
                }
                rules.push(parsed);
            }
            other => {
                return Err(head.error(ParseErrorKind::UnknownDirective(other.to_owned())));
            }
        }
    }

    let mut machine =
        TuringMachine::empty(states, symbols, blank.unwrap_or_else(|| Symbol::new("_")));
    for parsed in rules {
        machine
            .check_terminal_and_duplicate(&parsed.rule)
            .and_then(|()| machine.check_membership(&parsed.rule))
            .map_err(|e| parsed.error_at(e))?;
        machine.insert_unchecked(parsed.rule);
    }
    Ok(machine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_machine() {
        let m = parse_machine("states h0 h1 ; blank _ ; rule h0 _ -> h1 _ +1").unwrap();
        assert_eq!(m.rule_count(), 1);
        let action = m.action("h0", "_").unwrap();
        assert_eq!(action.next.as_str(), "h1");
        assert_eq!(action.direction, Direction::Right);
    }

    #[test]
    fn rule_from_terminal() {
        let err = parse_machine("rule h1 _ -> h0 _ +1").unwrap_err();
        assert_eq!((err.line, err.column), (1, 6));
        assert!(matches!(
            err.kind,
            ParseErrorKind::Machine(MachineError::RuleFromTerminal { .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let src = "# header\n\nstates h0 h1 q # trailing\nsymbols 1\nrule h0 1 -> q 1 +1\n";
        let m = parse_machine(src).unwrap();
        assert!(m.states().contains("q"));
        assert!(m.symbols().contains("1"));
        assert!(m.symbols().contains("_"));
    }

    #[test]
    fn undeclared_symbol_points_at_token() {
        let err = parse_machine("states h0 h1\nrule h0 x -> h1 _ +1").unwrap_err();
        assert_eq!((err.line, err.column), (2, 9));
        assert_eq!(
            err.kind,
            ParseErrorKind::Machine(MachineError::UndeclaredSymbol("x".into()))
        );
    }

    #[test]
    fn undeclared_state() {
        let err = parse_machine("rule h0 _ -> scan _ +1").unwrap_err();
        assert_eq!(err.column, 14);
        assert!(matches!(
            err.kind,
            ParseErrorKind::Machine(MachineError::UndeclaredState(_))
        ));
    }

    #[test]
    fn duplicate_rule() {
        let err = parse_machine("rule h0 _ -> h1 _ +1\nrule h0 _ -> h0 _ -1").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(
            err.kind,
            ParseErrorKind::Machine(MachineError::DuplicateRule { .. })
        ));
    }

    #[test]
    fn syntax_errors() {
        let err = parse_machine("rule h0 _ => h1 _ +1").unwrap_err();
        assert_eq!(err.column, 11);
        let err = parse_machine("rule h0 _ -> h1 _ 1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BadDirection("1".into()));
        let err = parse_machine("rule h0 _ -> h1 _").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Unexpected { .. }));
        assert_eq!(err.column, 18);
        let err = parse_machine("states h0\nhalt h1").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.kind, ParseErrorKind::UnknownDirective("halt".into()));
        let err = parse_machine("blank _\nblank 0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateBlank);
        let err = parse_machine("symbols {").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Reserved("{".into()));
    }

    #[test]
    fn error_display_has_position() {
        let err = parse_machine("\n  bogus").unwrap_err();
        assert_eq!(err.to_string(), "line 2, column 3: unknown directive `bogus`");
    }

    #[test]
    fn custom_blank() {
        let m = parse_machine("blank 0\nsymbols 1\nrule h0 0 -> h1 1 -1").unwrap();
        assert_eq!(m.blank().as_str(), "0");
        assert!(!m.symbols().contains("_"));
    }
}
