use std::collections::BTreeMap;
use std::fmt;

use super::machine::{Direction, Symbol};

/// Two-way unbounded tape. Only non-blank cells are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tape {
    cells: BTreeMap<i64, Symbol>,
    head: i64,
    blank: Symbol,
}

impl Tape {
    pub fn new(blank: Symbol) -> Self {
        Self {
            cells: BTreeMap::new(),
            head: 0,
            blank,
        }
    }

    /// Lays `input` out from cell 0 with the head on cell 0.
    pub fn with_input(blank: Symbol, input: impl IntoIterator<Item = Symbol>) -> Self {
        let mut tape = Self::new(blank);
        for (i, sym) in input.into_iter().enumerate() {
            tape.set(i as i64, sym);
        }
        tape
    }

    /// One symbol per character.
    pub fn from_chars(blank: Symbol, input: &str) -> Self {
        let mut buf = [0u8; 4];
        Self::with_input(
            blank,
            input.chars().map(|c| Symbol::new(c.encode_utf8(&mut buf))),
        )
    }

    fn set(&mut self, index: i64, sym: Symbol) {
        if sym == self.blank {
            self.cells.remove(&index);
        } else {
            self.cells.insert(index, sym);
        }
    }

    pub fn head(&self) -> i64 {
        self.head
    }

    pub fn blank(&self) -> &Symbol {
        &self.blank
    }

    pub fn cell(&self, index: i64) -> &Symbol {
        self.cells.get(&index).unwrap_or(&self.blank)
    }

    pub fn read(&self) -> &Symbol {
        self.cell(self.head)
    }

    pub fn write(&mut self, sym: Symbol) {
        self.set(self.head, sym);
    }

    pub fn shift(&mut self, direction: Direction) {
        self.head += direction.offset();
    }

    pub fn non_blank_count(&self) -> usize {
        self.cells.len()
    }

    /// Index range spanning every non-blank cell.
    pub fn span(&self) -> Option<(i64, i64)> {
        Some((*self.cells.keys().next()?, *self.cells.keys().next_back()?))
    }

    /// Symbols from the first to the last non-blank cell, blanks in between.
    pub fn contents(&self) -> Vec<Symbol> {
        match self.span() {
            Some((lo, hi)) => (lo..=hi).map(|i| self.cell(i).clone()).collect(),
            None => Vec::new(),
        }
    }
}

impl fmt::Display for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sym in self.contents() {
            f.write_str(sym.as_str())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blank_cells_are_not_stored() {
        let mut tape = Tape::from_chars("_".into(), "1_1");
        assert_eq!(tape.non_blank_count(), 2);
        assert_eq!(tape.to_string(), "1_1");
        tape.write("_".into());
        assert_eq!(tape.to_string(), "1");
        assert_eq!(tape.span(), Some((2, 2)));
    }

    #[test]
    fn unbounded_both_ways() {
        let mut tape = Tape::new("_".into());
        tape.shift(Direction::Left);
        tape.shift(Direction::Left);
        tape.write("x".into());
        assert_eq!(tape.head(), -2);
        assert_eq!(tape.cell(-2).as_str(), "x");
        assert_eq!(tape.cell(1000).as_str(), "_");
    }
}
