use std::collections::HashMap;
use std::fmt;

use super::TmError;

/// Head movement. Every action moves, including the halting one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L,
    R,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        }
    }

    pub fn delta(self) -> i64 {
        match self {
            Dir::L => -1,
            Dir::R => 1,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::L => "L",
            Dir::R => "R",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Next {
    State(usize),
    Halt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Action {
    pub next: Next,
    pub write: usize,
    pub dir: Dir,
}

/// A deterministic single-tape machine over named states and symbols.
///
/// The transition table is dense (`states × symbols`); `None` entries are
/// undefined transitions, which the simulator reports instead of halting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Machine {
    states: Vec<String>,
    symbols: Vec<String>,
    blank: usize,
    start: usize,
    table: Vec<Option<Action>>,
}

impl Machine {
    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn n_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn blank(&self) -> usize {
        self.blank
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn symbol_name(&self, e: usize) -> &str {
        &self.symbols[e]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn action(&self, q: usize, e: usize) -> Option<Action> {
        self.table[q * self.symbols.len() + e]
    }

    /// Defined transitions in row-major order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, Action)> + '_ {
        let m = self.symbols.len();
        self.table
            .iter()
            .enumerate()
            .filter_map(move |(idx, a)| a.map(|a| (idx / m, idx % m, a)))
    }

    pub fn defined_count(&self) -> usize {
        self.table.iter().filter(|a| a.is_some()).count()
    }

    /// Same machine with a different start state.
    pub fn with_start(&self, start: usize) -> Machine {
        assert!(start < self.states.len());
        Machine {
            start,
            ..self.clone()
        }
    }
}

/// Incremental construction with name resolution and duplicate detection.
#[derive(Debug, Clone, Default)]
pub struct MachineBuilder {
    states: Vec<String>,
    state_ix: HashMap<String, usize>,
    symbols: Vec<String>,
    symbol_ix: HashMap<String, usize>,
    blank: Option<usize>,
    start: Option<usize>,
    entries: HashMap<(usize, usize), Action>,
}

impl MachineBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&mut self, name: &str) -> Result<usize, TmError> {
        check_token(name)?;
        if name == "HALT" {
            return Err(TmError::Invalid("HALT is reserved".into()));
        }
        if let Some(&q) = self.state_ix.get(name) {
            return Ok(q);
        }
        let q = self.states.len();
        self.states.push(name.to_string());
        self.state_ix.insert(name.to_string(), q);
        Ok(q)
    }

    pub fn symbol(&mut self, name: &str) -> Result<usize, TmError> {
        check_token(name)?;
        if let Some(&e) = self.symbol_ix.get(name) {
            return Ok(e);
        }
        let e = self.symbols.len();
        self.symbols.push(name.to_string());
        self.symbol_ix.insert(name.to_string(), e);
        Ok(e)
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.state_ix.get(name).copied()
    }

    pub fn symbol_id(&self, name: &str) -> Option<usize> {
        self.symbol_ix.get(name).copied()
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn n_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn set_blank(&mut self, e: usize) -> &mut Self {
        self.blank = Some(e);
        self
    }

    pub fn set_start(&mut self, q: usize) -> &mut Self {
        self.start = Some(q);
        self
    }

    pub fn is_defined(&self, q: usize, e: usize) -> bool {
        self.entries.contains_key(&(q, e))
    }

    pub fn add(&mut self, q: usize, e: usize, action: Action) -> Result<(), TmError> {
        if self.entries.insert((q, e), action).is_some() {
            return Err(TmError::Duplicate {
                state: self.states[q].clone(),
                symbol: self.symbols[e].clone(),
            });
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Machine, TmError> {
        let blank = self.blank.ok_or(TmError::MissingHeader("blank"))?;
        let start = self.start.ok_or(TmError::MissingHeader("start"))?;
        let n = self.states.len();
        let m = self.symbols.len();
        if n == 0 || m == 0 {
            return Err(TmError::Invalid("machine needs at least one state and one symbol".into()));
        }
        if m > u16::MAX as usize {
            return Err(TmError::Invalid(format!("{m} symbols exceed the supported 65535")));
        }
        let mut table = vec![None; n * m];
        for (&(q, e), &a) in &self.entries {
            if a.write >= m {
                return Err(TmError::Invalid("write symbol out of range".into()));
            }
            if let Next::State(s) = a.next {
                if s >= n {
                    return Err(TmError::Invalid("next state out of range".into()));
                }
            }
            table[q * m + e] = Some(a);
        }
        Ok(Machine {
            states: self.states.clone(),
            symbols: self.symbols.clone(),
            blank,
            start,
            table,
        })
    }
}

fn check_token(name: &str) -> Result<(), TmError> {
    if name.is_empty() || name.contains(char::is_whitespace) || name.contains('#') || name == "->" {
        return Err(TmError::Invalid(format!("illegal identifier {name:?}")));
    }
    Ok(())
}
