//! Row notation for the generated machines and its expansion into a
//! transition table.
//!
//! A row lists cases left to right. `Star` covers every symbol not yet
//! mentioned in the row; `StarExcept` does the same but leaves the listed
//! symbols undefined. Symbols never mentioned and not covered by a star stay
//! undefined.

use std::collections::HashSet;

use crate::tm::{Action, Dir, Machine, MachineBuilder, Next, TmError};

#[derive(Debug, Clone)]
pub(crate) enum Sel {
    Syms(Vec<String>),
    Star,
    StarExcept(Vec<String>),
}

#[derive(Debug, Clone)]
pub(crate) enum Put {
    Same,
    Sym(String),
}

#[derive(Debug, Clone)]
pub(crate) struct Case {
    pub sel: Sel,
    pub put: Put,
    pub dir: Dir,
    pub next: String,
}

#[derive(Debug, Clone)]
pub(crate) struct Row {
    pub state: String,
    pub cases: Vec<Case>,
}

impl Row {
    pub fn new(state: impl Into<String>) -> Self {
        Row {
            state: state.into(),
            cases: Vec::new(),
        }
    }

    /// Explicit symbols.
    pub fn on<S: AsRef<str>>(mut self, syms: &[S], put: Put, dir: Dir, next: &str) -> Self {
        self.cases.push(Case {
            sel: Sel::Syms(syms.iter().map(|s| s.as_ref().to_string()).collect()),
            put,
            dir,
            next: next.to_string(),
        });
        self
    }

    pub fn star(mut self, put: Put, dir: Dir, next: &str) -> Self {
        self.cases.push(Case {
            sel: Sel::Star,
            put,
            dir,
            next: next.to_string(),
        });
        self
    }

    pub fn star_except<S: AsRef<str>>(mut self, except: &[S], put: Put, dir: Dir, next: &str) -> Self {
        self.cases.push(Case {
            sel: Sel::StarExcept(except.iter().map(|s| s.as_ref().to_string()).collect()),
            put,
            dir,
            next: next.to_string(),
        });
        self
    }
}

pub(crate) fn same() -> Put {
    Put::Same
}

pub(crate) fn put(s: impl Into<String>) -> Put {
    Put::Sym(s.into())
}

/// Expands rows into a machine. States are indexed in row order, symbols in
/// the given order.
pub(crate) fn expand(
    symbols: &[String],
    rows: &[Row],
    blank: &str,
    start: &str,
) -> Result<Machine, TmError> {
    let mut b = MachineBuilder::new();
    for r in rows {
        b.state(&r.state)?;
    }
    for s in symbols {
        b.symbol(s)?;
    }
    let sym = |b: &MachineBuilder, s: &str| {
        b.symbol_id(s)
            .ok_or_else(|| TmError::Invalid(format!("row mentions unknown symbol {s}")))
    };
    for r in rows {
        let q = b.state_id(&r.state).expect("declared above");
        let mut mentioned: HashSet<usize> = HashSet::new();
        for case in &r.cases {
            let next = if case.next == "HALT" {
                Next::Halt
            } else {
                Next::State(b.state_id(&case.next).ok_or_else(|| {
                    TmError::Invalid(format!("{} refers to unknown state {}", r.state, case.next))
                })?)
            };
            let targets: Vec<usize> = match &case.sel {
                Sel::Syms(list) => list
                    .iter()
                    .map(|s| sym(&b, s))
                    .collect::<Result<_, _>>()?,
                Sel::Star | Sel::StarExcept(_) => {
                    let except: HashSet<usize> = match &case.sel {
                        Sel::StarExcept(list) => list
                            .iter()
                            .map(|s| sym(&b, s))
                            .collect::<Result<_, _>>()?,
                        _ => HashSet::new(),
                    };
                    (0..symbols.len())
                        .filter(|e| !mentioned.contains(e) && !except.contains(e))
                        .collect()
                }
            };
            for e in targets {
                if !mentioned.insert(e) {
                    return Err(TmError::Duplicate {
                        state: r.state.clone(),
                        symbol: symbols[e].clone(),
                    });
                }
                let write = match &case.put {
                    Put::Same => e,
                    Put::Sym(s) => sym(&b, s)?,
                };
                b.add(q, e, Action { next, write, dir: case.dir })?;
            }
            if let Sel::StarExcept(list) = &case.sel {
                for s in list {
                    mentioned.insert(sym(&b, s)?);
                }
            }
        }
    }
    let blank = sym(&b, blank)?;
    let start = b
        .state_id(start)
        .ok_or_else(|| TmError::Invalid(format!("unknown start state {start}")))?;
    b.set_blank(blank).set_start(start);
    b.build()
}
