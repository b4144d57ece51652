//! Line-based machine interchange format.
//!
//! ```text
//! # comment
//! blank: 0
//! start: q1
//! symbols: 0 1 2 3
//! states: q1 q2 q3 q4
//! q1 0 -> q2 1 R
//! q4 0 -> HALT 0 R
//! ```
//!
//! `symbols:` and `states:` fix the index order and must precede any
//! transition that refers to them. Tokens are whitespace-free and may not
//! contain `#`.

use std::fmt::Write as _;

use super::machine::{Action, Dir, Machine, MachineBuilder, Next};
use super::TmError;

pub const FORMAT_VERSION: u32 = 1;

pub fn parse_machine(text: &str) -> Result<Machine, TmError> {
    let mut b = MachineBuilder::new();
    let mut blank: Option<(usize, String)> = None;
    let mut start: Option<(usize, String)> = None;
    let mut saw_symbols = false;
    let mut saw_states = false;

    for (ix, raw) in text.lines().enumerate() {
        let line_no = ix + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = |msg: &str| TmError::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        if let Some((key, rest)) = line.split_once(':') {
            let key = key.trim();
            let values: Vec<&str> = rest.split_whitespace().collect();
            match key {
                "blank" | "start" => {
                    let [v] = values.as_slice() else {
                        return Err(malformed("expected exactly one identifier"));
                    };
                    let slot = if key == "blank" { &mut blank } else { &mut start };
                    if slot.is_some() {
                        return Err(malformed(&format!("repeated {key} header")));
                    }
                    *slot = Some((line_no, v.to_string()));
                }
                "symbols" => {
                    saw_symbols = true;
                    for v in values {
                        if b.symbol_id(v).is_some() {
                            return Err(malformed(&format!("symbol {v} declared twice")));
                        }
                        b.symbol(v).map_err(|e| malformed(&e.to_string()))?;
                    }
                }
                "states" => {
                    saw_states = true;
                    for v in values {
                        if b.state_id(v).is_some() {
                            return Err(malformed(&format!("state {v} declared twice")));
                        }
                        b.state(v).map_err(|e| malformed(&e.to_string()))?;
                    }
                }
                other => return Err(malformed(&format!("unknown header {other:?}"))),
            }
            continue;
        }

        let tok: Vec<&str> = line.split_whitespace().collect();
        let [q, e, arrow, next, write, dir] = tok.as_slice() else {
            return Err(malformed("expected `<state> <sym> -> <state|HALT> <sym> <L|R>`"));
        };
        if *arrow != "->" {
            return Err(malformed("missing `->`"));
        }
        let unknown_state = |s: &str| TmError::Unknown {
            line: line_no,
            kind: "state",
            name: s.to_string(),
        };
        let unknown_symbol = |s: &str| TmError::Unknown {
            line: line_no,
            kind: "symbol",
            name: s.to_string(),
        };
        let q = b.state_id(q).ok_or_else(|| unknown_state(q))?;
        let e = b.symbol_id(e).ok_or_else(|| unknown_symbol(e))?;
        let next = if *next == "HALT" {
            Next::Halt
        } else {
            Next::State(b.state_id(next).ok_or_else(|| unknown_state(next))?)
        };
        let write = b.symbol_id(write).ok_or_else(|| unknown_symbol(write))?;
        let dir = match *dir {
            "L" => Dir::L,
            "R" => Dir::R,
            _ => return Err(malformed("direction must be L or R")),
        };
        if b.is_defined(q, e) {
            return Err(TmError::Parse {
                line: line_no,
                msg: "duplicate transition".into(),
            });
        }
        b.add(q, e, Action { next, write, dir })?;
    }

    if !saw_symbols {
        return Err(TmError::MissingHeader("symbols"));
    }
    if !saw_states {
        return Err(TmError::MissingHeader("states"));
    }
    let (bl, blank) = blank.ok_or(TmError::MissingHeader("blank"))?;
    let (sl, start) = start.ok_or(TmError::MissingHeader("start"))?;
    let blank_id = b.symbol_id(&blank).ok_or(TmError::Unknown {
        line: bl,
        kind: "symbol",
        name: blank,
    })?;
    let start_id = b.state_id(&start).ok_or(TmError::Unknown {
        line: sl,
        kind: "state",
        name: start,
    })?;
    b.set_blank(blank_id).set_start(start_id);
    b.build()
}

pub fn serialize_machine(m: &Machine) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# fls machine v{FORMAT_VERSION}: {} states, {} symbols", m.n_states(), m.n_symbols());
    let _ = writeln!(out, "blank: {}", m.symbol_name(m.blank()));
    let _ = writeln!(out, "start: {}", m.state_name(m.start()));
    let _ = writeln!(out, "symbols: {}", m.symbols().join(" "));
    let _ = writeln!(out, "states: {}", m.states().join(" "));
    for (q, e, a) in m.transitions() {
        let next = match a.next {
            Next::State(s) => m.state_name(s),
            Next::Halt => "HALT",
        };
        let _ = writeln!(
            out,
            "{} {} -> {} {} {}",
            m.state_name(q),
            m.symbol_name(e),
            next,
            m.symbol_name(a.write),
            a.dir
        );
    }
    out
}
