//! Machine model, tape, single-step semantics and bounded simulation.

mod format;
mod machine;
mod run;
mod tape;

pub use format::{parse_machine, serialize_machine, FORMAT_VERSION};
pub use machine::{Action, Dir, Machine, MachineBuilder, Next};
pub use run::{
    run, run_from, run_observed, step, Observer, Outcome, RunResult, SnapshotWriter, StepEvent,
    StepOutcome, TraceWriter,
};
pub use tape::{Configuration, Tape};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TmError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: unknown {kind} {name:?}")]
    Unknown {
        line: usize,
        kind: &'static str,
        name: String,
    },
    #[error("missing `{0}:` header")]
    MissingHeader(&'static str),
    #[error("duplicate transition for ({state}, {symbol})")]
    Duplicate { state: String, symbol: String },
    #[error("{0}")]
    Invalid(String),
}

/// Builds a machine from `(state, symbol, next, write, dir)` rows; `next`
/// may be `"HALT"`. States and symbols are indexed in the order given.
pub fn machine_from_rows(
    states: &[&str],
    symbols: &[&str],
    blank: &str,
    start: &str,
    rows: &[(&str, &str, &str, &str, Dir)],
) -> Result<Machine, TmError> {
    let mut b = MachineBuilder::new();
    for s in states {
        b.state(s)?;
    }
    for e in symbols {
        b.symbol(e)?;
    }
    let lookup_state = |b: &MachineBuilder, s: &str| {
        b.state_id(s)
            .ok_or_else(|| TmError::Invalid(format!("unknown state {s}")))
    };
    let lookup_symbol = |b: &MachineBuilder, s: &str| {
        b.symbol_id(s)
            .ok_or_else(|| TmError::Invalid(format!("unknown symbol {s}")))
    };
    for &(q, e, next, write, dir) in rows {
        let q = lookup_state(&b, q)?;
        let e = lookup_symbol(&b, e)?;
        let next = if next == "HALT" {
            Next::Halt
        } else {
            Next::State(lookup_state(&b, next)?)
        };
        let write = lookup_symbol(&b, write)?;
        b.add(q, e, Action { next, write, dir })?;
    }
    let blank = lookup_symbol(&b, blank)?;
    let start = lookup_state(&b, start)?;
    b.set_blank(blank).set_start(start);
    b.build()
}

/// The four-transition example machine used throughout the tests: started
/// in `q1` on position 1 it writes `1`, `2`, `3` and halts after 4 steps
/// with tape `{1: 3, 2: 2}`.
pub fn example_machine() -> Machine {
    machine_from_rows(
        &["q1", "q2", "q3", "q4"],
        &["0", "1", "2", "3"],
        "0",
        "q1",
        &[
            ("q1", "0", "q2", "1", Dir::R),
            ("q2", "0", "q3", "2", Dir::L),
            ("q3", "1", "q4", "3", Dir::L),
            ("q4", "0", "HALT", "0", Dir::R),
        ],
    )
    .expect("example machine is well-formed")
}
