use std::io::{self, Write};

use super::machine::{Action, Dir, Machine, Next};
use super::tape::Configuration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Moved,
    Halted,
    Undefined { state: usize, symbol: usize },
}

/// Executes one transition in place.
///
/// An undefined entry leaves the configuration untouched.
pub fn step(machine: &Machine, config: &mut Configuration) -> StepOutcome {
    let read = config.tape.get(config.head);
    let Some(action) = machine.action(config.state, read) else {
        return StepOutcome::Undefined {
            state: config.state,
            symbol: read,
        };
    };
    apply(config, action)
}

#[inline]
fn apply(config: &mut Configuration, action: Action) -> StepOutcome {
    config.tape.set(config.head, action.write);
    config.head += action.dir.delta();
    config.steps += 1;
    match action.next {
        Next::State(q) => {
            config.state = q;
            StepOutcome::Moved
        }
        Next::Halt => StepOutcome::Halted,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Halted,
    BudgetExhausted,
    UndefinedTransition { state: usize, symbol: usize },
    /// An observer asked to stop.
    Interrupted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub outcome: Outcome,
    pub steps: u128,
    pub config: Configuration,
}

impl RunResult {
    pub fn halted(&self) -> bool {
        self.outcome == Outcome::Halted
    }
}

/// Runs from the empty tape (head 0, start state) for at most `limit` steps.
pub fn run(machine: &Machine, limit: u128) -> RunResult {
    run_from(
        machine,
        Configuration::initial(machine.blank(), machine.start()),
        limit,
    )
}

const UNDEF: u64 = u64::MAX;
const HALT_STATE: u64 = 0xFFFF_FFFF;

/// Packed transition: bits 0..32 next state (or `HALT_STATE`), 32..48 write,
/// bit 48 set for a right move.
fn pack(machine: &Machine) -> Vec<u64> {
    let n = machine.n_states();
    let m = machine.n_symbols();
    let mut packed = vec![UNDEF; n * m];
    for (q, e, a) in machine.transitions() {
        let next = match a.next {
            Next::State(s) => s as u64,
            Next::Halt => HALT_STATE,
        };
        let right = u64::from(a.dir == Dir::R);
        packed[q * m + e] = next | (a.write as u64) << 32 | right << 48;
    }
    packed
}

/// Runs an explicit configuration for at most `limit` further steps.
///
/// This is the hot loop used for long simulations; it performs no per-step
/// callbacks.
pub fn run_from(machine: &Machine, mut config: Configuration, limit: u128) -> RunResult {
    let packed = pack(machine);
    let m = machine.n_symbols();
    let mut state = config.state;
    let mut head = config.head;
    let mut done: u128 = 0;
    let outcome = loop {
        if done == limit {
            break Outcome::BudgetExhausted;
        }
        // Run in chunks so the inner loop keeps a u64 counter.
        let chunk = (limit - done).min(1 << 32) as u64;
        let mut k: u64 = 0;
        let tape = &mut config.tape;
        let mut stop = None;
        while k < chunk {
            let mut idx = head - tape.origin;
            if idx < 0 || idx >= tape.cells.len() as i64 {
                idx = tape.ensure(head) as i64;
            }
            let idx = idx as usize;
            let read = tape.cells[idx] as usize;
            let entry = packed[state * m + read];
            if entry == UNDEF {
                stop = Some(Outcome::UndefinedTransition { state, symbol: read });
                break;
            }
            tape.cells[idx] = (entry >> 32) as u16;
            head += if entry >> 48 & 1 == 1 { 1 } else { -1 };
            k += 1;
            let next = entry & 0xFFFF_FFFF;
            if next == HALT_STATE {
                stop = Some(Outcome::Halted);
                break;
            }
            state = next as usize;
        }
        done += k as u128;
        if let Some(o) = stop {
            break o;
        }
    };
    config.state = state;
    config.head = head;
    config.steps += done;
    RunResult {
        outcome,
        steps: config.steps,
        config,
    }
}

/// One executed transition as seen by an [`Observer`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepEvent {
    /// Step count after this transition.
    pub step: u128,
    pub state: usize,
    pub pos: i64,
    pub read: usize,
    pub action: Action,
}

/// Per-step callback. Returning `false` interrupts the run.
pub trait Observer {
    fn on_step(&mut self, event: &StepEvent, config: &Configuration) -> bool;
}

impl<F: FnMut(&StepEvent, &Configuration) -> bool> Observer for F {
    fn on_step(&mut self, event: &StepEvent, config: &Configuration) -> bool {
        self(event, config)
    }
}

/// Like [`run_from`], calling `observer` after every transition.
pub fn run_observed(
    machine: &Machine,
    mut config: Configuration,
    limit: u128,
    observer: &mut impl Observer,
) -> RunResult {
    let mut done: u128 = 0;
    let outcome = loop {
        if done == limit {
            break Outcome::BudgetExhausted;
        }
        let state = config.state;
        let pos = config.head;
        let read = config.tape.get(pos);
        let Some(action) = machine.action(state, read) else {
            break Outcome::UndefinedTransition { state, symbol: read };
        };
        let res = apply(&mut config, action);
        done += 1;
        let ev = StepEvent {
            step: config.steps,
            state,
            pos,
            read,
            action,
        };
        let keep_going = observer.on_step(&ev, &config);
        if res == StepOutcome::Halted {
            break Outcome::Halted;
        }
        if !keep_going {
            break Outcome::Interrupted;
        }
    };
    RunResult {
        outcome,
        steps: config.steps,
        config,
    }
}

/// Writes one TSV line per step: `step state pos read write dir`.
pub struct TraceWriter<'m, W: Write> {
    machine: &'m Machine,
    out: W,
    pub error: Option<io::Error>,
}

impl<'m, W: Write> TraceWriter<'m, W> {
    pub fn new(machine: &'m Machine, out: W) -> Self {
        TraceWriter {
            machine,
            out,
            error: None,
        }
    }
}

impl<W: Write> Observer for TraceWriter<'_, W> {
    fn on_step(&mut self, ev: &StepEvent, _: &Configuration) -> bool {
        let r = writeln!(
            self.out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            ev.step,
            self.machine.state_name(ev.state),
            ev.pos,
            self.machine.symbol_name(ev.read),
            self.machine.symbol_name(ev.action.write),
            ev.action.dir
        );
        if let Err(e) = r {
            self.error = Some(e);
            return false;
        }
        true
    }
}

/// Every `every` steps writes `step state pos support_lo support_hi`, plus the
/// raw tape window over the support when `with_window` is set.
pub struct SnapshotWriter<'m, W: Write> {
    machine: &'m Machine,
    out: W,
    every: u128,
    with_window: bool,
    pub error: Option<io::Error>,
}

impl<'m, W: Write> SnapshotWriter<'m, W> {
    pub fn new(machine: &'m Machine, out: W, every: u128, with_window: bool) -> Self {
        assert!(every > 0, "snapshot interval must be positive");
        SnapshotWriter {
            machine,
            out,
            every,
            with_window,
            error: None,
        }
    }
}

impl<W: Write> Observer for SnapshotWriter<'_, W> {
    fn on_step(&mut self, ev: &StepEvent, config: &Configuration) -> bool {
        if !ev.step.is_multiple_of(self.every) {
            return true;
        }
        let state = match ev.action.next {
            Next::State(q) => self.machine.state_name(q),
            Next::Halt => "HALT",
        };
        let (lo, hi) = match config.tape.support() {
            Some((lo, hi)) => (lo.to_string(), hi.to_string()),
            None => ("-".to_string(), "-".to_string()),
        };
        let mut line = format!("{}\t{}\t{}\t{}\t{}", ev.step, state, config.head, lo, hi);
        if self.with_window {
            if let Some((lo, hi)) = config.tape.support() {
                line.push('\t');
                let cells: Vec<&str> = config
                    .tape
                    .window(lo, hi)
                    .into_iter()
                    .map(|e| self.machine.symbol_name(e))
                    .collect();
                line.push_str(&cells.join(" "));
            }
        }
        if let Err(e) = writeln!(self.out, "{line}") {
            self.error = Some(e);
            return false;
        }
        true
    }
}
