use rayon::prelude::*;
use serde::Serialize;

use crate::tm::{Action, Dir, Machine, MachineBuilder, Next};

/// Refuse classes with more total tables than this unless told otherwise.
pub const DEFAULT_MACHINE_LIMIT: u128 = 1_000_000_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BbError {
    #[error("class ({n},{m}) has {count} machines, above the limit {limit}")]
    TooLarge { n: usize, m: usize, count: String, limit: u128 },
    #[error("need at least one state and one symbol")]
    Empty,
}

#[derive(Debug, Clone, Serialize)]
pub struct BbResult {
    pub n: usize,
    pub m: usize,
    pub cutoff: u64,
    pub champion_steps: u64,
    #[serde(skip)]
    pub champion: Machine,
    /// Counts over all `((n+1)·2m)^(nm)` total tables.
    pub total: u128,
    pub halting: u128,
    pub cutoff_exceeded: u128,
    /// Always 0 for total tables; kept for symmetry with the simulator.
    pub undefined: u128,
}

type Entry = Option<(u8, u8, bool)>; // (next, write, right); next == n means HALT

#[derive(Clone)]
struct Partial {
    table: Vec<Entry>,
    tape: Vec<u8>,
    head: usize,
    state: u8,
    steps: u64,
}

#[derive(Default)]
struct Tally {
    best: Option<(u64, Vec<Entry>)>,
    halting: u128,
    exceeded: u128,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.halting += o.halting;
        self.exceeded += o.exceeded;
        self.best = match (self.best, o.best) {
            (Some(a), Some(b)) => Some(better(a, b)),
            (a, b) => a.or(b),
        };
        self
    }
}

// More steps wins; ties go to the smaller table so the result does not depend
// on how the work was split.
fn better(a: (u64, Vec<Entry>), b: (u64, Vec<Entry>)) -> (u64, Vec<Entry>) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a }
}

/// Exhaustive search over all total `n`-state, `m`-symbol tables, run from
/// the empty tape for at most `cutoff` steps (the halting step counts).
///
/// Tables are explored lazily: an entry is only chosen when the run first
/// reads it, and each finished run stands for all completions of its unread
/// entries. Counts are therefore exact over the full space.
pub fn bb_enumerate(n: usize, m: usize, cutoff: u64, limit: u128) -> Result<BbResult, BbError> {
    if n == 0 || m == 0 {
        return Err(BbError::Empty);
    }
    let choices = ((n + 1) * 2 * m) as u128;
    let total = u32::try_from(n * m).ok().and_then(|e| choices.checked_pow(e));
    let total = match total {
        Some(t) if t <= limit => t,
        _ => {
            return Err(BbError::TooLarge {
                n,
                m,
                count: format!("{}^{}", choices, n * m),
                limit,
            })
        }
    };
    let width = 2 * cutoff as usize + 3;
    let root = Partial {
        table: vec![None; n * m],
        tape: vec![0; width],
        head: width / 2,
        state: 0,
        steps: 0,
    };
    let opts = options(n, m);
    let tally = opts
        .par_iter()
        .map(|&o| {
            let mut p = root.clone();
            p.table[0] = Some(o);
            let mut t = Tally::default();
            explore(p, n, m, cutoff, &opts, choices, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge);
    let (champion_steps, table) = tally.best.unwrap_or((0, vec![None; n * m]));
    Ok(BbResult {
        n,
        m,
        cutoff,
        champion_steps,
        champion: to_machine(n, m, &table),
        total,
        halting: tally.halting,
        cutoff_exceeded: tally.exceeded,
        undefined: total - tally.halting - tally.exceeded,
    })
}

fn options(n: usize, m: usize) -> Vec<(u8, u8, bool)> {
    let mut v = Vec::new();
    for next in 0..=n as u8 {
        for w in 0..m as u8 {
            for right in [false, true] {
                v.push((next, w, right));
            }
        }
    }
    v
}

fn explore(
    mut p: Partial,
    n: usize,
    m: usize,
    cutoff: u64,
    opts: &[(u8, u8, bool)],
    choices: u128,
    t: &mut Tally,
) {
    loop {
        if p.steps == cutoff {
            let free = p.table.iter().filter(|e| e.is_none()).count() as u32;
            t.exceeded += choices.pow(free);
            return;
        }
        let ix = p.state as usize * m + p.tape[p.head] as usize;
        let Some((next, w, right)) = p.table[ix] else {
            for &o in opts {
                let mut c = p.clone();
                c.table[ix] = Some(o);
                explore(c, n, m, cutoff, opts, choices, t);
            }
            return;
        };
        p.tape[p.head] = w;
        p.steps += 1;
        if next as usize == n {
            let free = p.table.iter().filter(|e| e.is_none()).count() as u32;
            t.halting += choices.pow(free);
            let cand = (p.steps, p.table);
            t.best = Some(match t.best.take() {
                Some(b) => better(b, cand),
                None => cand,
            });
            return;
        }
        p.state = next;
        if right { p.head += 1 } else { p.head -= 1 }
    }
}

/// Unread entries are filled with `HALT, 0, R`; they are never reached.
fn to_machine(n: usize, m: usize, table: &[Entry]) -> Machine {
    let mut b = MachineBuilder::new();
    for q in 0..n {
        b.state(&((b'A' + q as u8) as char).to_string()).expect("distinct");
    }
    for e in 0..m {
        b.symbol(&e.to_string()).expect("distinct");
    }
    for (ix, e) in table.iter().enumerate() {
        let (next, w, right) = e.unwrap_or((n as u8, 0, true));
        let next = if next as usize == n { Next::Halt } else { Next::State(next as usize) };
        let dir = if right { Dir::R } else { Dir::L };
        b.add(ix / m, ix % m, Action { next, write: w as usize, dir }).expect("fresh entry");
    }
    b.set_blank(0).set_start(0);
    b.build().expect("total table")
}
