//! Two states `L`, `R` ("in the left/right one of the two active cells").
//! Symbols `[c,t,e]`: counter `c` (original state rank, start state 1),
//! tag `t` in `- Lnew Lold Rnew Rold`, original symbol `e`.
//!
//! The expansion sends the new state towards the side opposite to the
//! original move, so the simulation runs mirrored about the start cell; the
//! certificate records this.

use std::collections::BTreeMap;

use crate::tm::{Action, Dir, Machine, MachineBuilder, Next};

use super::{rank, unrank, Bound, Certificate, Layout, Pass, ReducedMachine, TransformError, CERT_VERSION};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tag {
    Free,
    New(Dir),
    Old(Dir),
}

impl Tag {
    fn text(self) -> String {
        match self {
            Tag::Free => "-".into(),
            Tag::New(d) => format!("{d}new"),
            Tag::Old(d) => format!("{d}old"),
        }
    }
    fn all() -> [Tag; 5] {
        [Tag::Free, Tag::New(Dir::L), Tag::Old(Dir::L), Tag::New(Dir::R), Tag::Old(Dir::R)]
    }
}

pub fn reduce_states_2_seeded(m: &Machine) -> Result<ReducedMachine, TransformError> {
    build(m, false)
}

pub fn reduce_states_2_empty(m: &Machine) -> Result<ReducedMachine, TransformError> {
    build(m, true)
}

fn build(m: &Machine, empty: bool) -> Result<ReducedMachine, TransformError> {
    let n = m.n_states();
    let top = if empty { n + 1 } else { n };
    let sym = |c: usize, t: Tag, e: usize| format!("[{c},{},{}]", t.text(), m.symbol_name(e));

    let mut b = MachineBuilder::new();
    let sl = b.state("L")?;
    let sr = b.state("R")?;
    let st = |d: Dir| if d == Dir::L { sl } else { sr };
    let mut field = BTreeMap::new();
    // Blank first so that it gets index 0.
    for c in 0..=top {
        for t in Tag::all() {
            for e in std::iter::once(m.blank()).chain((0..m.n_symbols()).filter(|&e| e != m.blank())) {
                let s = sym(c, t, e);
                b.symbol(&s)?;
                field.insert(s, m.symbol_name(e).to_string());
            }
        }
    }
    let id = |b: &MachineBuilder, c, t, e| b.symbol_id(&sym(c, t, e)).expect("declared");

    // Expansion of original (state rank c, symbol e) read in state x.
    let expand = |b: &MachineBuilder, c: usize, e: usize| -> Option<Action> {
        let a = m.action(unrank(m, c), e)?;
        Some(match a.next {
            Next::Halt => Action { next: Next::Halt, write: id(b, 0, Tag::Free, a.write), dir: a.dir.flip() },
            Next::State(q) => {
                let x2 = a.dir.flip();
                Action { next: Next::State(st(x2)), write: id(b, rank(m, q) - 1, Tag::Old(x2), a.write), dir: x2 }
            }
        })
    };

    for x in [Dir::L, Dir::R] {
        let xb = x.flip();
        let (qx, qxb) = (st(x), st(xb));
        for e in 0..m.n_symbols() {
            // (1) activate a free cell.
            let w = id(&b, 1, Tag::New(x), e);
            b.add(qx, id(&b, 0, Tag::Free, e), Action { next: Next::State(qxb), write: w, dir: xb })?;
            // (2) receive one more unit.
            for c in 1..top {
                let w = id(&b, c + 1, Tag::New(x), e);
                b.add(qx, id(&b, c, Tag::New(x), e), Action { next: Next::State(qxb), write: w, dir: xb })?;
            }
            // (3) send one unit.
            for c in 1..=n {
                let w = id(&b, c - 1, Tag::Old(xb), e);
                b.add(qx, id(&b, c, Tag::Old(xb), e), Action { next: Next::State(qxb), write: w, dir: xb })?;
            }
            // (4) all sent: free the cell, stay in x, step to the receiver.
            let w = id(&b, 0, Tag::Free, e);
            b.add(qx, id(&b, 0, Tag::Old(xb), e), Action { next: Next::State(qx), write: w, dir: xb })?;
            // (5) expand.
            for c in 1..=n {
                if let Some(act) = expand(&b, c, e) {
                    b.add(qx, id(&b, c, Tag::New(xb), e), act)?;
                }
            }
        }
    }

    let blank = m.blank();
    let (start, seed, overflow) = if empty {
        let first = m.action(m.start(), blank).ok_or(TransformError::NoFirstMove)?;
        let x = first.dir;
        let xb = x.flip();
        // Counter overflow in the start cell means "start"; in its
        // neighbour it means "free".
        if let Some(act) = expand(&b, 1, blank) {
            b.add(st(x), id(&b, top, Tag::New(x), blank), act)?;
        }
        let w = id(&b, 1, Tag::New(xb), blank);
        b.add(st(xb), id(&b, top, Tag::New(xb), blank), Action { next: Next::State(st(x)), write: w, dir: x })?;
        (st(x), None, Some(top))
    } else {
        (sl, Some(sym(1, Tag::New(Dir::R), blank)), None)
    };
    b.set_blank(id(&b, 0, Tag::Free, blank)).set_start(start);
    let machine = b.build()?;
    let certificate = Certificate {
        version: CERT_VERSION,
        pass: if empty { Pass::States2Empty } else { Pass::States2Seeded },
        original_blank: m.symbol_name(blank).to_string(),
        layout: Layout::SeededTwoState { field, mirrored: true, seed, overflow },
    };
    let bound = Bound { states: 2, symbols: 5 * m.n_symbols() as u64 * (top as u64 + 1) };
    Ok(ReducedMachine { machine, certificate, bound })
}
