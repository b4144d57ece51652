//! Three states: the original state travels as a unary counter in the
//! symbol `[q,d,e]`, ping-ponged into the neighbouring cell one unit at a
//! time. `q` is the original state's rank (start state 1, 0: none), `d` is
//! `X` while the cell is being assembled or expanded, else the direction of
//! transfer.

use std::collections::BTreeMap;

use crate::tm::{Action, Dir, Machine, MachineBuilder, Next};

use super::{rank, unrank, Bound, Certificate, Layout, Pass, ReducedMachine, TransformError, CERT_VERSION};

#[derive(Clone, Copy, PartialEq, Eq)]
enum D {
    X,
    L,
    R,
}

impl D {
    fn of(dir: Dir) -> D {
        match dir {
            Dir::L => D::L,
            Dir::R => D::R,
        }
    }
    fn tag(self) -> &'static str {
        match self {
            D::X => "X",
            D::L => "L",
            D::R => "R",
        }
    }
}

pub fn reduce_states_3(m: &Machine) -> Result<ReducedMachine, TransformError> {
    let n = m.n_states();
    let sym = |q: usize, d: D, e: usize| format!("[{q},{},{}]", d.tag(), m.symbol_name(e));

    let mut b = MachineBuilder::new();
    let qx = b.state("qX")?;
    let ql = b.state("qL")?;
    let qr = b.state("qR")?;
    let mut field = BTreeMap::new();
    for d in [D::X, D::L, D::R] {
        for q in 0..=n {
            for e in 0..m.n_symbols() {
                let s = sym(q, d, e);
                b.symbol(&s)?;
                field.insert(s, m.symbol_name(e).to_string());
            }
        }
    }
    let id = |b: &MachineBuilder, q, d, e| b.symbol_id(&sym(q, d, e)).expect("declared");
    let go = |d: D| match d {
        D::L => (ql, Dir::L),
        _ => (qr, Dir::R),
    };

    for e in 0..m.n_symbols() {
        for d in [D::L, D::R] {
            let (state, dir) = go(d);
            // (1) send one unit towards d.
            for q in 1..=n {
                let w = id(&b, q - 1, d, e);
                b.add(qx, id(&b, q, d, e), Action { next: Next::State(state), write: w, dir })?;
            }
            // (4) all sent: release the cell and step over.
            let w = id(&b, 0, D::X, e);
            b.add(qx, id(&b, 0, d, e), Action { next: Next::State(qx), write: w, dir })?;
        }
        // (2), (3) receive one unit and return.
        for q in 0..n {
            let (from, to) = (id(&b, q, D::X, e), id(&b, q + 1, D::X, e));
            b.add(ql, from, Action { next: Next::State(qx), write: to, dir: Dir::R })?;
            b.add(qr, from, Action { next: Next::State(qx), write: to, dir: Dir::L })?;
        }
        // (5) expand, sending the first unit at once.
        for q in 1..=n {
            let Some(a) = m.action(unrank(m, q), e) else { continue };
            let act = match a.next {
                Next::Halt => Action { next: Next::Halt, write: id(&b, 0, D::X, a.write), dir: a.dir },
                Next::State(t) => {
                    let (state, dir) = go(D::of(a.dir));
                    let w = id(&b, rank(m, t) - 1, D::of(a.dir), a.write);
                    Action { next: Next::State(state), write: w, dir }
                }
            };
            b.add(qx, id(&b, q, D::X, e), act)?;
        }
    }
    // Start: qL on the start cell makes it [1,X,blank] and steps right; the
    // empty cell there bounces the head back. qX never meets an empty cell
    // otherwise.
    let blank = id(&b, 0, D::X, m.blank());
    b.add(qx, blank, Action { next: Next::State(qx), write: blank, dir: Dir::L })?;
    b.set_blank(blank).set_start(ql);
    let machine = b.build()?;
    let certificate = Certificate {
        version: CERT_VERSION,
        pass: Pass::States3,
        original_blank: m.symbol_name(m.blank()).to_string(),
        layout: Layout::TupleField { field, mirrored: false },
    };
    let bound = Bound { states: 3, symbols: 3 * (n as u64 + 1) * m.n_symbols() as u64 };
    Ok(ReducedMachine { machine, certificate, bound })
}
