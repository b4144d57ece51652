//! `2b+1` states: the original state travels as `l` base-`b` digits, one
//! digit per round trip. Symbols are `[digits,D,e]` with `D` the transfer
//! direction of a sending cell, `-` otherwise, and `-` for no digits.
//!
//! Digits cross the cell boundary in tape order: a leftward transfer sends
//! the most significant digit first and the receiver appends it; a rightward
//! transfer sends the least significant digit first and the receiver
//! prepends it.

use std::collections::{BTreeMap, BTreeSet};

use crate::tm::{Action, Dir, Machine, MachineBuilder, Next};

use super::{
    check_base, digit_string, digits_needed, to_digits, Bound, Certificate, Layout, Pass,
    ReducedMachine, TransformError, CERT_VERSION,
};

type Tag = Option<Dir>;

fn name(ds: &[usize], tag: Tag, e: &str) -> String {
    let ds = if ds.is_empty() { "-".to_string() } else { digit_string(ds) };
    let t = match tag {
        None => "-".to_string(),
        Some(d) => d.to_string(),
    };
    format!("[{ds},{t},{e}]")
}

/// Sender remnant after the first digit of `code` has left.
fn first_send(code: &[usize], dir: Dir) -> (usize, Vec<usize>) {
    match dir {
        Dir::L => (code[0], code[1..].to_vec()),
        Dir::R => (code[code.len() - 1], code[..code.len() - 1].to_vec()),
    }
}

pub fn reduce_states_2b1(m: &Machine, b: usize) -> Result<ReducedMachine, TransformError> {
    check_base(b)?;
    let n = m.n_states();
    let l = digits_needed(n, b);
    let code = |q: usize| to_digits(q, b, l);
    let ename = |e: usize| m.symbol_name(e).to_string();

    // Codes that travel, by direction; the start code travels leftwards.
    let mut travel: BTreeSet<(Vec<usize>, bool)> = BTreeSet::new();
    travel.insert((code(m.start()), false));
    for (_, _, a) in m.transitions() {
        if let Next::State(t) = a.next {
            travel.insert((code(t), a.dir == Dir::R));
        }
    }
    // Receiver contents (partial and full) and sender remnants.
    let mut received: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut remnants: BTreeSet<(Vec<usize>, bool)> = BTreeSet::new();
    for (c, right) in &travel {
        for j in 1..=l {
            received.insert(if *right { c[l - j..].to_vec() } else { c[..j].to_vec() });
            let rest = if *right { c[..l - j].to_vec() } else { c[j..].to_vec() };
            remnants.insert((rest, *right));
        }
    }
    for q in 0..n {
        received.insert(code(q));
    }

    let mut bld = MachineBuilder::new();
    let qx = bld.state("qX")?;
    let ql: Vec<usize> = (0..b).map(|i| bld.state(&format!("qL{i}"))).collect::<Result<_, _>>()?;
    let qr: Vec<usize> = (0..b).map(|i| bld.state(&format!("qR{i}"))).collect::<Result<_, _>>()?;
    let mut field = BTreeMap::new();
    let mut declare = |bld: &mut MachineBuilder, s: String, e: usize| -> Result<usize, TransformError> {
        field.insert(s.clone(), ename(e));
        Ok(bld.symbol(&s)?)
    };
    for e in 0..m.n_symbols() {
        declare(&mut bld, name(&[], None, &ename(e)), e)?;
    }
    for e in 0..m.n_symbols() {
        for c in &received {
            declare(&mut bld, name(c, None, &ename(e)), e)?;
        }
    }
    for e in 0..m.n_symbols() {
        for (c, right) in &remnants {
            let dir = if *right { Dir::R } else { Dir::L };
            declare(&mut bld, name(c, Some(dir), &ename(e)), e)?;
        }
    }
    let id = |bld: &MachineBuilder, ds: &[usize], tag: Tag, e: usize| {
        bld.symbol_id(&name(ds, tag, &ename(e))).expect("declared")
    };
    let sender = |dir: Dir, digit: usize| match dir {
        Dir::L => ql[digit],
        Dir::R => qr[digit],
    };

    for e in 0..m.n_symbols() {
        // Receivers.
        for c in std::iter::once(Vec::new()).chain(received.iter().cloned()) {
            if c.len() == l {
                continue;
            }
            let from = id(&bld, &c, None, e);
            for i in 0..b {
                let mut app = c.clone();
                app.push(i);
                if received.contains(&app) {
                    let w = id(&bld, &app, None, e);
                    bld.add(ql[i], from, Action { next: Next::State(qx), write: w, dir: Dir::R })?;
                }
                let mut pre = vec![i];
                pre.extend(&c);
                if received.contains(&pre) {
                    let w = id(&bld, &pre, None, e);
                    bld.add(qr[i], from, Action { next: Next::State(qx), write: w, dir: Dir::L })?;
                }
            }
        }
        // Senders and clean-up.
        for (c, right) in &remnants {
            let dir = if *right { Dir::R } else { Dir::L };
            let from = id(&bld, c, Some(dir), e);
            let act = if c.is_empty() {
                Action { next: Next::State(qx), write: id(&bld, &[], None, e), dir }
            } else {
                let (digit, rest) = first_send(c, dir);
                Action { next: Next::State(sender(dir, digit)), write: id(&bld, &rest, Some(dir), e), dir }
            };
            bld.add(qx, from, act)?;
        }
        // Expansion, first digit sent at once.
        for q in 0..n {
            let Some(a) = m.action(q, e) else { continue };
            let from = id(&bld, &code(q), None, e);
            let act = match a.next {
                Next::Halt => Action { next: Next::Halt, write: id(&bld, &[], None, a.write), dir: a.dir },
                Next::State(t) => {
                    let (digit, rest) = first_send(&code(t), a.dir);
                    let w = id(&bld, &rest, Some(a.dir), a.write);
                    Action { next: Next::State(sender(a.dir, digit)), write: w, dir: a.dir }
                }
            };
            bld.add(qx, from, act)?;
        }
    }
    // Start: qL<c0> writes the first digit into the start cell and steps
    // right; the empty cell there sends the remaining digits (or, for one
    // digit, just bounces back). qX never reads an empty, unmarked cell
    // otherwise.
    let c0 = code(m.start());
    let blank = id(&bld, &[], None, m.blank());
    let boot = if l == 1 {
        Action { next: Next::State(qx), write: blank, dir: Dir::L }
    } else {
        let w = id(&bld, &c0[2..], Some(Dir::L), m.blank());
        Action { next: Next::State(ql[c0[1]]), write: w, dir: Dir::L }
    };
    bld.add(qx, blank, boot)?;
    bld.set_blank(blank).set_start(ql[c0[0]]);
    let machine = bld.build()?;

    let certificate = Certificate {
        version: CERT_VERSION,
        pass: Pass::States2b1,
        original_blank: m.symbol_name(m.blank()).to_string(),
        layout: Layout::TupleField { field, mirrored: false },
    };
    Ok(ReducedMachine { machine, certificate, bound: bound_2b1(n, m.n_symbols(), b) })
}

/// `(n(b+1)/(b-1) + 2(l-1) + (b^l-1)/(b-1)) · m`, rounded down.
pub(crate) fn bound_2b1(n: usize, m: usize, b: usize) -> Bound {
    let l = digits_needed(n, b);
    let (nf, bf, lf) = (n as f64, b as f64, l as f64);
    let per = nf * (bf + 1.0) / (bf - 1.0) + 2.0 * (lf - 1.0) + (bf.powi(l as i32) - 1.0) / (bf - 1.0);
    Bound { states: 2 * b as u64 + 1, symbols: (per * m as f64 + 1e-9).floor() as u64 }
}
