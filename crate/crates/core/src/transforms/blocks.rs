//! Symbol reduction: each original cell becomes a block of `l` base-`b`
//! digits and each original state a small family of states that read the
//! block, rewrite it and walk to the next block.
//!
//! Between simulated steps the head rests on the leftmost digit of the
//! current block. Per original state `q`:
//! * `q/r<prefix>` reads digits left to right (a tree over prefixes);
//! * `w<j>/…` rewrites the block right to left, one state per action and
//!   position;
//! * `q/eL<t>`, `q/eR<t>` walk the remaining cells to the left end of the
//!   neighbouring block.

use std::collections::{BTreeMap, BTreeSet};

use crate::tm::{Action, Dir, Machine, MachineBuilder, Next};

use super::{
    check_base, digit_char, digit_string, digits_needed, geometric, to_digits, Bound, Certificate,
    Layout, Pass, ReducedMachine, TransformError, CERT_VERSION,
};

/// Codes: the blank gets 0, the others follow in symbol order.
fn codes(m: &Machine, b: usize, l: usize) -> Vec<Vec<usize>> {
    let mut next = 1;
    (0..m.n_symbols())
        .map(|e| {
            let c = if e == m.blank() {
                0
            } else {
                next += 1;
                next - 1
            };
            to_digits(c, b, l)
        })
        .collect()
}

pub fn reduce_symbols(m: &Machine, b: usize) -> Result<ReducedMachine, TransformError> {
    check_base(b)?;
    let n = m.n_states();
    let sym_count = m.n_symbols();
    let l = digits_needed(sym_count, b);
    let code = codes(m, b, l);
    let by_code: BTreeMap<Vec<usize>, usize> =
        code.iter().enumerate().map(|(e, c)| (c.clone(), e)).collect();
    let prefixes: BTreeSet<Vec<usize>> = code
        .iter()
        .flat_map(|c| (0..l).map(move |j| c[..j].to_vec()))
        .collect();

    let read = |q: usize, p: &[usize]| format!("{}/r{}", m.state_name(q), digit_string(p));
    let walk = |q: usize, side: Dir, t: usize| format!("{}/e{side}{t}", m.state_name(q));
    let write = |a: &Action, j: usize| {
        let next = match a.next {
            Next::Halt => "HALT".to_string(),
            Next::State(q) => m.state_name(q).to_string(),
        };
        format!("w{j}/{next}/{}/{}", m.symbol_name(a.write), a.dir)
    };

    let mut bld = MachineBuilder::new();
    for d in 0..b {
        bld.symbol(&digit_char(d).to_string())?;
    }
    // Declare states in a stable order: read trees first, then the rest on
    // first use.
    for q in 0..n {
        for p in &prefixes {
            bld.state(&read(q, p))?;
        }
    }
    let add = |bld: &mut MachineBuilder,
                   from: &str,
                   digit: usize,
                   to: Option<&str>,
                   w: usize,
                   dir: Dir|
     -> Result<(), TransformError> {
        let qf = bld.state(from)?;
        let next = match to {
            None => Next::Halt,
            Some(t) => Next::State(bld.state(t)?),
        };
        bld.add(qf, digit, Action { next, write: w, dir })?;
        Ok(())
    };
    let entry = |a: &Action| -> Option<String> {
        match a.next {
            Next::Halt => None,
            Next::State(q) => Some(read(q, &[])),
        }
    };

    let mut actions: BTreeSet<(usize, usize, bool)> = BTreeSet::new();
    for q in 0..n {
        for p in &prefixes {
            let from = read(q, p);
            for d in 0..b {
                let mut c = p.clone();
                c.push(d);
                if c.len() < l {
                    if prefixes.contains(&c) {
                        add(&mut bld, &from, d, Some(&read(q, &c)), d, Dir::R)?;
                    }
                    continue;
                }
                let Some(&e) = by_code.get(&c) else { continue };
                let Some(a) = m.action(q, e) else { continue };
                let target = &code[a.write];
                if l == 1 {
                    add(&mut bld, &from, d, entry(&a).as_deref(), target[0], a.dir)?;
                } else {
                    add(&mut bld, &from, d, Some(&write(&a, l - 2)), target[l - 1], Dir::L)?;
                    let key = match a.next {
                        Next::Halt => usize::MAX,
                        Next::State(s) => s,
                    };
                    actions.insert((key, a.write, a.dir == Dir::R));
                }
            }
        }
    }

    let mut walks: BTreeSet<(usize, bool)> = BTreeSet::new();
    for &(key, wr, right) in &actions {
        let a = Action {
            next: if key == usize::MAX { Next::Halt } else { Next::State(key) },
            write: wr,
            dir: if right { Dir::R } else { Dir::L },
        };
        let target = &code[wr];
        for j in (0..=l - 2).rev() {
            let from = write(&a, j);
            for d in 0..b {
                if j > 0 {
                    add(&mut bld, &from, d, Some(&write(&a, j - 1)), target[j], Dir::L)?;
                } else {
                    match a.next {
                        Next::Halt => add(&mut bld, &from, d, None, target[0], a.dir)?,
                        Next::State(q) => {
                            add(&mut bld, &from, d, Some(&walk(q, a.dir, l - 1)), target[0], a.dir)?;
                            walks.insert((q, right));
                        }
                    }
                }
            }
        }
    }
    for &(q, right) in &walks {
        let dir = if right { Dir::R } else { Dir::L };
        for t in (1..l).rev() {
            let to = if t == 1 { read(q, &[]) } else { walk(q, dir, t - 1) };
            for d in 0..b {
                add(&mut bld, &walk(q, dir, t), d, Some(&to), d, dir)?;
            }
        }
    }
    let start = bld.state_id(&read(m.start(), &[])).expect("declared");
    bld.set_blank(0).set_start(start);
    let machine = bld.build()?;

    let certificate = Certificate {
        version: CERT_VERSION,
        pass: Pass::Symbols,
        original_blank: m.symbol_name(m.blank()).to_string(),
        layout: Layout::SymbolBlocks {
            base: b,
            width: l,
            codes: code
                .iter()
                .enumerate()
                .map(|(e, c)| (digit_string(c), m.symbol_name(e).to_string()))
                .collect(),
        },
    };
    let (n64, m64, l64) = (n as u64, sym_count as u64, l as u64);
    let bound = Bound {
        states: n64 * ((l64 - 1) + geometric(b as u64, l) + m64 * 2 * (l64 - 1)),
        symbols: b as u64,
    };
    Ok(ReducedMachine { machine, certificate, bound })
}
