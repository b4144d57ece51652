//! The machine family that runs the long-finite-sequences search, plus a
//! tape decoder and a word-level model of the same loop for cross-checks.

mod family;
mod table;

use serde::Serialize;

use crate::comb::Word;
use crate::tm::{Configuration, Machine, Observer, StepEvent, TmError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FriedmanParams {
    pub k: usize,
    /// 0: the `X` marker separates II from III; 1: no `X`, double scans.
    pub delta: u8,
}

impl FriedmanParams {
    pub fn new(k: usize, delta: u8) -> Self {
        FriedmanParams { k, delta }
    }

    /// `(states, symbols)` the generator produces.
    pub fn expected_size(&self) -> (usize, usize) {
        let k = self.k;
        let syms = 2 * k.max(3) + 2 - self.delta as usize;
        let states = 35 + 3 * k + if self.delta == 1 { 7 + k } else { 0 };
        (states, syms)
    }
}

pub fn generate(params: FriedmanParams) -> Result<Machine, TmError> {
    let k = params.k;
    if k < 2 {
        return Err(TmError::Invalid(format!("alphabet size must be at least 2, got {k}")));
    }
    if k > 200 {
        return Err(TmError::Invalid(format!("alphabet size {k} is unreasonably large")));
    }
    match params.delta {
        0 => table::expand(&family::symbols(k), &family::rows_with_marker(k), "Y", "q1-4"),
        1 => {
            let mut syms = family::symbols(k);
            syms.retain(|s| s != "X");
            table::expand(&syms, &family::rows_without_marker(k), "Y", "q1-4")
        }
        d => Err(TmError::Invalid(format!("delta must be 0 or 1, got {d}"))),
    }
}

/// Segment-level reading of a tape produced by a generated machine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentView {
    pub i: usize,
    pub imax: usize,
    pub l: usize,
    pub lmax: usize,
    /// Current word with primes resolved; its length is `N`.
    pub word: String,
    pub copies: Vec<String>,
    pub wellformed: bool,
    pub note: String,
}

impl SegmentView {
    fn broken(note: &str) -> Self {
        SegmentView {
            i: 0,
            imax: 0,
            l: 0,
            lmax: 0,
            word: String::new(),
            copies: Vec::new(),
            wellformed: false,
            note: note.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.chars().count()
    }
}

/// Decodes a segment-I cell string: `i` counts `1 2 3`, `l` counts `3 +`,
/// `lmax` counts everything carrying an `l` bit (`2 3 $ +`).
pub fn decode_counters(cells: &[&str]) -> (usize, usize, usize, usize) {
    let count = |set: &[&str]| cells.iter().filter(|c| set.contains(c)).count();
    (
        count(&["1", "2", "3"]),
        cells.len(),
        count(&["3", "+"]),
        count(&["2", "3", "$", "+"]),
    )
}

fn resolve(sym: &str) -> String {
    match sym {
        "-" => "1".into(),
        "$" => "2".into(),
        "+" => "3".into(),
        s => s.trim_end_matches('\'').to_string(),
    }
}

pub fn decode_segments(machine: &Machine, config: &Configuration) -> SegmentView {
    let Some((lo, hi)) = config.tape.support() else {
        return SegmentView::broken("blank tape");
    };
    let blank = machine.blank();
    let name = |p: i64| machine.symbol_name(config.tape.get(p));
    let cells: Vec<i64> = (lo..=hi).collect();

    // Boundary between II and III: the X, or for the X-free variant the
    // second blank gap.
    let xs: Vec<i64> = cells.iter().copied().filter(|&p| name(p) == "X").collect();
    let (ii_end, iii_start) = match (machine.symbol_index("X"), xs.as_slice()) {
        (Some(_), [x]) => (*x, *x + 1),
        (Some(_), []) => return SegmentView::broken("no X marker"),
        (Some(_), _) => return SegmentView::broken("several X markers"),
        (None, _) => {
            let runs = runs(lo, hi, |p| config.tape.get(p) != blank);
            if runs.len() < 2 {
                return SegmentView::broken("fewer than two segments");
            }
            (runs[1].1 + 1, runs[1].1 + 2)
        }
    };
    // II runs left from the boundary up to the next blank, I is the run left of
    // that.
    let mut p = ii_end - 1;
    while p >= lo && config.tape.get(p) != blank {
        p -= 1;
    }
    let ii_start = p + 1;
    if p < lo {
        return SegmentView::broken("no segment I");
    }
    let mut q = p - 1;
    while q >= lo && config.tape.get(q) != blank {
        q -= 1;
    }
    if q >= lo {
        return SegmentView::broken("stray cells left of segment I");
    }
    let seg1: Vec<&str> = (q + 1..p).map(name).collect();
    let (i, imax, l, lmax) = decode_counters(&seg1);
    let word: String = (ii_start..ii_end).map(|p| resolve(name(p))).collect();

    let mut copies = Vec::new();
    let mut cur = String::new();
    let mut p = iii_start;
    while p <= hi && config.tape.get(p) != blank {
        let s = name(p);
        if s == "+" {
            copies.push(std::mem::take(&mut cur));
        } else {
            cur.push_str(s);
        }
        p += 1;
    }
    if !cur.is_empty() {
        copies.push(cur);
    }
    let tail_clean = (p..=hi).all(|p| config.tape.get(p) == blank);
    let wellformed = tail_clean && !seg1.is_empty() && i <= imax && l <= lmax && lmax <= imax;
    SegmentView {
        i,
        imax,
        l,
        lmax,
        word,
        copies,
        wellformed,
        note: if tail_clean { String::new() } else { "cells right of segment III".into() },
    }
}

fn runs(lo: i64, hi: i64, nonblank: impl Fn(i64) -> bool) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut p = lo;
    while p <= hi {
        if nonblank(p) {
            let s = p;
            while p <= hi && nonblank(p) {
                p += 1;
            }
            out.push((s, p - 1));
        } else {
            p += 1;
        }
    }
    out
}

/// One return to the top of the loop with `i = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Milestone {
    pub n: usize,
    pub word: String,
    pub lmax: usize,
}

/// Collects a [`Milestone`] each time the machine enters `q1-1` with `i = 0`.
pub struct MilestoneCollector<'a> {
    machine: &'a Machine,
    entry: usize,
    pub milestones: Vec<Milestone>,
    pub limit: usize,
    pub malformed: usize,
}

impl<'a> MilestoneCollector<'a> {
    pub fn new(machine: &'a Machine, limit: usize) -> Self {
        MilestoneCollector {
            machine,
            entry: machine.state_index("q1-1").expect("generated machine has q1-1"),
            milestones: Vec::new(),
            limit,
            malformed: 0,
        }
    }
}

impl Observer for MilestoneCollector<'_> {
    fn on_step(&mut self, ev: &StepEvent, config: &Configuration) -> bool {
        if ev.state != self.entry && config.state == self.entry {
            let v = decode_segments(self.machine, config);
            if !v.wellformed {
                self.malformed += 1;
            } else if v.i == 0 {
                self.milestones.push(Milestone { n: v.n(), word: v.word, lmax: v.lmax });
            }
        }
        self.milestones.len() < self.limit
    }
}

/// Word-level model of the search loop. For each even `N` (from 2) and each
/// word `s` of length `N` in [`crate::comb::next_word`] order, pass `lmax`
/// compares block `lmax + 1` against every later block; a match bumps `s`,
/// and surviving all `N/2 + 1` passes (the last one is vacuous) moves on to
/// `N + 2`. A milestone is emitted
/// at the start of every pass. Reaching `1^(N+1)` ends the search.
pub fn reference_algorithm_milestones(k: usize, budget: usize) -> Vec<Milestone> {
    let mut out = Vec::new();
    let mut n = 2;
    let mut s = Word::ones(k as u8, n);
    while out.len() < budget {
        let mut advanced = false;
        for pass in 0..=n / 2 {
            out.push(Milestone { n, word: s.to_string(), lmax: pass });
            if out.len() >= budget {
                return out;
            }
            if violates_at(&s, pass + 1) {
                let next = crate::comb::next_word(&s);
                if next.len() != n {
                    return out;
                }
                s = next;
                advanced = true;
                break;
            }
        }
        if !advanced {
            n += 2;
            s = Word::ones(k as u8, n);
        }
    }
    out
}

/// Whether block `i` embeds into some later block.
fn violates_at(s: &Word, i: usize) -> bool {
    let bi = match s.block(i) {
        Some(b) => b,
        None => return false,
    };
    (i + 1..=s.len() / 2).any(|j| s.block(j).is_some_and(|bj| crate::comb::is_subword(bi, bj)))
}

#[cfg(test)]
mod tests;
