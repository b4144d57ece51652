//! Machine-to-machine reductions. Each pass returns the reduced machine, a
//! certificate that maps reduced tapes back to original tapes, and the size
//! bound the construction promises.

mod base;
mod blocks;
mod substates;
mod three;
mod two;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::tm::{Configuration, Machine, Tape, TmError};

pub use base::reduce_states_2b1;
pub use blocks::reduce_symbols;
pub use substates::{estimate_substates, SubstateProfile};
pub use three::reduce_states_3;
pub use two::{reduce_states_2_empty, reduce_states_2_seeded};

pub const CERT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("base must be in 2..=36, got {0}")]
    Base(usize),
    #[error("start state has no transition on the blank")]
    NoFirstMove,
    #[error(transparent)]
    Machine(#[from] TmError),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CertError {
    #[error("unsupported certificate version {0}")]
    Version(u32),
    #[error("certificate does not match machine: {0}")]
    Mismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pass {
    Symbols,
    States3,
    States2b1,
    States2Seeded,
    States2Empty,
}

impl Pass {
    pub fn name(self) -> &'static str {
        match self {
            Pass::Symbols => "symbols",
            Pass::States3 => "states3",
            Pass::States2b1 => "states2b1",
            Pass::States2Seeded => "states2-seeded",
            Pass::States2Empty => "states2-empty",
        }
    }

    pub fn all() -> [Pass; 5] {
        [Pass::Symbols, Pass::States3, Pass::States2b1, Pass::States2Seeded, Pass::States2Empty]
    }

    /// Runs the pass; `base` is used by the two base-parametric passes.
    pub fn apply(self, m: &Machine, base: usize) -> Result<ReducedMachine, TransformError> {
        match self {
            Pass::Symbols => reduce_symbols(m, base),
            Pass::States3 => reduce_states_3(m),
            Pass::States2b1 => reduce_states_2b1(m, base),
            Pass::States2Seeded => reduce_states_2_seeded(m),
            Pass::States2Empty => reduce_states_2_empty(m),
        }
    }
}

impl std::str::FromStr for Pass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Pass::all()
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown pass {s:?}"))
    }
}

/// How reduced cells map back to original cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Layout {
    /// Original cell `p` is the block of `width` digits starting at `p * width`.
    SymbolBlocks {
        base: usize,
        width: usize,
        /// Digit string (one char per digit) → original symbol.
        codes: BTreeMap<String, String>,
    },
    /// One reduced cell per original cell; the original symbol is a field of
    /// the reduced symbol. `mirrored` simulations run reflected about the
    /// start cell.
    TupleField {
        field: BTreeMap<String, String>,
        mirrored: bool,
    },
    /// As `TupleField`, plus the seeded start cell and the counter value that
    /// only the empty-tape bootstrap uses.
    SeededTwoState {
        field: BTreeMap<String, String>,
        mirrored: bool,
        seed: Option<String>,
        overflow: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub pass: Pass,
    pub original_blank: String,
    pub layout: Layout,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let c: Certificate = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if c.version != CERT_VERSION {
            return Err(CertError::Version(c.version).to_string());
        }
        Ok(c)
    }

    /// Head position of the reduced machine when the original starts at `h0`.
    pub fn reduced_head(&self, h0: i64) -> i64 {
        match &self.layout {
            Layout::SymbolBlocks { width, .. } => h0 * *width as i64,
            _ => h0,
        }
    }

    /// Start configuration of `reduced` for an original run from `h0`.
    pub fn initial(&self, reduced: &Machine, h0: i64) -> Result<Configuration, CertError> {
        let mut c = Configuration::initial(reduced.blank(), reduced.start());
        c.head = self.reduced_head(h0);
        if let Layout::SeededTwoState { seed: Some(s), .. } = &self.layout {
            let e = reduced
                .symbol_index(s)
                .ok_or_else(|| CertError::Mismatch(format!("seed symbol {s} not declared")))?;
            c.tape.set(c.head, e);
        }
        Ok(c)
    }

    /// Decodes a reduced tape into the original's non-blank cells. `h0` is
    /// the original start position.
    pub fn decode(
        &self,
        original: &Machine,
        reduced: &Machine,
        tape: &Tape,
        h0: i64,
    ) -> Result<BTreeMap<i64, usize>, CertError> {
        let orig_sym = |name: &str| {
            original
                .symbol_index(name)
                .ok_or_else(|| CertError::Mismatch(format!("unknown original symbol {name}")))
        };
        if original.symbol_name(original.blank()) != self.original_blank {
            return Err(CertError::Mismatch("blank differs".into()));
        }
        let mut out = BTreeMap::new();
        match &self.layout {
            Layout::SymbolBlocks { width, codes, .. } => {
                let w = *width as i64;
                let blank_code = "0".repeat(*width);
                let Some((lo, hi)) = tape.support() else { return Ok(out) };
                for p in lo.div_euclid(w)..=hi.div_euclid(w) {
                    let digits: String =
                        (0..w).map(|j| reduced.symbol_name(tape.get(p * w + j))).collect();
                    if digits == blank_code {
                        continue;
                    }
                    let name = codes
                        .get(&digits)
                        .ok_or_else(|| CertError::Mismatch(format!("no symbol for block {digits}")))?;
                    let e = orig_sym(name)?;
                    if e != original.blank() {
                        out.insert(p, e);
                    }
                }
            }
            Layout::TupleField { field, mirrored }
            | Layout::SeededTwoState { field, mirrored, .. } => {
                for (p, s) in tape.non_blank() {
                    let name = reduced.symbol_name(s);
                    let orig = field
                        .get(name)
                        .ok_or_else(|| CertError::Mismatch(format!("no field for {name}")))?;
                    let e = orig_sym(orig)?;
                    if e != original.blank() {
                        let q = if *mirrored { 2 * h0 - p } else { p };
                        out.insert(q, e);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Size bound promised by the construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Bound {
    pub states: u64,
    pub symbols: u64,
}

#[derive(Debug, Clone)]
pub struct ReducedMachine {
    pub machine: Machine,
    pub certificate: Certificate,
    pub bound: Bound,
}

impl ReducedMachine {
    pub fn respects_bound(&self) -> bool {
        self.machine.n_states() as u64 <= self.bound.states
            && self.machine.n_symbols() as u64 <= self.bound.symbols
    }

    /// Starting configuration simulating the original started at `h0` on the
    /// empty tape (including the seeded cell where the pass needs one).
    pub fn initial(&self, h0: i64) -> Configuration {
        self.certificate.initial(&self.machine, h0).expect("own certificate")
    }
}

/// Least `l ≥ 1` with `b^l ≥ x`.
pub fn digits_needed(x: usize, b: usize) -> usize {
    let mut l = 1;
    let mut cap = b;
    while cap < x {
        cap = cap.saturating_mul(b);
        l += 1;
    }
    l
}

/// `1 + b + … + b^(l-1)`.
pub fn geometric(b: u64, l: usize) -> u64 {
    (0..l).map(|i| b.pow(i as u32)).sum()
}

/// 1-based rank with the start state first, then the others in order.
pub(crate) fn rank(m: &Machine, q: usize) -> usize {
    if q == m.start() {
        1
    } else if q < m.start() {
        q + 2
    } else {
        q + 1
    }
}

pub(crate) fn unrank(m: &Machine, r: usize) -> usize {
    let s = m.start() + 1;
    if r == 1 {
        m.start()
    } else if r <= s {
        r - 2
    } else {
        r - 1
    }
}

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub(crate) fn digit_char(d: usize) -> char {
    DIGITS[d] as char
}

/// `x` in base `b`, most significant digit first, padded to `l` digits.
pub(crate) fn to_digits(mut x: usize, b: usize, l: usize) -> Vec<usize> {
    let mut v = vec![0; l];
    for slot in v.iter_mut().rev() {
        *slot = x % b;
        x /= b;
    }
    v
}

pub(crate) fn digit_string(ds: &[usize]) -> String {
    ds.iter().map(|&d| digit_char(d)).collect()
}

fn check_base(b: usize) -> Result<(), TransformError> {
    if (2..=36).contains(&b) {
        Ok(())
    } else {
        Err(TransformError::Base(b))
    }
}

#[cfg(test)]
mod tests;
