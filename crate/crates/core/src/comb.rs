//! Words over `{1..k}`, subword embedding, the block family
//! `s^(i) = s_i … s_{2i}` and the property `(*)`: no block embeds into a
//! later one.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    k: u8,
    letters: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("letter {letter} outside alphabet 1..={k}")]
    Letter { letter: u32, k: u8 },
    #[error("alphabet size must be between 1 and 9")]
    Alphabet,
}

impl Word {
    pub fn new(k: u8, letters: Vec<u8>) -> Result<Self, WordError> {
        if k == 0 {
            return Err(WordError::Alphabet);
        }
        if let Some(&bad) = letters.iter().find(|&&c| c == 0 || c > k) {
            return Err(WordError::Letter {
                letter: bad.into(),
                k,
            });
        }
        Ok(Word { k, letters })
    }

    /// Parses a digit string such as `"12221111111"`.
    pub fn parse(k: u8, s: &str) -> Result<Self, WordError> {
        if !(1..=9).contains(&k) {
            return Err(WordError::Alphabet);
        }
        let letters = s
            .chars()
            .map(|c| {
                let d = c.to_digit(10).ok_or(WordError::Letter { letter: c as u32, k })?;
                Ok(d as u8)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(k, letters)
    }

    pub fn ones(k: u8, len: usize) -> Self {
        Word {
            k,
            letters: vec![1; len],
        }
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `s^(i)` for 1-based `i`, if `2i ≤ N`.
    pub fn block(&self, i: usize) -> Option<&[u8]> {
        if i == 0 || 2 * i > self.letters.len() {
            return None;
        }
        Some(&self.letters[i - 1..2 * i])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= 9 {
            for &c in &self.letters {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|c| c.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Infers the alphabet from the largest letter.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k = s.chars().filter_map(|c| c.to_digit(10)).max().unwrap_or(1).max(1);
        Word::parse(k as u8, s)
    }
}

/// Greedy left-to-right subsequence embedding test.
pub fn is_subword(a: &[u8], b: &[u8]) -> bool {
    let mut rest = b.iter();
    a.iter().all(|x| rest.any(|y| y == x))
}

pub fn blocks(word: &Word) -> Vec<Word> {
    (1..=word.len() / 2)
        .map(|i| Word {
            k: word.k,
            letters: word.block(i).expect("in range").to_vec(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Satisfies,
    /// Least `(i, j)` in lexicographic order with `i < j` and `s^(i)`
    /// a subword of `s^(j)`.
    Violates { i: usize, j: usize },
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Satisfies
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Satisfies => f.write_str("satisfies (*)"),
            Verdict::Violates { i, j } => write!(f, "violates (*) at i={i}, j={j}"),
        }
    }
}

pub fn satisfies_star(word: &Word) -> Verdict {
    let half = word.len() / 2;
    for i in 1..=half {
        let bi = word.block(i).expect("in range");
        for j in i + 1..=half {
            if is_subword(bi, word.block(j).expect("in range")) {
                return Verdict::Violates { i, j };
            }
        }
    }
    Verdict::Satisfies
}

/// Base-k successor with the least significant letter on the right; the
/// all-`k` word of length N overflows to the all-`1` word of length N+1.
pub fn next_word(word: &Word) -> Word {
    let mut letters = word.letters.clone();
    for c in letters.iter_mut().rev() {
        if *c < word.k {
            *c += 1;
            return Word { k: word.k, letters };
        }
        *c = 1;
    }
    Word::ones(word.k, word.len() + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NkResult {
    /// No word of length `value + 1` satisfies `(*)`.
    Exact { value: usize, witness: Word },
    /// Some word of length `max_len` satisfies `(*)`.
    AtLeast { bound: usize, witness: Word },
}

impl NkResult {
    pub fn witness(&self) -> &Word {
        match self {
            NkResult::Exact { witness, .. } | NkResult::AtLeast { witness, .. } => witness,
        }
    }
}

/// Depth-first search over `(*)`-satisfying prefixes in [`next_word`] order.
///
/// Violations persist under extension, so only satisfying prefixes are
/// extended. Returns the longest satisfying length reached (capped at
/// `max_len`) and the first word of that length in enumeration order.
fn longest_from(k: u8, prefix: &mut Vec<u8>, max_len: usize, best: &mut (usize, Vec<u8>)) {
    if prefix.len() > best.0 {
        *best = (prefix.len(), prefix.clone());
    }
    if prefix.len() == max_len {
        return;
    }
    for c in 1..=k {
        prefix.push(c);
        if new_block_ok(prefix) {
            longest_from(k, prefix, max_len, best);
        }
        prefix.pop();
    }
}

/// Checks only the pairs introduced by the last letter, assuming the prefix
/// without it satisfies `(*)`.
fn new_block_ok(s: &[u8]) -> bool {
    let n = s.len();
    if !n.is_multiple_of(2) {
        return true;
    }
    let j = n / 2;
    let bj = &s[j - 1..2 * j];
    (1..j).all(|i| !is_subword(&s[i - 1..2 * i], bj))
}

/// Exhaustive search for `n(k)` up to `max_len`, partitioned over the first
/// two letters. The merge takes the maximum length and the earliest witness,
/// so the result does not depend on scheduling.
pub fn n_of_k(k: u8, max_len: usize) -> NkResult {
    assert!(k >= 1 && max_len >= 1, "need k ≥ 1 and max_len ≥ 1");
    let seeds: Vec<Vec<u8>> = if max_len >= 2 {
        (1..=k)
            .flat_map(|a| (1..=k).map(move |b| vec![a, b]))
            .collect()
    } else {
        (1..=k).map(|a| vec![a]).collect()
    };
    let results: Vec<(usize, Vec<u8>)> = seeds
        .into_par_iter()
        .map(|mut seed| {
            let mut best = (0, Vec::new());
            if new_block_ok(&seed) {
                longest_from(k, &mut seed, max_len, &mut best);
            }
            best
        })
        .collect();
    // Seeds are in enumeration order; keep the first of maximal length.
    let (len, letters) = results
        .into_iter()
        .fold((0, Vec::new()), |acc, r| if r.0 > acc.0 { r } else { acc });
    let witness = Word { k, letters };
    if len < max_len {
        NkResult::Exact {
            value: len,
            witness,
        }
    } else {
        NkResult::AtLeast {
            bound: max_len,
            witness,
        }
    }
}

/// Every word of length `len` over `{1..k}` in enumeration order.
pub fn all_words(k: u8, len: usize) -> impl Iterator<Item = Word> {
    let total = (k as u64).checked_pow(len as u32).expect("enumeration too large");
    let mut cur = Word::ones(k, len);
    (0..total).map(move |_| {
        let out = cur.clone();
        cur = next_word(&cur);
        out
    })
}
