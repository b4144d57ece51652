use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// Known implementations `(states, symbols)`; every pair dominating one of
/// them is settled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    pub implementations: Vec<(u64, u64)>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FrontierError {
    #[error("no implementation with at most 2 symbols: infinitely many pairs remain")]
    OpenStates,
    #[error("no implementation with at most 2 states: infinitely many pairs remain")]
    OpenSymbols,
    #[error("bad pair {0:?}, expected NxM")]
    Parse(String),
}

/// Consecutive state counts sharing the same largest interesting symbol
/// count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Band {
    pub n_lo: u64,
    pub n_hi: u64,
    pub m_hi: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrontierCount {
    pub total: u64,
    pub bands: Vec<Band>,
}

impl Frontier {
    pub fn new(implementations: Vec<(u64, u64)>) -> Self {
        Frontier { implementations }
    }

    pub fn dominated(&self, n: u64, m: u64) -> bool {
        self.implementations.iter().any(|&(a, b)| n >= a && m >= b)
    }
}

impl FromStr for Frontier {
    type Err = FrontierError;

    /// `"2x1840,3x1080,..."`
    fn from_str(s: &str) -> Result<Self, FrontierError> {
        let pair = |t: &str| {
            let (a, b) = t.trim().split_once(['x', 'X']).ok_or_else(|| FrontierError::Parse(t.into()))?;
            let num = |x: &str| x.trim().parse::<u64>().map_err(|_| FrontierError::Parse(t.into()));
            Ok((num(a)?, num(b)?))
        };
        Ok(Frontier::new(s.split(',').filter(|t| !t.trim().is_empty()).map(pair).collect::<Result<_, _>>()?))
    }
}

/// Implementation sets derived from the generated machines and their
/// reductions, for the 3- and 4-letter searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    N3,
    N4,
}

impl Preset {
    pub fn frontier(self) -> Frontier {
        Frontier::new(match self {
            Preset::N3 => vec![(2, 1840), (3, 1080), (9, 800), (44, 8), (54, 7), (155, 3), (276, 2)],
            Preset::N4 => vec![
                (2, 2450),
                (3, 1440),
                (9, 1030),
                (47, 10),
                (58, 9),
                (160, 4),
                (353, 3),
                (922, 2),
            ],
        })
    }

    /// Totals quoted in the published band tables.
    pub fn quoted_total(self) -> u64 {
        match self {
            Preset::N3 => 37022,
            Preset::N4 => 51671,
        }
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "n3" => Ok(Preset::N3),
            "n4" => Ok(Preset::N4),
            _ => Err(format!("unknown preset {s:?} (n3 | n4)")),
        }
    }
}

/// Pairs `(n, m)` with `n, m >= 2` not dominated by any implementation,
/// counted cell by cell, plus the band decomposition.
pub fn frontier_count(f: &Frontier) -> Result<FrontierCount, FrontierError> {
    let n_bound = f.implementations.iter().filter(|p| p.1 <= 2).map(|p| p.0).min();
    let m_bound = f.implementations.iter().filter(|p| p.0 <= 2).map(|p| p.1).min();
    let n_bound = n_bound.ok_or(FrontierError::OpenStates)?;
    let m_bound = m_bound.ok_or(FrontierError::OpenSymbols)?;

    let mut total = 0;
    let mut per_n = Vec::new();
    for n in 2..n_bound.max(2) {
        let mut row = 0;
        let mut top = 0;
        for m in 2..m_bound.max(2) {
            if !f.dominated(n, m) {
                row += 1;
                top = m;
            }
        }
        total += row;
        per_n.push((n, top, row));
    }
    let mut bands: Vec<Band> = Vec::new();
    for (n, top, row) in per_n {
        match bands.last_mut() {
            Some(b) if b.m_hi == top && b.n_hi + 1 == n => {
                b.n_hi = n;
                b.count += row;
            }
            _ if row == 0 => {}
            _ => bands.push(Band { n_lo: n, n_hi: n, m_hi: top, count: row }),
        }
    }
    Ok(FrontierCount { total, bands })
}

impl fmt::Display for FrontierCount {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "n\tm\tnumber")?;
        for b in &self.bands {
            let n = if b.n_lo == b.n_hi { b.n_lo.to_string() } else { format!("{}..{}", b.n_lo, b.n_hi) };
            let m = if b.m_hi == 2 { "2".to_string() } else { format!("2..{}", b.m_hi) };
            writeln!(f, "{n}\t{m}\t{}", b.count)?;
        }
        write!(f, "total\t\t{}", self.total)
    }
}
