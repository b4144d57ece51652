//! Closed-form substate count for the symbol reduction of a machine whose
//! states have been classified by sweep pattern.

use serde::Serialize;

use super::geometric;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubstateProfile {
    /// States entered from both sides.
    pub sweep0: u64,
    /// Scan states left opposite the entry side without writing.
    pub scan_gt: u64,
    /// Scan states left at the entry side on a match.
    pub scan_lt: u64,
    /// Scan states that rewrite afterwards.
    pub scan_ne: u64,
    /// States needing the full read tree.
    pub sweep1: u64,
    pub v_lt_eq: u64,
    pub v_lt_ne: u64,
    pub v_gt_ne: u64,
    pub b: u64,
    pub l: usize,
}

impl SubstateProfile {
    /// Classification of the generated `(35+3k, 2k+2)` machine, with the
    /// extra cases of the `X`-free variant when `delta = 1`.
    pub fn search_machine(k: u64, delta: u64, b: u64, l: usize) -> Self {
        SubstateProfile {
            sweep0: 3 + delta,
            scan_gt: 6 + 3 * delta,
            scan_lt: 6 + k + delta * (2 + k),
            scan_ne: 6 + delta,
            sweep1: 17 + 2 * k + delta,
            v_lt_eq: 15 + 2 * k + 3 * delta,
            v_lt_ne: 9 + k + delta * (1 + k),
            v_gt_ne: 17 + 6 * k + 2 * delta,
            b,
            l,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("inconsistent profile: {0}")]
pub struct ProfileError(String);

/// `(l-1)·#Sweep0 + (2l-1)·(#Scan> + #Scan≠) + (3l-2)·#Scan<
///  + (1+b+…+b^(l-1))·#Sweep1 + (l-1)·(v<= + v<≠ + 2·v>≠)`.
pub fn estimate_substates(p: &SubstateProfile) -> Result<u64, ProfileError> {
    if p.b < 2 {
        return Err(ProfileError(format!("base {} < 2", p.b)));
    }
    if p.l == 0 {
        return Err(ProfileError("block length 0".into()));
    }
    let l = p.l as u64;
    Ok((l - 1) * p.sweep0
        + (2 * l - 1) * (p.scan_gt + p.scan_ne)
        + (3 * l - 2) * p.scan_lt
        + geometric(p.b, p.l) * p.sweep1
        + (l - 1) * (p.v_lt_eq + p.v_lt_ne + 2 * p.v_gt_ne))
}
