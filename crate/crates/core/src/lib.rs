//! A Turing-machine laboratory around Friedman's long finite sequences.
//!
//! * [`tm`]: machine model, simulation and the textual machine format.
//! * [`comb`]: the subword property `(*)`, block extraction and `n(k)` search.
//! * [`gen`]: the machine family that searches for the first word length
//!   where every word violates `(*)`.
//! * [`transforms`]: symbol-count and state-count reductions with decoding
//!   certificates.
//! * [`lab`]: Ackermann values, Busy Beaver enumeration, equivalence checking
//!   and infeasibility-frontier counting.
//! * [`cli`]: the `fls` command-line front end.

pub mod tm;
pub mod comb;
pub mod gen;
pub mod transforms;
pub mod lab;
pub mod cli;
