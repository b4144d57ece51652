//! Quantitative side: Ackermann values, tiny Busy Beaver classes, reduction
//! checking and the count of still-interesting `(states, symbols)` pairs.

mod ack;
mod bb;
mod corpus;
mod frontier;
mod verify;

pub use ack::{ackermann, AckValue, Ackermann};
pub use bb::{bb_enumerate, BbError, BbResult, DEFAULT_MACHINE_LIMIT};
pub use corpus::{halting_corpus, random_machine};
pub use frontier::{frontier_count, Band, Frontier, FrontierCount, FrontierError, Preset};
pub use verify::{verify_simulation, Verdict};

#[cfg(test)]
mod tests;
