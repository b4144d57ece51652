use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tm::{run, Action, Dir, Machine, MachineBuilder, Next};

/// Total table over `n` states and `m` symbols; each entry halts with
/// probability `1/(n+1)`.
pub fn random_machine<R: RngExt + ?Sized>(rng: &mut R, n: usize, m: usize) -> Machine {
    let mut b = MachineBuilder::new();
    for q in 0..n {
        b.state(&format!("q{q}")).expect("distinct");
    }
    for e in 0..m {
        b.symbol(&e.to_string()).expect("distinct");
    }
    for q in 0..n {
        for e in 0..m {
            let t = rng.random_range(0..=n);
            let next = if t == n { Next::Halt } else { Next::State(t) };
            let write = rng.random_range(0..m);
            let dir = if rng.random_bool(0.5) { Dir::R } else { Dir::L };
            b.add(q, e, Action { next, write, dir }).expect("fresh entry");
        }
    }
    b.set_blank(0).set_start(0);
    b.build().expect("total table")
}

/// `count` machines with `1..=max_states` states and `2..=max_symbols`
/// symbols that halt from the empty tape within `max_steps`. Same seed, same
/// corpus.
pub fn halting_corpus(
    seed: u64,
    count: usize,
    max_states: usize,
    max_symbols: usize,
    max_steps: u128,
) -> Vec<Machine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(1..=max_states);
        let m = rng.random_range(2..=max_symbols.max(2));
        let mach = random_machine(&mut rng, n, m);
        if run(&mach, max_steps).halted() {
            out.push(mach);
        }
    }
    out
}
