use num_bigint::BigUint;
use proptest::prelude::*;

use super::*;
use crate::tm::{example_machine, run, Action, Dir, MachineBuilder, Next};
use crate::transforms::{reduce_states_2_empty, reduce_states_3, Pass};

// Plain recursion, only usable where values stay tiny.
fn ack_naive(f: u128, c: u128) -> u128 {
    match (f, c) {
        (1, c) => 2 * c,
        (_, 1) => 2,
        (f, c) => ack_naive(f - 1, ack_naive(f, c - 1)),
    }
}

#[test]
fn ackermann_matches_naive_recursion() {
    for f in 1..=4 {
        for c in 1..=4 {
            if f == 4 && c == 4 {
                continue;
            }
            if f == 3 && c == 4 || f == 4 && c == 3 {
                continue; // 65536 is fine, but naive recursion on it is slow
            }
            let want = ack_naive(f, c);
            assert_eq!(ackermann(f as u64, c as u64, 128), AckValue::Exact(BigUint::from(want)), "A({f},{c})");
        }
    }
}

#[test]
fn ackermann_values() {
    let v = |f, c| ackermann(f, c, 1 << 20).exact().cloned();
    assert_eq!(v(3, 4), Some(BigUint::from(65536u32)));
    assert_eq!(v(4, 3), Some(BigUint::from(65536u32)));
    for f in 1..=6 {
        assert_eq!(v(f, 1), Some(BigUint::from(2u32)));
        assert_eq!(v(f, 2), Some(BigUint::from(4u32)));
    }
    for c in 1..=64u64 {
        assert_eq!(v(2, c), Some(BigUint::from(1u128 << c)));
        assert_eq!(v(1, c), Some(BigUint::from(2 * c)));
    }
    assert_eq!(v(3, 5).unwrap().bits(), 65537);
}

#[test]
fn ackermann_overflow() {
    match ackermann(4, 4, 1_000_000) {
        AckValue::Overflow { f, c } => assert_eq!((f, c), (4, BigUint::from(4u32))),
        v => panic!("{v:?}"),
    }
    assert!(matches!(ackermann(2, 100, 64), AckValue::Overflow { f: 2, .. }));
    // The failing inner call is reported where the recursion stood.
    assert!(matches!(ackermann(5, 3, 1_000_000), AckValue::Overflow { f: 5, .. }));
}

#[test]
fn ackermann_recurrence_closure() {
    let mut a = Ackermann::new(1 << 16);
    for f in 2..=5u64 {
        for c in 2..=5u64 {
            let (AckValue::Exact(v), AckValue::Exact(prev)) = (a.eval(f, c), a.eval(f, c - 1)) else {
                continue;
            };
            let Ok(prev) = u64::try_from(prev) else { continue };
            assert_eq!(a.eval(f - 1, prev), AckValue::Exact(v), "A({f},{c})");
        }
    }
}

// Every total table, simulated with the ordinary runner.
fn bb_oracle(n: usize, m: usize, cutoff: u128) -> (u128, u128, u128) {
    let choices = (n + 1) * 2 * m;
    let cells = n * m;
    let total = choices.pow(cells as u32);
    let (mut best, mut halting) = (0, 0);
    for code in 0..total {
        let mut b = MachineBuilder::new();
        for q in 0..n {
            b.state(&q.to_string()).unwrap();
        }
        for e in 0..m {
            b.symbol(&e.to_string()).unwrap();
        }
        let mut x = code;
        for ix in 0..cells {
            let o = x % choices;
            x /= choices;
            let next = o / (2 * m);
            let next = if next == n { Next::Halt } else { Next::State(next) };
            let dir = if o % 2 == 1 { Dir::R } else { Dir::L };
            b.add(ix / m, ix % m, Action { next, write: (o / 2) % m, dir }).unwrap();
        }
        b.set_blank(0).set_start(0);
        let r = run(&b.build().unwrap(), cutoff);
        if r.halted() {
            halting += 1;
            best = best.max(r.steps);
        }
    }
    (best, halting, total as u128)
}

#[test]
fn bb_matches_oracle() {
    for (n, m) in [(1, 2), (1, 3), (2, 2)] {
        let r = bb_enumerate(n, m, 100, DEFAULT_MACHINE_LIMIT).unwrap();
        let (best, halting, total) = bb_oracle(n, m, 100);
        assert_eq!((r.champion_steps as u128, r.halting, r.total), (best, halting, total), "({n},{m})");
        assert_eq!(r.halting + r.cutoff_exceeded, r.total);
        assert_eq!(run(&r.champion, 100).steps, r.champion_steps as u128);
    }
}

#[test]
fn bb_small_champions() {
    assert_eq!(bb_enumerate(1, 2, 10, DEFAULT_MACHINE_LIMIT).unwrap().champion_steps, 1);
    let r = bb_enumerate(2, 2, 1000, DEFAULT_MACHINE_LIMIT).unwrap();
    assert_eq!(r.champion_steps, 6);
    assert!(bb_enumerate(2, 2, 3, DEFAULT_MACHINE_LIMIT).unwrap().champion_steps <= 3);
    assert!(matches!(bb_enumerate(5, 5, 10, DEFAULT_MACHINE_LIMIT), Err(BbError::TooLarge { .. })));
}

#[test]
fn bb_monotone_in_cutoff() {
    let mut last = 0;
    for cutoff in [1, 2, 3, 5, 8, 13] {
        let c = bb_enumerate(2, 2, cutoff, DEFAULT_MACHINE_LIMIT).unwrap().champion_steps;
        assert!(c >= last);
        last = c;
    }
}

#[test]
fn verify_examples() {
    let m = example_machine();
    let r = reduce_states_2_empty(&m).unwrap();
    assert!(matches!(verify_simulation(&m, &r, 10_000).unwrap(), Verdict::Equivalent { .. }));
    let r = reduce_states_3(&m).unwrap();
    assert!(matches!(verify_simulation(&m, &r, 10_000).unwrap(), Verdict::Equivalent { .. }));
    assert_eq!(verify_simulation(&m, &r, 1).unwrap(), Verdict::BudgetExhausted);
}

#[test]
fn verify_detects_divergence() {
    let m = example_machine();
    let r = reduce_states_3(&m).unwrap();
    // Same shape, different final write.
    let other = crate::tm::machine_from_rows(
        &["q1", "q2", "q3", "q4"],
        &["0", "1", "2", "3"],
        "0",
        "q1",
        &[("q1", "0", "HALT", "1", Dir::R)],
    )
    .unwrap();
    assert!(matches!(verify_simulation(&other, &r, 10_000).unwrap(), Verdict::Diverged(_)));
}

#[test]
fn corpus_is_seeded() {
    let a = halting_corpus(7, 20, 4, 3, 200);
    let b = halting_corpus(7, 20, 4, 3, 200);
    assert_eq!(a, b);
    assert_ne!(a, halting_corpus(8, 20, 4, 3, 200));
    for m in &a {
        assert!(m.n_states() <= 4 && (2..=3).contains(&m.n_symbols()));
        assert!(run(m, 200).halted());
    }
}

#[test]
fn corpus_reductions_are_equivalent() {
    for m in halting_corpus(1, 30, 4, 3, 200) {
        for pass in Pass::all() {
            let r = pass.apply(&m, 2).unwrap();
            assert!(matches!(verify_simulation(&m, &r, 1_000_000).unwrap(), Verdict::Equivalent { .. }));
        }
    }
}

fn brute(f: &Frontier, n_max: u64, m_max: u64) -> u64 {
    let mut c = 0;
    for n in 2..=n_max {
        for m in 2..=m_max {
            c += !f.dominated(n, m) as u64;
        }
    }
    c
}

#[test]
fn frontier_smallest() {
    let f: Frontier = "2x3,3x2".parse().unwrap();
    let c = frontier_count(&f).unwrap();
    assert_eq!(c.total, 1);
    assert_eq!(c.bands, vec![Band { n_lo: 2, n_hi: 2, m_hi: 2, count: 1 }]);
}

#[test]
fn frontier_presets() {
    for (p, want) in [(Preset::N3, 36922), (Preset::N4, 51897)] {
        let f = p.frontier();
        let c = frontier_count(&f).unwrap();
        assert_eq!(c.total, brute(&f, 1000, 3000));
        assert_eq!(c.total, want);
        assert_eq!(c.bands.iter().map(|b| b.count).sum::<u64>(), c.total);
    }
    let c = frontier_count(&Preset::N3.frontier()).unwrap();
    let shape: Vec<_> = c.bands.iter().map(|b| (b.n_lo, b.n_hi, b.m_hi, b.count)).collect();
    assert_eq!(
        shape,
        vec![
            (2, 2, 1839, 1838),
            (3, 8, 1079, 6468),
            (9, 43, 799, 27930),
            (44, 53, 7, 60),
            (54, 154, 6, 505),
            (155, 275, 2, 121),
        ]
    );
}

#[test]
fn frontier_needs_both_axes() {
    assert_eq!(frontier_count(&"3x5".parse().unwrap()), Err(FrontierError::OpenStates));
    assert_eq!(frontier_count(&"5x2".parse().unwrap()), Err(FrontierError::OpenSymbols));
    assert!("2x".parse::<Frontier>().is_err());
}

proptest! {
    #[test]
    fn frontier_count_is_brute_force(
        mut pts in prop::collection::vec((2u64..40, 2u64..40), 0..6),
        a in 2u64..40, b in 2u64..40,
    ) {
        pts.push((2, a));
        pts.push((b, 2));
        let f = Frontier::new(pts);
        let c = frontier_count(&f).unwrap();
        prop_assert_eq!(c.total, brute(&f, 40, 40));
        prop_assert_eq!(c.bands.iter().map(|b| b.count).sum::<u64>(), c.total);
    }

    #[test]
    fn frontier_ignores_dominated_additions(extra in (2u64..400, 2u64..2000), pick in 0usize..7) {
        let mut f = Preset::N3.frontier();
        let base = frontier_count(&f).unwrap();
        let (n, m) = f.implementations[pick];
        f.implementations.push((n + extra.0, m + extra.1));
        prop_assert_eq!(frontier_count(&f).unwrap(), base);
    }
}
