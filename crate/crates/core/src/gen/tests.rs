use super::*;
use crate::comb::{satisfies_star, Verdict};
use crate::tm::{run, run_observed, Outcome};

/// Halting time of the k = 2 machine from the empty tape (single reference run).
pub(crate) const K2_HALT_STEPS: u128 = 44_253_656;
const K2_HALT_STEPS_X_FREE: u128 = 44_253_672;

fn machine(k: usize, delta: u8) -> Machine {
    generate(FriedmanParams::new(k, delta)).unwrap()
}

fn milestones(m: &Machine, limit: usize, budget: u128) -> (Vec<Milestone>, Outcome) {
    let mut c = MilestoneCollector::new(m, limit);
    let r = run_observed(m, Configuration::initial(m.blank(), m.start()), budget, &mut c);
    (c.milestones, r.outcome)
}

#[test]
fn sizes() {
    let named = |k, d| {
        let m = machine(k, d);
        (m.n_states(), m.n_symbols())
    };
    assert_eq!(named(3, 0), (44, 8));
    assert_eq!(named(4, 0), (47, 10));
    assert_eq!(named(3, 1), (54, 7));
    for k in 3..=6 {
        for d in 0..=1u8 {
            let dd = d as usize;
            assert_eq!(named(k, d), (35 + 3 * k + dd * (7 + k), 2 * k + 2 - dd));
            assert_eq!(FriedmanParams::new(k, d).expected_size(), named(k, d));
        }
    }
    assert_eq!(named(2, 0), (41, 8));
    assert_eq!(FriedmanParams::new(2, 0).expected_size(), (41, 8));
}

#[test]
fn k3_symbol_set_and_start() {
    let m = machine(3, 0);
    assert_eq!(m.symbols(), ["Y", "X", "1", "2", "3", "-", "$", "+"]);
    assert_eq!(m.state_name(m.start()), "q1-4");
    assert_eq!(m.symbol_name(m.blank()), "Y");
    for name in ["q1-1", "q5-V3", "q5-K3", "q1-C3", "q9-4"] {
        assert!(m.state_index(name).is_some(), "{name}");
    }
}

#[test]
fn rejects_bad_params() {
    assert!(generate(FriedmanParams::new(1, 0)).is_err());
    assert!(generate(FriedmanParams::new(3, 2)).is_err());
}

#[test]
fn excluded_entries_stay_undefined() {
    let m = machine(3, 0);
    let q = m.state_index("q1-1").unwrap();
    let three = m.symbol_index("3").unwrap();
    assert!(m.action(q, three).is_none());
    let q = m.state_index("q1-2").unwrap();
    assert!(m.action(q, m.symbol_index("X").unwrap()).is_none());
}

#[test]
fn counter_encoding_example() {
    let cells = ["-", "-", "1", "2", "2", "3", "3", "3", "3"];
    assert_eq!(decode_counters(&cells), (7, 9, 4, 6));
}

#[test]
fn blank_tape_is_not_wellformed() {
    let m = machine(2, 0);
    let c = Configuration::initial(m.blank(), m.start());
    assert!(!decode_segments(&m, &c).wellformed);
}

#[test]
fn after_initialisation() {
    for delta in 0..=1 {
        let m = machine(2, delta);
        let (ms, _) = milestones(&m, 1, 10_000);
        assert_eq!(ms[0], Milestone { n: 2, word: "11".into(), lmax: 0 });
    }
    let refm = reference_algorithm_milestones(2, 1);
    assert_eq!(refm[0].word, "11");
}

#[test]
fn reference_orders_words() {
    let firsts: Vec<String> = reference_algorithm_milestones(2, 12)
        .into_iter()
        .filter(|m| m.n == 4 && m.lmax == 0)
        .map(|m| m.word)
        .collect();
    assert_eq!(firsts, ["1111", "1112", "1121", "1122"]);
}

#[test]
fn reference_stops_where_all_words_violate() {
    let all = reference_algorithm_milestones(2, usize::MAX);
    let last = all.last().unwrap();
    assert_eq!((last.n, last.word.as_str()), (12, "222222222222"));
    // Every length-10 survivor satisfies the property; nothing of length 12 does.
    for w in all.windows(2) {
        if w[1].n != w[0].n {
            let s = Word::parse(2, &w[0].word).unwrap();
            assert!(satisfies_star(&s).holds(), "{}", w[0].word);
        }
    }
}

#[test]
fn reference_repeats_match_least_violation() {
    let all = reference_algorithm_milestones(2, 3000);
    let mut i = 0;
    while i < all.len() {
        let j = (i..all.len()).find(|&j| all[j].word != all[i].word).unwrap_or(all.len());
        if j == all.len() {
            break;
        }
        let s = Word::parse(2, &all[i].word).unwrap();
        let expect = match satisfies_star(&s) {
            Verdict::Satisfies => s.len() / 2 + 1,
            Verdict::Violates { i, .. } => i,
        };
        assert_eq!(j - i, expect, "{}", all[i].word);
        i = j;
    }
}

#[test]
fn milestones_agree_with_reference() {
    for k in [2, 3] {
        for delta in 0..=1 {
            let m = machine(k, delta);
            let (ms, _) = milestones(&m, 50, 1_000_000_000);
            assert_eq!(ms.len(), 50);
            assert_eq!(ms, reference_algorithm_milestones(k, 50), "k={k} delta={delta}");
        }
    }
}

#[test]
fn wellformed_views_keep_marker_order() {
    let m = machine(3, 0);
    let x = m.symbol_index("X").unwrap();
    let mut seen = 0;
    let mut obs = |_: &StepEvent, c: &Configuration| {
        let v = decode_segments(&m, c);
        if v.wellformed {
            seen += 1;
            let xs = c.tape.non_blank().values().filter(|&&e| e == x).count();
            assert_eq!(xs, 1);
            assert!(v.i <= v.imax && v.l <= v.lmax && v.lmax <= v.imax);
        }
        true
    };
    run_observed(&m, Configuration::initial(m.blank(), m.start()), 20_000, &mut obs);
    assert!(seen > 1000);
}

#[test]
fn k2_halts() {
    let m = machine(2, 0);
    let r = run(&m, 1_000_000_000_000);
    assert_eq!(r.outcome, Outcome::Halted);
    assert_eq!(r.steps, K2_HALT_STEPS);
    let r = run(&m, 1_000_000);
    assert_eq!(r.outcome, Outcome::BudgetExhausted);
    let m = machine(2, 1);
    let r = run(&m, 1_000_000_000_000);
    assert_eq!((r.outcome, r.steps), (Outcome::Halted, K2_HALT_STEPS_X_FREE));
}

#[test]
fn k2_last_milestone_is_all_twos() {
    let m = machine(2, 0);
    let (ms, outcome) = milestones(&m, usize::MAX, u128::MAX);
    assert_eq!(outcome, Outcome::Halted);
    let refm = reference_algorithm_milestones(2, usize::MAX);
    assert_eq!(ms, refm);
}

#[test]
fn k3_runs_without_undefined_entries() {
    for delta in 0..=1 {
        let r = run(&machine(3, delta), 10_000_000);
        assert_eq!(r.outcome, Outcome::BudgetExhausted);
    }
}
