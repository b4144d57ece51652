use proptest::prelude::*;

use super::*;
use crate::tm::{
    example_machine, machine_from_rows, run, run_from, run_observed, Dir, MachineBuilder, Next,
    Outcome, StepEvent,
};

/// Row as `(pos, state, read, next, write, dir)`.
type Row = (i64, String, String, String, String, Dir);

fn trace(m: &Machine, c: Configuration, limit: u128) -> (Vec<Row>, Outcome, Configuration) {
    let mut rows = Vec::new();
    let mut obs = |ev: &StepEvent, _: &Configuration| {
        let next = match ev.action.next {
            Next::Halt => "HALT".to_string(),
            Next::State(q) => m.state_name(q).to_string(),
        };
        rows.push((
            ev.pos,
            m.state_name(ev.state).to_string(),
            m.symbol_name(ev.read).to_string(),
            next,
            m.symbol_name(ev.action.write).to_string(),
            ev.action.dir,
        ));
        true
    };
    let r = run_observed(m, c, limit, &mut obs);
    (rows, r.outcome, r.config)
}

fn row(pos: i64, q: &str, e: &str, q2: &str, e2: &str, d: Dir) -> Row {
    (pos, q.into(), e.into(), q2.into(), e2.into(), d)
}

/// Runs both machines from the empty tape and compares decoded tapes.
fn co_simulate(orig: &Machine, red: &ReducedMachine, budget: u128) -> Result<u128, String> {
    let a = run(orig, budget);
    let b = run_from(&red.machine, red.initial(0), budget * 1000);
    if a.outcome != Outcome::Halted {
        return Err(format!("original {:?}", a.outcome));
    }
    if b.outcome != Outcome::Halted {
        return Err(format!("reduced {:?}", b.outcome));
    }
    let decoded = red
        .certificate
        .decode(orig, &red.machine, &b.config.tape, 0)
        .map_err(|e| e.to_string())?;
    if decoded != a.config.tape.non_blank() {
        return Err(format!("{decoded:?} != {:?}", a.config.tape.non_blank()));
    }
    Ok(b.steps)
}

#[test]
fn size_helpers() {
    assert_eq!(digits_needed(8, 2), 3);
    assert_eq!(digits_needed(9, 2), 4);
    assert_eq!(digits_needed(9, 3), 2);
    assert_eq!(digits_needed(1, 2), 1);
    assert_eq!(digits_needed(16, 3), 3);
    assert_eq!(geometric(2, 3), 7);
    assert_eq!(geometric(3, 2), 4);
    assert_eq!(to_digits(15, 3, 3), vec![1, 2, 0]);
    assert_eq!(to_digits(7, 3, 3), vec![0, 2, 1]);
}

#[test]
fn rank_round_trip() {
    let m = example_machine().with_start(2);
    let ranks: Vec<usize> = (0..4).map(|q| rank(&m, q)).collect();
    assert_eq!(ranks, vec![2, 3, 1, 4]);
    for q in 0..4 {
        assert_eq!(unrank(&m, rank(&m, q)), q);
    }
}

// Substate totals. The oracle expands the closed forms by hand.
#[test]
fn substate_totals() {
    let est = |k, b, l| estimate_substates(&SubstateProfile::search_machine(k, 0, b, l)).unwrap();
    for k in 2..8 {
        assert_eq!(est(k, 2, 3), 343 + 51 * k);
        assert_eq!(est(k, 2, 4), 582 + 85 * k);
        assert_eq!(est(k, 3, 2), 189 + 27 * k);
    }
    assert_eq!(est(3, 2, 3), 496);
    assert_eq!(est(4, 2, 4), 922);
    assert_eq!(est(3, 3, 2), 270);
    assert!(estimate_substates(&SubstateProfile::search_machine(3, 0, 1, 2)).is_err());
}

#[test]
fn symbols_example_bound_and_equivalence() {
    let m = example_machine();
    let r = reduce_symbols(&m, 2).unwrap();
    assert_eq!(r.bound.states, 4 * (1 + 3 + 4 * 2));
    assert_eq!(r.bound.symbols, 2);
    assert!(r.respects_bound(), "{}", r.machine.n_states());
    co_simulate(&m, &r, 100).unwrap();
}

#[test]
fn symbols_with_wide_base_is_isomorphic() {
    let m = example_machine();
    let r = reduce_symbols(&m, 4).unwrap();
    assert_eq!(r.machine.n_states(), m.n_states());
    assert_eq!(r.machine.n_symbols(), 4);
    assert_eq!(r.machine.defined_count(), m.defined_count());
    let steps = co_simulate(&m, &r, 100).unwrap();
    assert_eq!(steps, 4);
}

#[test]
fn symbols_generated_machine_bound() {
    let m = crate::gen::generate(crate::gen::FriedmanParams::new(3, 0)).unwrap();
    let r = reduce_symbols(&m, 2).unwrap();
    // n·[(l-1) + (2^l - 1) + m·2(l-1)] with n = 44, m = 8, l = 3.
    assert_eq!(r.bound.states, 44 * (2 + 7 + 8 * 2 * 2));
    assert!(r.machine.n_states() as u64 <= 2 * 9 * 44 * 3);
    assert!(r.respects_bound());
    // Same behaviour over a stretch of the run: decoded tapes agree.
    let a = run(&m, 2000);
    let mut c = r.initial(0);
    let mut steps = 0;
    let leaf_entries = r.machine.states().iter().filter(|s| s.ends_with("/r")).count();
    assert_eq!(leaf_entries, 44);
    while steps < 2000 {
        let rr = run_from(&r.machine, c, 1);
        c = rr.config;
        if r.machine.state_name(c.state).ends_with("/r") {
            steps += 1;
        }
    }
    let decoded = r.certificate.decode(&m, &r.machine, &c.tape, 0).unwrap();
    assert_eq!(decoded, a.config.tape.non_blank());
}

#[test]
fn three_states_example() {
    let m = example_machine();
    let r = reduce_states_3(&m).unwrap();
    assert_eq!(r.machine.n_states(), 3);
    assert_eq!(r.bound.symbols, 60);
    assert_eq!(r.machine.n_symbols(), 60);
    co_simulate(&m, &r, 100).unwrap();
}

#[test]
fn three_states_immediate_halt() {
    let m = machine_from_rows(&["a"], &["0", "1"], "0", "a", &[("a", "0", "HALT", "0", Dir::R)])
        .unwrap();
    let r = reduce_states_3(&m).unwrap();
    let out = run_from(&r.machine, r.initial(0), 100);
    assert_eq!(out.outcome, Outcome::Halted);
    assert!(r.certificate.decode(&m, &r.machine, &out.config.tape, 0).unwrap().is_empty());
}

#[test]
fn three_states_single_round_for_first_state() {
    // b -> a (rank 1): one send, one receive, release, expand.
    let m = machine_from_rows(
        &["a", "b"],
        &["0", "1"],
        "0",
        "b",
        &[("b", "0", "a", "1", Dir::R), ("a", "0", "HALT", "1", Dir::R)],
    )
    .unwrap();
    let r = reduce_states_3(&m).unwrap();
    let (rows, outcome, _) = trace(&r.machine, r.initial(0), 100);
    assert_eq!(outcome, Outcome::Halted);
    // rank(b) = 1, rank(a) = 2: [2,X,0] sends towards R after writing.
    let tail: Vec<_> = rows.iter().skip(2).cloned().collect();
    assert_eq!(
        tail,
        vec![
            row(0, "qX", "[1,X,0]", "qR", "[1,R,1]", Dir::R),
            row(1, "qR", "[0,X,0]", "qX", "[1,X,0]", Dir::L),
            row(0, "qX", "[1,R,1]", "qR", "[0,R,1]", Dir::R),
            row(1, "qR", "[1,X,0]", "qX", "[2,X,0]", Dir::L),
            row(0, "qX", "[0,R,1]", "qX", "[0,X,1]", Dir::R),
            row(1, "qX", "[2,X,0]", "HALT", "[0,X,1]", Dir::R),
        ]
    );
}

fn digit_example() -> Machine {
    let mut b = MachineBuilder::new();
    for q in 0..16 {
        b.state(&q.to_string()).unwrap();
    }
    for e in 0..7 {
        b.symbol(&format!("e{e}")).unwrap();
    }
    let add = |b: &mut MachineBuilder, q: usize, e: usize, q2: usize, e2: usize, dir: Dir| {
        b.add(q, e, crate::tm::Action { next: Next::State(q2), write: e2, dir }).unwrap();
    };
    add(&mut b, 7, 1, 15, 2, Dir::L);
    add(&mut b, 15, 3, 4, 5, Dir::R);
    add(&mut b, 4, 2, 8, 6, Dir::L);
    b.set_blank(0).set_start(0);
    b.build().unwrap()
}

#[test]
fn base_three_digit_trace() {
    let m = digit_example();
    let r = reduce_states_2b1(&m, 3).unwrap();
    let rm = &r.machine;
    let mut c = Configuration::initial(rm.blank(), rm.state_index("qX").unwrap());
    c.head = 102;
    let s = |name: &str| rm.symbol_index(name).unwrap_or_else(|| panic!("{name}"));
    c.tape.set(101, s("[-,-,e3]"));
    c.tape.set(102, s("[021,-,e1]"));
    c.tape.set(103, s("[-,-,e4]"));
    let (rows, outcome, _) = trace(rm, c, 15);
    assert_eq!(outcome, Outcome::BudgetExhausted);
    use Dir::{L, R};
    let expect = vec![
        row(102, "qX", "[021,-,e1]", "qL1", "[20,L,e2]", L),
        row(101, "qL1", "[-,-,e3]", "qX", "[1,-,e3]", R),
        row(102, "qX", "[20,L,e2]", "qL2", "[0,L,e2]", L),
        row(101, "qL2", "[1,-,e3]", "qX", "[12,-,e3]", R),
        row(102, "qX", "[0,L,e2]", "qL0", "[-,L,e2]", L),
        row(101, "qL0", "[12,-,e3]", "qX", "[120,-,e3]", R),
        row(102, "qX", "[-,L,e2]", "qX", "[-,-,e2]", L),
        row(101, "qX", "[120,-,e3]", "qR1", "[01,R,e5]", R),
        row(102, "qR1", "[-,-,e2]", "qX", "[1,-,e2]", L),
        row(101, "qX", "[01,R,e5]", "qR1", "[0,R,e5]", R),
        row(102, "qR1", "[1,-,e2]", "qX", "[11,-,e2]", L),
        row(101, "qX", "[0,R,e5]", "qR0", "[-,R,e5]", R),
        row(102, "qR0", "[11,-,e2]", "qX", "[011,-,e2]", L),
        row(101, "qX", "[-,R,e5]", "qX", "[-,-,e5]", R),
        // 8 = (022)_3 leaves leftwards, most significant digit first.
        row(102, "qX", "[011,-,e2]", "qL0", "[22,L,e6]", L),
    ];
    assert_eq!(rows, expect);
}

#[test]
fn base_two_example_bound() {
    let m = example_machine();
    let r = reduce_states_2b1(&m, 2).unwrap();
    assert_eq!(r.machine.n_states(), 5);
    assert_eq!(r.bound.symbols, (4 * 3 + 2 + 3) * 4);
    assert!(r.respects_bound());
    co_simulate(&m, &r, 100).unwrap();
}

#[test]
fn base_single_digit() {
    let m = example_machine();
    let r = reduce_states_2b1(&m, 4).unwrap();
    assert_eq!(r.machine.n_states(), 9);
    assert!(r.respects_bound());
    co_simulate(&m, &r, 100).unwrap();
}

#[test]
fn two_states_sizes() {
    let m = example_machine();
    let s = reduce_states_2_seeded(&m).unwrap();
    assert_eq!((s.machine.n_states(), s.machine.n_symbols()), (2, 100));
    let e = reduce_states_2_empty(&m).unwrap();
    assert_eq!((e.machine.n_states(), e.machine.n_symbols()), (2, 120));
    assert!(s.respects_bound() && e.respects_bound());
}

#[test]
fn two_states_seeded_example() {
    let m = example_machine();
    let r = reduce_states_2_seeded(&m).unwrap();
    let out = run_from(&r.machine, r.initial(1), 10_000);
    assert_eq!(out.outcome, Outcome::Halted);
    let tape: Vec<_> = r.certificate.decode(&m, &r.machine, &out.config.tape, 1).unwrap().into_iter().collect();
    assert_eq!(tape, vec![(1, 3), (2, 2)]);
}

#[test]
fn two_states_seeded_immediate_halt() {
    let m = machine_from_rows(&["a"], &["0"], "0", "a", &[("a", "0", "HALT", "0", Dir::R)]).unwrap();
    let r = reduce_states_2_seeded(&m).unwrap();
    let out = run_from(&r.machine, r.initial(0), 10);
    assert_eq!((out.outcome, out.steps), (Outcome::Halted, 1));
}

#[test]
fn two_states_empty_tape_trace() {
    let m = example_machine();
    let r = reduce_states_2_empty(&m).unwrap();
    let (rows, outcome, end) = trace(&r.machine, r.initial(1), 10_000);
    assert_eq!(outcome, Outcome::Halted);
    use Dir::{L, R};
    let mut expect = Vec::new();
    for c in 0..5 {
        expect.push(row(1, "R", &format!("[{c},{},0]", if c == 0 { "-" } else { "Rnew" }), "L", &format!("[{},Rnew,0]", c + 1), L));
        expect.push(row(0, "L", &format!("[{c},{},0]", if c == 0 { "-" } else { "Lnew" }), "R", &format!("[{},Lnew,0]", c + 1), R));
    }
    expect.extend([
        row(1, "R", "[5,Rnew,0]", "L", "[1,Lold,1]", L),
        row(0, "L", "[5,Lnew,0]", "R", "[1,Lnew,0]", R),
        row(1, "R", "[1,Lold,1]", "L", "[0,Lold,1]", L),
        row(0, "L", "[1,Lnew,0]", "R", "[2,Lnew,0]", R),
        row(1, "R", "[0,Lold,1]", "R", "[0,-,1]", L),
        row(0, "R", "[2,Lnew,0]", "R", "[2,Rold,2]", R),
        row(1, "R", "[0,-,1]", "L", "[1,Rnew,1]", L),
        row(0, "L", "[2,Rold,2]", "R", "[1,Rold,2]", R),
        row(1, "R", "[1,Rnew,1]", "L", "[2,Rnew,1]", L),
        row(0, "L", "[1,Rold,2]", "R", "[0,Rold,2]", R),
        row(1, "R", "[2,Rnew,1]", "L", "[3,Rnew,1]", L),
        row(0, "L", "[0,Rold,2]", "L", "[0,-,2]", R),
        row(1, "L", "[3,Rnew,1]", "R", "[3,Rold,3]", R),
        row(2, "R", "[0,-,0]", "L", "[1,Rnew,0]", L),
        row(1, "L", "[3,Rold,3]", "R", "[2,Rold,3]", R),
        row(2, "R", "[1,Rnew,0]", "L", "[2,Rnew,0]", L),
        row(1, "L", "[2,Rold,3]", "R", "[1,Rold,3]", R),
        row(2, "R", "[2,Rnew,0]", "L", "[3,Rnew,0]", L),
        row(1, "L", "[1,Rold,3]", "R", "[0,Rold,3]", R),
        row(2, "R", "[3,Rnew,0]", "L", "[4,Rnew,0]", L),
        row(1, "L", "[0,Rold,3]", "L", "[0,-,3]", R),
        row(2, "L", "[4,Rnew,0]", "HALT", "[0,-,0]", L),
    ]);
    assert_eq!(rows, expect);
    let tape: Vec<_> = r.certificate.decode(&m, &r.machine, &end.tape, 1).unwrap().into_iter().collect();
    assert_eq!(tape, vec![(1, 3), (2, 2)]);
}

#[test]
fn two_states_empty_needs_first_move() {
    let m = machine_from_rows(&["a"], &["0", "1"], "0", "a", &[("a", "1", "HALT", "0", Dir::R)]).unwrap();
    assert_eq!(reduce_states_2_empty(&m).unwrap_err(), TransformError::NoFirstMove);
}

#[test]
fn certificate_json_round_trip() {
    let m = example_machine();
    for pass in Pass::all() {
        let r = pass.apply(&m, 2).unwrap();
        let back = Certificate::from_json(&r.certificate.to_json()).unwrap();
        assert_eq!(back, r.certificate);
        assert_eq!(pass.name().parse::<Pass>().unwrap(), pass);
    }
    let mut c = reduce_states_3(&m).unwrap().certificate;
    c.version = 99;
    assert!(Certificate::from_json(&c.to_json()).is_err());
}

#[test]
fn decoding_initial_tape_gives_empty_tape() {
    let m = example_machine();
    for pass in Pass::all() {
        let r = pass.apply(&m, 3).unwrap();
        let c = r.initial(0);
        assert!(r.certificate.decode(&m, &r.machine, &c.tape, 0).unwrap().is_empty(), "{}", pass.name());
    }
}

fn arb_machine() -> impl Strategy<Value = Machine> {
    (1usize..=4, 2usize..=3)
        .prop_flat_map(|(n, m)| {
            let entry = (0..=n, 0..m, any::<bool>());
            (Just(n), Just(m), prop::collection::vec(entry, n * m), 0..n)
        })
        .prop_map(|(n, m, entries, start)| {
            let mut b = MachineBuilder::new();
            for q in 0..n {
                b.state(&format!("s{q}")).unwrap();
            }
            for e in 0..m {
                b.symbol(&format!("e{e}")).unwrap();
            }
            for (ix, (next, write, right)) in entries.into_iter().enumerate() {
                let next = if next == n { Next::Halt } else { Next::State(next) };
                let dir = if right { Dir::R } else { Dir::L };
                b.add(ix / m, ix % m, crate::tm::Action { next, write, dir }).unwrap();
            }
            b.set_blank(0).set_start(start);
            b.build().unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn passes_preserve_halting_runs(m in arb_machine(), base in 2usize..=3) {
        prop_assume!(run(&m, 200).halted());
        for pass in Pass::all() {
            let r = pass.apply(&m, base).unwrap();
            prop_assert!(co_simulate(&m, &r, 200).is_ok(), "{}: {:?}", pass.name(), co_simulate(&m, &r, 200));
            if pass != Pass::States2b1 || base == 2 {
                prop_assert!(r.respects_bound(), "{} {:?} {} {}", pass.name(), r.bound, r.machine.n_states(), r.machine.n_symbols());
            }
        }
    }

    #[test]
    fn passes_preserve_non_halting(m in arb_machine()) {
        prop_assume!(!run(&m, 100).halted());
        for pass in Pass::all() {
            let r = pass.apply(&m, 2).unwrap();
            let out = run_from(&r.machine, r.initial(0), 100);
            prop_assert!(!out.halted(), "{}", pass.name());
        }
    }
}
