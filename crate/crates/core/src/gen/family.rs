//! State tables of the long-finite-sequences machines.
//!
//! Tape layout: `…Y [I] Y [II] X [III] Y…` with blank `Y`.
//! Segment I holds the unary counters `i` and `l`, segment II the current
//! word `s` (letters `1..k`, or their primed forms while a copy is in
//! progress), segment III the trimmed copies `s^(i)` separated by `+`.
//! States are named `q<line>-<n>` after the step of the search loop they
//! implement.

use crate::tm::Dir::{L, R};

use super::table::{put, same, Put, Row, Sel};

pub(crate) fn letter(h: usize) -> String {
    h.to_string()
}

/// Primed letters: `-`, `$`, `+` for 1', 2', 3', then `4'`, `5'`, ….
pub(crate) fn prime(h: usize) -> String {
    match h {
        1 => "-".into(),
        2 => "$".into(),
        3 => "+".into(),
        _ => format!("{h}'"),
    }
}

/// `Y X 1..max(k,3) - $ + 4'..k'`. For `k = 2` the symbol `3` stays: segment I
/// uses it for `i = 1, l = 1`.
pub(crate) fn symbols(k: usize) -> Vec<String> {
    let top = k.max(3);
    let mut v = vec!["Y".to_string(), "X".to_string()];
    v.extend((1..=top).map(letter));
    v.extend((1..=top).map(prime));
    v
}

/// Rows for the marker-based machine (`X` present).
pub(crate) fn rows_with_marker(k: usize) -> Vec<Row> {
    let letters: Vec<String> = (1..=k).map(letter).collect();
    let mut rows = Vec::new();

    // 1. Copy s from II to III, N/2 times, separated by +.
    rows.push(
        Row::new("q1-1")
            .on(&["-"], put("1"), R, "q1-2")
            .on(&["$", "+"], put("2"), R, "q1-2")
            .on(&["1", "2"], same(), R, "q1-1")
            .on(&["Y"], same(), R, "q2-1"),
    );
    rows.push(
        Row::new("q1-2")
            .on(&["Y"], same(), R, "q1-4")
            .star_except(&["X"], same(), R, "q1-2"),
    );
    let mut q14 = Row::new("q1-4");
    for h in 1..=k {
        q14 = q14.on(&[prime(h)], put(letter(h)), R, &format!("q1-C{h}"));
    }
    q14 = q14
        .on(&letters, same(), R, "q1-4")
        .on(&["X"], same(), R, "q1-7")
        // Initialisation only: the empty tape gets its X.
        .on(&["Y"], put("X"), R, "q3-1");
    rows.push(q14);
    for h in 1..=k {
        let name = format!("q1-C{h}");
        rows.push(
            Row::new(name.clone())
                .on(&["Y"], put(letter(h)), L, "q1-6")
                .star(same(), R, &name),
        );
    }
    rows.push(
        Row::new("q1-6")
            .on(&["Y"], same(), R, "q1-4")
            .star(same(), L, "q1-6"),
    );
    rows.push(
        Row::new("q1-7")
            .on(&["Y"], put("+"), L, "q1-9")
            .star_except(&["$", "X"], same(), R, "q1-7"),
    );
    rows.push(
        Row::new("q1-9")
            .on(&["X"], put("X"), L, "q1-10")
            // Absorbed from the tail of step 9.
            .on(&["Y", "-"], put("X"), L, "q1-10")
            .star_except(&["$"], same(), L, "q1-9"),
    );
    let mut q110 = Row::new("q1-10");
    for h in 1..=k {
        q110 = q110.on(&[letter(h)], put(prime(h)), L, "q1-10");
    }
    rows.push(
        q110.on(&["Y"], same(), L, "q1-11")
            .star_except(&["$"], same(), L, "q1-10"),
    );
    rows.push(
        Row::new("q1-11")
            .on(&["Y"], same(), R, "q1-1")
            .star(same(), L, "q1-11"),
    );

    // 2. Cut away the left triangle in III.
    rows.push(
        Row::new("q2-1")
            .on(&["Y"], same(), L, "q2-2")
            .star(same(), R, "q2-1"),
    );
    rows.push(
        Row::new("q2-2")
            .on(&["X"], same(), R, "q3-1")
            .on(&["+"], put("$"), R, "q2-3")
            .star_except(&["Y"], same(), L, "q2-2"),
    );
    rows.push(
        Row::new("q2-3")
            .on(&letters, put("-"), R, "q2-4")
            .on(&["Y"], same(), L, "q2-2")
            .on(&["-"], same(), R, "q2-3"),
    );
    rows.push(
        Row::new("q2-4")
            .on(&["-"], put("-"), R, "q2-3")
            .on(&["Y"], same(), L, "q2-2")
            .star_except(&["+", "X"], same(), R, "q2-4"),
    );

    // 3. Cut away the double right triangle in III.
    rows.push(
        Row::new("q3-1")
            .on(&["$"], put("+"), R, "q3-5")
            .on(&["Y"], same(), L, "q4-1")
            .star_except(&["X"], same(), R, "q3-1"),
    );
    rows.push(
        Row::new("q3-5")
            .on(&["Y"], same(), L, "q4-1")
            .on(&["-"], same(), L, "q3-5")
            .on(&["+"], same(), L, "q3-2"),
    );
    rows.push(
        Row::new("q3-2")
            .on(&letters, put("-"), L, "q3-3")
            .star_except(&["X", "Y", "$"], same(), L, "q3-2"),
    );
    rows.push(
        Row::new("q3-3")
            .on(&letters, put("-"), L, "q3-4")
            // Absorbed from step 9: walk right over segment I.
            .on(&["Y"], same(), R, "q9-4")
            .on(&["-"], same(), R, "q3-3"),
    );
    rows.push(
        Row::new("q3-4")
            .on(&["-", "+"], same(), L, "q3-2")
            .on(&["X"], same(), R, "q3-1")
            .star_except(&["Y", "$"], same(), L, "q3-4"),
    );

    // 4. Remove the (i-1) leading patterns in III.
    rows.push(
        Row::new("q4-1")
            .on(&["Y"], same(), L, "q4-2")
            .star(same(), L, "q4-1"),
    );
    rows.push(
        Row::new("q4-2")
            .on(&["$"], put("+"), R, "q4-3")
            .on(&["2"], put("3"), R, "q4-3")
            .on(&["1", "3", "-", "+"], same(), L, "q4-2")
            .on(&["Y"], same(), R, "q5-0"),
    );
    rows.push(
        Row::new("q4-3")
            .on(&["X"], same(), R, "q4-4")
            .star(same(), R, "q4-3"),
    );
    rows.push(
        Row::new("q4-4")
            .on(&["+"], put("-"), L, "q4-1")
            .star_except(&["X", "Y", "$"], put("-"), R, "q4-4"),
    );

    // 5. Check s^(i) against every later pattern.
    rows.push(
        Row::new("q5-0")
            .on(&["X"], same(), R, "q5-1")
            .star(same(), R, "q5-0"),
    );
    let mut q51 = Row::new("q5-1");
    for h in 1..=k {
        q51 = q51.on(&[letter(h)], put("-"), R, &format!("q5-V{h}"));
    }
    rows.push(
        q51.on(&["-"], same(), R, "q5-1")
            .on(&["+"], put("+"), R, "q6-1")
            .on(&["Y"], same(), L, "q6-2"),
    );
    for h in 1..=k {
        let v = format!("q5-V{h}");
        let kk = format!("q5-K{h}");
        rows.push(
            Row::new(v.clone())
                .on(&["-", "+"], same(), R, &kk)
                .on(&["Y"], same(), L, "q5-2")
                .star(same(), R, &v),
        );
        rows.push(
            Row::new(kk.clone())
                .on(&[letter(h)], put("$"), R, &v)
                .on(&["+"], same(), R, &kk)
                .on(&["Y"], same(), L, "q5-2")
                .star(put("-"), R, &kk),
        );
    }
    rows.push(
        Row::new("q5-2")
            .on(&["X"], same(), R, "q5-1")
            .star(same(), L, "q5-2"),
    );

    // 6. Clear III; a surviving $ means a match.
    rows.push(
        Row::new("q6-1")
            .on(&["Y"], same(), L, "q6-2")
            .star(same(), R, "q6-1"),
    );
    rows.push(
        Row::new("q6-2")
            .on(&["$"], put("Y"), L, "q6-3")
            .on(&["X"], same(), L, "q8-0")
            .star(put("Y"), L, "q6-2"),
    );
    rows.push(
        Row::new("q6-3")
            .on(&["X"], same(), L, "q7-1")
            .star(put("Y"), L, "q6-3"),
    );

    // 7. s++ on the primed word; carrying out of the left end halts.
    let mut q71 = Row::new("q7-1");
    for h in 1..k {
        q71 = q71.on(&[prime(h)], put(prime(h + 1)), L, "q7-3");
    }
    rows.push(
        q71.on(&[prime(k)], put(prime(1)), L, "q7-1")
            .on(&["Y"], same(), R, "HALT"),
    );
    rows.push(
        Row::new("q7-3")
            .on(&["Y"], same(), L, "q7-4")
            .star(same(), L, "q7-3"),
    );
    rows.push(
        Row::new("q7-4")
            .on(&["Y"], same(), R, "q1-1")
            .star_except(&["-"], put("-"), L, "q7-4"),
    );

    // 8. i := 0, lmax++.
    rows.push(
        Row::new("q8-0")
            .on(&["Y"], same(), L, "q8-1")
            .star(same(), L, "q8-0"),
    );
    rows.push(
        Row::new("q8-1")
            .on(&["-", "$", "+"], same(), L, "q8-1")
            .on(&["1"], put("-"), L, "q8-1")
            .on(&["2"], put("$"), L, "q8-1")
            .on(&["3"], put("+"), L, "q8-1")
            .on(&["Y"], same(), R, "q8-2"),
    );
    rows.push(
        Row::new("q8-2")
            .on(&["-"], put("$"), L, "q1-11")
            .on(&["Y"], same(), L, "q9-1")
            .star(same(), R, "q8-2"),
    );

    // 9. N/2++, s := 1'^N.
    rows.push(
        Row::new("q9-1")
            .on(&["Y"], put("-"), R, "q3-3")
            .star_except(&["X"], put("-"), L, "q9-1"),
    );
    rows.push(
        Row::new("q9-4")
            .on(&["Y"], put("-"), R, "q1-9")
            .star(put("-"), R, "q9-4"),
    );
    rows
}

/// Rows for the `X`-free machine. The II/III boundary is a blank, so every
/// walk that used to pass over `X` (or stop at it) now counts blanks: the
/// states `q1-C*`, `q1-6`, `q2-1`, `q4-1`, `q4-3`, `q5-0`, `q9-4` get a primed
/// twin meaning "one `Y` already crossed", and `q1-9` gets a twin for entry
/// from the left.
pub(crate) fn rows_without_marker(k: usize) -> Vec<Row> {
    let mut rows: Vec<Row> = rows_with_marker(k).into_iter().map(drop_marker).collect();
    let twin = |s: &str| format!("{s}'");
    let mut replace = |name: &str, new: Vec<Row>| {
        let at = rows.iter().position(|r| r.state == name).expect("row exists");
        rows.splice(at..=at, new);
    };

    replace(
        "q1-4",
        vec![{
            let mut r = Row::new("q1-4");
            for h in 1..=k {
                r = r.on(&[prime(h)], put(letter(h)), R, &format!("q1-C{h}"));
            }
            let letters: Vec<String> = (1..=k).map(letter).collect();
            // End of II; on the empty tape this also starts the initialisation.
            r.on(&letters, same(), R, "q1-4").on(&["Y"], same(), R, "q1-7")
        }],
    );
    for h in 1..=k {
        let name = format!("q1-C{h}");
        replace(
            &name,
            vec![
                Row::new(name.clone())
                    .on(&["Y"], same(), R, &twin(&name))
                    .star(same(), R, &name),
                Row::new(twin(&name))
                    .on(&["Y"], put(letter(h)), L, "q1-6")
                    .star(same(), R, &twin(&name)),
            ],
        );
    }
    replace(
        "q1-6",
        vec![
            Row::new("q1-6").on(&["Y"], same(), L, "q1-6'").star(same(), L, "q1-6"),
            Row::new("q1-6'").on(&["Y"], same(), R, "q1-4").star(same(), L, "q1-6'"),
        ],
    );
    replace(
        "q1-9",
        vec![
            Row::new("q1-9")
                .on(&["Y"], same(), L, "q1-10")
                .star_except(&["$"], same(), L, "q1-9"),
            // Entered from the left at the end of the length step: the blank
            // reached becomes the new boundary.
            Row::new("q1-9'").on(&["Y"], same(), L, "q1-10"),
        ],
    );
    replace(
        "q2-1",
        vec![
            Row::new("q2-1").on(&["Y"], same(), R, "q2-1'").star(same(), R, "q2-1"),
            Row::new("q2-1'").on(&["Y"], same(), L, "q2-2").star(same(), R, "q2-1'"),
        ],
    );
    replace(
        "q4-1",
        vec![
            Row::new("q4-1").on(&["Y"], same(), L, "q4-1'").star(same(), L, "q4-1"),
            Row::new("q4-1'").on(&["Y"], same(), L, "q4-2").star(same(), L, "q4-1'"),
        ],
    );
    replace(
        "q4-3",
        vec![
            Row::new("q4-3").on(&["Y"], same(), R, "q4-3'").star(same(), R, "q4-3"),
            Row::new("q4-3'").on(&["Y"], same(), R, "q4-4").star(same(), R, "q4-3'"),
        ],
    );
    replace(
        "q5-0",
        vec![
            Row::new("q5-0").on(&["Y"], same(), R, "q5-0'").star(same(), R, "q5-0"),
            Row::new("q5-0'").on(&["Y"], same(), R, "q5-1").star(same(), R, "q5-0'"),
        ],
    );
    replace(
        "q9-4",
        vec![
            Row::new("q9-4").on(&["Y"], put("-"), R, "q9-4'").star(put("-"), R, "q9-4"),
            Row::new("q9-4'").on(&["Y"], put("-"), R, "q1-9'"),
        ],
    );
    rows
}

/// Rewrites a row for the `X`-free alphabet: a case on `X` becomes the case
/// on `Y` (the boundary blank) and `X` disappears from exclusion lists.
fn drop_marker(mut row: Row) -> Row {
    let has_x = row
        .cases
        .iter()
        .any(|c| matches!(&c.sel, Sel::Syms(v) if v.iter().any(|s| s == "X")));
    for c in &mut row.cases {
        match &mut c.sel {
            Sel::Syms(v) => {
                if has_x {
                    v.retain(|s| s != "Y");
                }
                for s in v.iter_mut() {
                    if s == "X" {
                        *s = "Y".into();
                    }
                }
            }
            Sel::StarExcept(v) => {
                v.retain(|s| s != "X" && !(has_x && s == "Y"));
            }
            Sel::Star => {}
        }
        if matches!(&c.put, Put::Sym(s) if s == "X") {
            c.put = Put::Same;
        }
    }
    row.cases.retain(|c| !matches!(&c.sel, Sel::Syms(v) if v.is_empty()));
    row
}
