use serde::Serialize;

use crate::tm::{run, run_from, Machine, Outcome};
use crate::transforms::{CertError, ReducedMachine};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equivalent { original_steps: u128, reduced_steps: u128 },
    Diverged(String),
    BudgetExhausted,
}

/// Runs the original from the empty tape and the reduced machine from its
/// matching start, each for at most `budget` steps, then compares the
/// decoded final tape with the original one.
pub fn verify_simulation(
    original: &Machine,
    reduced: &ReducedMachine,
    budget: u128,
) -> Result<Verdict, CertError> {
    let a = run(original, budget);
    let b = run_from(&reduced.machine, reduced.initial(0), budget);
    let stopped = |o: &Outcome| matches!(o, Outcome::Halted | Outcome::UndefinedTransition { .. });
    if !stopped(&a.outcome) || !stopped(&b.outcome) {
        return Ok(Verdict::BudgetExhausted);
    }
    match (&a.outcome, &b.outcome) {
        (Outcome::Halted, Outcome::Halted) => {}
        (Outcome::UndefinedTransition { .. }, Outcome::UndefinedTransition { .. }) => {
            return Ok(Verdict::Equivalent { original_steps: a.steps, reduced_steps: b.steps });
        }
        (x, y) => return Ok(Verdict::Diverged(format!("original {x:?}, reduced {y:?}"))),
    }
    let decoded = reduced.certificate.decode(original, &reduced.machine, &b.config.tape, 0)?;
    let want = a.config.tape.non_blank();
    if decoded != want {
        let cell = decoded
            .keys()
            .chain(want.keys())
            .copied()
            .filter(|p| decoded.get(p) != want.get(p))
            .min()
            .expect("maps differ");
        let show = |v: Option<&usize>| v.map_or("blank".to_string(), |&e| original.symbol_name(e).to_string());
        return Ok(Verdict::Diverged(format!(
            "cell {cell}: original {}, decoded {}",
            show(want.get(&cell)),
            show(decoded.get(&cell))
        )));
    }
    Ok(Verdict::Equivalent { original_steps: a.steps, reduced_steps: b.steps })
}
