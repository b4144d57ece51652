//! The `fls` front end. [`dispatch`] does the work and reports failures as a
//! [`CliError`] whose [`CliError::exit_code`] the binary returns.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::comb::{n_of_k, satisfies_star, NkResult, Verdict as StarVerdict, Word};
use crate::gen::{decode_segments, generate, FriedmanParams};
use crate::lab::{self, AckValue, Frontier, Preset, Verdict};
use crate::tm::{
    parse_machine, run_from, run_observed, serialize_machine, Configuration, Machine, Outcome,
    SnapshotWriter, StepEvent, TraceWriter, FORMAT_VERSION,
};
use crate::transforms::{Bound, Certificate, Pass, ReducedMachine, CERT_VERSION};

#[derive(Debug, Parser)]
#[command(name = "fls", about = "Turing-machine lab for long finite sequences", disable_version_flag = true)]
pub struct Cli {
    /// Print the program and file-format versions.
    #[arg(short = 'V', long)]
    pub version: bool,
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Worker threads for `nk` and `bb`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the generated search machine for alphabet size k.
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        delta: u8,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a machine from the empty tape.
    Run {
        machine: PathBuf,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u128,
        /// Start as the reduced image of an original run and decode the end tape.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Original head position (with --cert) or raw head position.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        start_pos: i64,
        /// One TSV line per step: step state pos read write dir.
        #[arg(long)]
        trace: bool,
    },
    /// Periodic snapshots of a run.
    Snapshot {
        machine: PathBuf,
        #[arg(long)]
        every: u128,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u128,
        /// Include the tape contents over the support.
        #[arg(long)]
        window: bool,
        /// Decode segments of a generated machine: step N i l lmax word wellformed.
        #[arg(long)]
        decode_segments: bool,
    },
    /// Apply a size reduction.
    Reduce {
        machine: PathBuf,
        #[arg(long)]
        pass: Pass,
        #[arg(long, default_value_t = 2)]
        base: usize,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
    },
    /// Check that a reduced machine reproduces the original's final tape.
    Verify {
        original: PathBuf,
        reduced: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u128,
    },
    /// Longest word over k letters satisfying (*), searched up to max-len.
    Nk {
        #[arg(long)]
        k: u8,
        #[arg(long)]
        max_len: usize,
    },
    /// Check one word for (*).
    Star {
        word: String,
        #[arg(long)]
        k: Option<u8>,
    },
    /// Busy Beaver champion by exhaustive enumeration.
    Bb {
        #[arg(long)]
        states: usize,
        #[arg(long)]
        symbols: usize,
        #[arg(long)]
        cutoff: u64,
        #[arg(long, default_value_t = lab::DEFAULT_MACHINE_LIMIT)]
        limit: u128,
    },
    /// Ackermann value A(f, c) within a bit budget.
    Ack {
        #[arg(long)]
        f: u64,
        #[arg(long)]
        c: u64,
        #[arg(long, default_value_t = 1 << 20)]
        bit_budget: u64,
    },
    /// Count (states, symbols) pairs not settled by known implementations.
    Frontier {
        #[arg(long, conflicts_with = "implementations")]
        preset: Option<String>,
        /// Comma-separated NxM pairs.
        #[arg(long = "impl")]
        implementations: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

type Res = Result<(), CliError>;

fn io(e: std::io::Error) -> CliError {
    CliError::Runtime(format!("write failed: {e}"))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Res {
    fs::write(path, text).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn load_machine(path: &Path) -> Result<Machine, CliError> {
    parse_machine(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_cert(path: &Path) -> Result<Certificate, CliError> {
    Certificate::from_json(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn version_text() -> String {
    format!(
        "fls {} (machine format {FORMAT_VERSION}, certificate format {CERT_VERSION})",
        env!("CARGO_PKG_VERSION")
    )
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Res {
    if cli.version {
        return writeln!(out, "{}", version_text()).map_err(io);
    }
    let Some(cmd) = &cli.command else {
        return Err(CliError::Usage("no subcommand given (see --help)".into()));
    };
    if cli.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    command(cmd, cli.format, &pool, out)
}

fn command(cmd: &Command, fmt: Format, pool: &rayon::ThreadPool, out: &mut dyn Write) -> Res {
    match cmd {
        Command::Gen { k, delta, output } => {
            let m = generate(FriedmanParams::new(*k, *delta)).map_err(|e| CliError::Usage(e.to_string()))?;
            let text = serialize_machine(&m);
            match output {
                None => out.write_all(text.as_bytes()).map_err(io),
                Some(p) => {
                    write_file(p, &text)?;
                    report(out, fmt, &[
                        ("k", json!(k)),
                        ("delta", json!(delta)),
                        ("states", json!(m.n_states())),
                        ("symbols", json!(m.n_symbols())),
                        ("output", json!(p.display().to_string())),
                    ])
                }
            }
        }
        Command::Run { machine, budget, cert, start_pos, trace } => {
            let m = load_machine(machine)?;
            let cert = cert.as_deref().map(load_cert).transpose()?;
            let start = match &cert {
                Some(c) => c.initial(&m, *start_pos).map_err(|e| CliError::Usage(e.to_string()))?,
                None => {
                    let mut c = Configuration::initial(m.blank(), m.start());
                    c.head = *start_pos;
                    c
                }
            };
            let r = if *trace {
                let mut tw = TraceWriter::new(&m, &mut *out);
                let r = run_observed(&m, start, *budget, &mut tw);
                if let Some(e) = tw.error {
                    return Err(io(e));
                }
                r
            } else {
                run_from(&m, start, *budget)
            };
            let tape: Vec<(i64, String)> = r
                .config
                .tape
                .non_blank()
                .into_iter()
                .map(|(p, e)| (p, m.symbol_name(e).to_string()))
                .collect();
            let fields = [
                ("outcome", json!(outcome_name(&r.outcome))),
                ("steps", json!(r.steps.to_string())),
                ("head", json!(r.config.head)),
                ("tape", json!(cells(&tape))),
            ];
            report(out, fmt, &fields)?;
            if let Outcome::UndefinedTransition { state, symbol } = r.outcome {
                return Err(CliError::Runtime(format!(
                    "undefined transition for state {} on symbol {} after {} steps",
                    m.state_name(state),
                    m.symbol_name(symbol),
                    r.steps
                )));
            }
            Ok(())
        }
        Command::Snapshot { machine, every, budget, window, decode_segments: seg } => {
            if *every == 0 {
                return Err(CliError::Usage("--every must be positive".into()));
            }
            let m = load_machine(machine)?;
            let start = Configuration::initial(m.blank(), m.start());
            let r = if *seg {
                writeln!(out, "step\tN\ti\tl\tlmax\tword\twellformed").map_err(io)?;
                let mut err = None;
                let mut obs = |ev: &StepEvent, c: &Configuration| {
                    if !ev.step.is_multiple_of(*every) {
                        return true;
                    }
                    let v = decode_segments(&m, c);
                    let line = format!("{}\t{}\t{}\t{}\t{}\t{}\t{}", ev.step, v.n(), v.i, v.l, v.lmax, v.word, v.wellformed);
                    if let Err(e) = writeln!(out, "{line}") {
                        err = Some(e);
                        return false;
                    }
                    true
                };
                let r = run_observed(&m, start, *budget, &mut obs);
                if let Some(e) = err {
                    return Err(io(e));
                }
                r
            } else {
                let mut sw = SnapshotWriter::new(&m, &mut *out, *every, *window);
                let r = run_observed(&m, start, *budget, &mut sw);
                if let Some(e) = sw.error {
                    return Err(io(e));
                }
                r
            };
            if let Outcome::UndefinedTransition { state, symbol } = r.outcome {
                return Err(CliError::Runtime(format!(
                    "undefined transition for state {} on symbol {} after {} steps",
                    m.state_name(state),
                    m.symbol_name(symbol),
                    r.steps
                )));
            }
            Ok(())
        }
        Command::Reduce { machine, pass, base, output, emit_cert } => {
            let m = load_machine(machine)?;
            let r = pass.apply(&m, *base).map_err(|e| CliError::Runtime(e.to_string()))?;
            write_file(output, &serialize_machine(&r.machine))?;
            if let Some(p) = emit_cert {
                write_file(p, &r.certificate.to_json())?;
            }
            report(out, fmt, &[
                ("pass", json!(pass.name())),
                ("states", json!(r.machine.n_states())),
                ("symbols", json!(r.machine.n_symbols())),
                ("bound_states", json!(r.bound.states)),
                ("bound_symbols", json!(r.bound.symbols)),
                ("within_bound", json!(r.respects_bound())),
                ("output", json!(output.display().to_string())),
            ])
        }
        Command::Verify { original, reduced, cert, budget } => {
            let orig = load_machine(original)?;
            let red = ReducedMachine {
                machine: load_machine(reduced)?,
                certificate: load_cert(cert)?,
                bound: Bound::default(),
            };
            if let Err(e) = red.certificate.initial(&red.machine, 0) {
                return Err(CliError::Usage(e.to_string()));
            }
            let v = lab::verify_simulation(&orig, &red, *budget).map_err(|e| CliError::Usage(e.to_string()))?;
            let (name, detail) = match &v {
                Verdict::Equivalent { original_steps, reduced_steps } => {
                    ("equivalent", format!("{original_steps} original steps, {reduced_steps} reduced steps"))
                }
                Verdict::Diverged(d) => ("diverged", d.clone()),
                Verdict::BudgetExhausted => ("budget-exhausted", String::new()),
            };
            report(out, fmt, &[("verdict", json!(name)), ("detail", json!(detail))])?;
            match v {
                Verdict::Equivalent { .. } => Ok(()),
                Verdict::BudgetExhausted => Err(CliError::Runtime("budget exhausted before both runs stopped".into())),
                Verdict::Diverged(d) => Err(CliError::Internal(format!("reduction diverged: {d}"))),
            }
        }
        Command::Nk { k, max_len } => {
            if *k == 0 || *max_len == 0 {
                return Err(CliError::Usage("need --k >= 1 and --max-len >= 1".into()));
            }
            let r = pool.install(|| n_of_k(*k, *max_len));
            let (text, exact, value) = match &r {
                NkResult::Exact { value, .. } => (format!("n({k}) = {value}"), true, *value),
                NkResult::AtLeast { bound, .. } => (format!("n({k}) >= {bound}"), false, *bound),
            };
            match fmt {
                Format::Human => writeln!(out, "{text}\nwitness {}", r.witness()).map_err(io),
                _ => report(out, fmt, &[
                    ("k", json!(k)),
                    ("exact", json!(exact)),
                    ("value", json!(value)),
                    ("witness", json!(r.witness().to_string())),
                ]),
            }
        }
        Command::Star { word, k } => {
            let k = k.unwrap_or_else(|| word.bytes().map(|b| b.saturating_sub(b'0')).max().unwrap_or(1).max(1));
            let w = Word::parse(k, word).map_err(|e| CliError::Usage(e.to_string()))?;
            let (holds, pair) = match satisfies_star(&w) {
                StarVerdict::Satisfies => (true, None),
                StarVerdict::Violates { i, j } => (false, Some((i, j))),
            };
            match (fmt, pair) {
                (Format::Human, None) => writeln!(out, "{word}: satisfies (*)").map_err(io),
                (Format::Human, Some((i, j))) => writeln!(out, "{word}: violates (*) at (i, j) = ({i}, {j})").map_err(io),
                _ => report(out, fmt, &[("word", json!(word)), ("satisfies", json!(holds)), ("pair", json!(pair))]),
            }
        }
        Command::Bb { states, symbols, cutoff, limit } => {
            let r = pool
                .install(|| lab::bb_enumerate(*states, *symbols, *cutoff, *limit))
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            report(out, fmt, &[
                ("states", json!(r.n)),
                ("symbols", json!(r.m)),
                ("cutoff", json!(r.cutoff)),
                ("champion_steps", json!(r.champion_steps)),
                ("machines", json!(r.total.to_string())),
                ("halting", json!(r.halting.to_string())),
                ("cutoff_exceeded", json!(r.cutoff_exceeded.to_string())),
            ])?;
            if fmt == Format::Human {
                write!(out, "{}", serialize_machine(&r.champion)).map_err(io)?;
            }
            Ok(())
        }
        Command::Ack { f, c, bit_budget } => {
            if *f == 0 || *c == 0 {
                return Err(CliError::Usage("need --f >= 1 and --c >= 1".into()));
            }
            match lab::ackermann(*f, *c, *bit_budget) {
                AckValue::Exact(v) => {
                    let digits = v.to_string();
                    report(out, fmt, &[
                        ("f", json!(f)),
                        ("c", json!(c)),
                        ("bits", json!(v.bits())),
                        ("value", json!(digits)),
                    ])
                }
                AckValue::Overflow { f: at_f, c: at_c } => report(out, fmt, &[
                    ("f", json!(f)),
                    ("c", json!(c)),
                    ("overflow", json!(format!("A({at_f},{at_c}) exceeds {bit_budget} bits"))),
                ]),
            }
        }
        Command::Frontier { preset, implementations } => {
            let (frontier, quoted) = match (preset, implementations) {
                (Some(p), None) => {
                    let p: Preset = p.parse().map_err(CliError::Usage)?;
                    (p.frontier(), Some(p.quoted_total()))
                }
                (None, Some(s)) => (s.parse::<Frontier>().map_err(|e| CliError::Usage(e.to_string()))?, None),
                _ => return Err(CliError::Usage("give --preset or --impl".into())),
            };
            let c = lab::frontier_count(&frontier).map_err(|e| CliError::Usage(e.to_string()))?;
            match fmt {
                Format::Json => {
                    let v = json!({ "total": c.total, "bands": c.bands, "quoted_total": quoted });
                    writeln!(out, "{v}").map_err(io)
                }
                _ => {
                    writeln!(out, "{c}").map_err(io)?;
                    if let Some(q) = quoted {
                        writeln!(out, "quoted\t\t{q}\ndelta\t\t{}", c.total as i64 - q as i64).map_err(io)?;
                    }
                    Ok(())
                }
            }
        }
    }
}

fn outcome_name(o: &Outcome) -> &'static str {
    match o {
        Outcome::Halted => "halted",
        Outcome::BudgetExhausted => "budget-exhausted",
        Outcome::UndefinedTransition { .. } => "undefined-transition",
        Outcome::Interrupted => "interrupted",
    }
}

fn cells(tape: &[(i64, String)]) -> String {
    tape.iter().map(|(p, s)| format!("{p}:{s}")).collect::<Vec<_>>().join(" ")
}

/// Key/value output: aligned lines, one TSV header+row, or a JSON object.
fn report(out: &mut dyn Write, fmt: Format, fields: &[(&str, serde_json::Value)]) -> Res {
    let plain = |v: &serde_json::Value| match v {
        serde_json::Value::String(s) => s.clone(),
        v => v.to_string(),
    };
    match fmt {
        Format::Human => {
            for (k, v) in fields {
                writeln!(out, "{k:<16}{}", plain(v)).map_err(io)?;
            }
        }
        Format::Tsv => {
            let keys: Vec<&str> = fields.iter().map(|f| f.0).collect();
            let vals: Vec<String> = fields.iter().map(|f| plain(&f.1)).collect();
            writeln!(out, "{}\n{}", keys.join("\t"), vals.join("\t")).map_err(io)?;
        }
        Format::Json => {
            let obj: serde_json::Map<String, serde_json::Value> =
                fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            writeln!(out, "{}", serde_json::Value::Object(obj)).map_err(io)?;
        }
    }
    Ok(())
}
