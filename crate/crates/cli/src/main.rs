use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use tg242::poly::{classify_form, Form, TracePoly};
use tg242::search::{parse_certified, schedule_bound, SearchMode, SearchOptions, SearchOutcome};
use tg242::smallcancel::max_piece_syllables;
use tg242::trace::{trace_poly_exact, trace_poly_mod2, ExactTrace};
use tg242::witness::{bound_check, verify_eveneven, verify_trace_numeric};
use tg242::{filter, trinomial_jset, Error, Word};

#[derive(Parser, Debug)]
#[command(
    name = "tg242",
    version,
    about = "Trace polynomials and word searches for (2,4,2) generalised triangle groups"
)]
struct Cli {
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace polynomial of a word and its form, if any.
    Trace {
        word: String,
        /// Reduce coefficients modulo 2.
        #[arg(long)]
        mod2: bool,
    },
    /// Canonical representative under inversion and y ↦ y⁻¹.
    Canon { word: String },
    /// Balanced form a(−m..m).
    Balanced { word: String },
    /// Odd-coefficient set of (t + 1 + t⁻¹)^m.
    Jset { m: u32 },
    /// Verdicts of the arithmetic filters (always JSON).
    Filter { word: String },
    /// Piece statistics and C6 verdict for W² (always JSON).
    C6 { word: String },
    /// Search for words with trace √2(λ²−1)^m (always JSON lines).
    Search {
        #[arg(long)]
        m: u32,
        #[arg(long, value_parser = ["jset", "c6"])]
        mode: String,
        /// Worker threads; defaults to the number of available cores.
        #[arg(long)]
        threads: Option<usize>,
        /// Log2 of the block size.
        #[arg(long, default_value_t = 20)]
        block_bits: u32,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from the checkpoint file.
        #[arg(long, requires = "checkpoint")]
        resume: bool,
        /// Stop after this many blocks (progress is kept in the checkpoint).
        #[arg(long)]
        stop_after_blocks: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Length bound covered by a certified set of odd m, e.g. "5..31".
    Schedule {
        #[arg(long)]
        certified: String,
    },
    /// Floating-point cross-checks.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Classify a polynomial given as JSON [[unit, root], ...] by ascending degree.
    Classify { poly: String },
}

#[derive(Subcommand, Debug)]
enum WitnessCommand {
    /// Compare the matrix trace with the exact polynomial at λ.
    Trace {
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lambda_im: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Check the even/even matrices U, V, Z for parameters (k, s).
    Eveneven { k: u32, s: u32 },
    /// Largest |τ| on a grid over [−√2, √2].
    Bound {
        word: String,
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
}

type CliResult = Result<(), Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn parse(text: &str) -> Result<Word, Error> {
    text.trim().parse()
}

fn form_json(form: Option<Form>) -> Value {
    match form {
        Some(f) => json!({ "a": f.a, "b": f.b, "c": f.c, "family": f.family.to_string() }),
        None => Value::Null,
    }
}

fn form_text(form: Option<Form>) -> String {
    form.map_or_else(|| "not of form".to_string(), |f| f.to_string())
}

fn emit(value: &Value) {
    println!("{value}");
}

fn run(cli: Cli) -> CliResult {
    let json = cli.json;
    match cli.command {
        Command::Trace { word, mod2 } => {
            let w = parse(&word)?;
            let (text, pairs, form) = if mod2 {
                let p = trace_poly_mod2(&w);
                (p.to_string(), p.to_json_pairs(), None)
            } else {
                match trace_poly_exact(&w) {
                    ExactTrace::Small(p) => (p.to_string(), p.to_json_pairs(), classify_form(&p)),
                    ExactTrace::Big(p) => (p.to_string(), p.to_json_pairs(), classify_form(&p)),
                }
            };
            if json {
                emit(
                    &json!({ "word": w.to_string(), "mod2": mod2, "trace": text, "coeffs": pairs, "form": form_json(form) }),
                );
            } else {
                println!("{text}");
                println!("form: {}", form_text(form));
            }
        }
        Command::Canon { word } => {
            let c = parse(&word)?.to_search_normal_form()?.canonicalize()?;
            if json {
                emit(&json!({ "word": word.trim(), "canonical": c.to_string() }));
            } else {
                println!("{c}");
            }
        }
        Command::Balanced { word } => {
            let b = parse(&word)?.to_balanced()?;
            if json {
                emit(&json!({ "word": word.trim(), "m": b.m(), "balanced": b.digits() }));
            } else {
                println!("{b}");
            }
        }
        Command::Jset { m } => {
            if m == 0 {
                return Err(Error::InvalidArgument("m must be at least 1".into()));
            }
            let j = trinomial_jset(m);
            if json {
                emit(&json!({ "m": m, "jset": j.iter().collect::<Vec<_>>() }));
            } else {
                println!("{j}");
            }
        }
        Command::Filter { word } => {
            let w = parse(&word)?.to_search_normal_form()?;
            let verdict = |r: Result<filter::Verdict, Error>| match r {
                Ok(v) => json!(v),
                Err(e) => json!({ "error": e.to_string() }),
            };
            let sums = match filter::sums_congruence_check(&w) {
                Ok(s) => json!({ "verdict": s.verdict, "lhs": s.lhs.to_string(), "rhs": s.rhs.to_string() }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            let stats = match w.stats() {
                Ok(s) => json!({
                    "adjacent_eq_count": s.adjacent_eq_count,
                    "distance2_eq_count": s.distance2_eq_count,
                    "mirror_set": s.mirror_set,
                }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            emit(&json!({
                "word": w.to_string(),
                "modeight": verdict(filter::filter_modeight(&w)),
                "counts": verdict(filter::filter_counts(&w)),
                "sums": sums,
                "stats": stats,
            }));
        }
        Command::C6 { word } => {
            let w = parse(&word)?.to_search_normal_form()?;
            let report = max_piece_syllables(&w)?;
            let mut value = serde_json::to_value(&report).expect("serializable report");
            value["word"] = json!(w.to_string());
            emit(&value);
        }
        Command::Search { m, mode, threads, block_bits, checkpoint, resume, stop_after_blocks, out } => {
            let mode: SearchMode = mode.parse()?;
            let mut opts =
                SearchOptions { block_bits, checkpoint, resume, stop_after_blocks, ..SearchOptions::default() };
            if let Some(t) = threads {
                opts.threads = t;
            }
            let outcome = tg242::search_with(m, mode, &opts)?;
            let mut sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(BufWriter::new(File::create(path)?)),
                None => Box::new(io::stdout().lock()),
            };
            match outcome {
                SearchOutcome::Complete(r) => {
                    let target = tg242::search_target::<i64>(m).map(|p| p.to_string()).unwrap_or_default();
                    for hit in &r.hits {
                        let line = json!({ "m": m, "mode": mode, "word": hit, "trace": target });
                        writeln!(sink, "{line}")?;
                    }
                    let summary = json!({
                        "summary": true,
                        "m": m,
                        "mode": mode,
                        "hits": r.hits.len(),
                        "candidates_examined": r.candidates_examined,
                        "certificate": if r.hits.is_empty() { Some(mode.certificate()) } else { None },
                        "wall_time": r.wall_time.as_secs_f64(),
                    });
                    writeln!(sink, "{summary}")?;
                }
                SearchOutcome::Interrupted { completed_blocks, total_blocks } => {
                    let summary = json!({
                        "summary": true,
                        "m": m,
                        "mode": mode,
                        "interrupted": true,
                        "completed_blocks": completed_blocks,
                        "total_blocks": total_blocks,
                    });
                    writeln!(sink, "{summary}")?;
                }
            }
            sink.flush()?;
        }
        Command::Schedule { certified } => {
            let set = parse_certified(&certified)?;
            let bound = schedule_bound(&set)?;
            let max = set.last().copied();
            if json {
                emit(&json!({ "certified_max": max, "k_bound": bound }));
            } else {
                match max {
                    Some(mx) => println!(
                        "odd m in 5..={mx} certified: every even k <= {} is covered; k_bound = {bound}",
                        bound - 1
                    ),
                    None => println!("no certified m: every even k <= {} is covered; k_bound = {bound}", bound - 1),
                }
            }
        }
        Command::Witness(cmd) => witness(cmd, json)?,
        Command::Classify { poly } => {
            let value: Value =
                serde_json::from_str(&poly).map_err(|e| Error::InvalidArgument(format!("polynomial JSON: {e}")))?;
            let p = TracePoly::from_json_pairs(&value)?;
            let form = classify_form(&p);
            if json {
                emit(&json!({ "poly": p.to_string(), "form": form_json(form) }));
            } else {
                println!("{}", form_text(form));
            }
        }
    }
    Ok(())
}

fn witness(cmd: WitnessCommand, json: bool) -> CliResult {
    let value = match cmd {
        WitnessCommand::Trace { word, lambda, lambda_im, tol } => {
            let w = parse(&word)?;
            let r = verify_trace_numeric(&w, Complex64::new(lambda, lambda_im), tol)?;
            serde_json::to_value(&r).expect("serializable")
        }
        WitnessCommand::Eveneven { k, s } => serde_json::to_value(verify_eveneven(k, s)?).expect("serializable"),
        WitnessCommand::Bound { word, grid } => {
            let w = parse(&word)?;
            serde_json::to_value(bound_check(&w, grid)?).expect("serializable")
        }
    };
    if json {
        emit(&value);
    } else {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    }
    Ok(())
}
