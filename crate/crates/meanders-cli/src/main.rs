//! `meanders`: check, enumerate, audit, construct, and render meandric
//! permutations.
//!
//! Exit codes: 0 success; 1 validation or usage error; 2 when `check`
//! answers "not meandric"; 3 when `compare` finds a divergence between the
//! matrix criterion and the geometric oracle.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use meanders::gaussdiag::ChordDiagram;
use meanders::meander::{
    self, compare_construction_with_enumeration, construct_meanders, criterion_is_meandric,
    oracle_is_meandric, CriterionMode, SearchEvent, DEFAULT_COMPARE_CAP, DEFAULT_COUNT_CAP,
};
use meanders::render::{render_meander, RenderSpec, RenderTarget};
use meanders::{PairSet, Permutation};

#[derive(Parser)]
#[command(name = "meanders", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Corrected,
    Strict,
    Oracle,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Svg,
    Ascii,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a permutation is meandric.
    Check {
        /// One-line word, e.g. 1,4,3,2,5,6
        perm: String,
        #[arg(long, value_enum, default_value = "all")]
        mode: CheckMode,
        /// Read the word as a cyclic visiting order and rotate it to start at 1.
        #[arg(long)]
        cycle: bool,
    },
    /// Print the inversion set R, its complement ¬R, and the full set Δ.
    Rsets {
        perm: String,
        #[arg(long)]
        cycle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the chord-diagram word of a permutation.
    GaussCode {
        perm: String,
        #[arg(long)]
        cycle: bool,
    },
    /// Decide realizability of a double-occurrence word, with witness.
    Realizable {
        /// Comma-separated word, e.g. 1,2,1,2
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// List all meandric permutations of an even order, one per line.
    Enumerate { order: usize },
    /// Count the meandric permutations of an even order.
    Count { order: usize },
    /// Audit the matrix criterion against the oracle over all of 𝔖_{2n}.
    Compare {
        order: usize,
        /// Write the divergence report as JSON.
        #[arg(long)]
        out: Option<String>,
    },
    /// Construct meanders by backtracking over neighbor parities.
    Construct {
        order: usize,
        /// Explore the whole tree instead of stopping at the first meander.
        #[arg(long)]
        all: bool,
        /// Print every candidate evaluation and backtrack to stderr.
        #[arg(long)]
        trace: bool,
        /// Write the construction-vs-enumeration comparison as JSON.
        #[arg(long)]
        out: Option<String>,
    },
    /// Render a meander as arcs around a line (svg/ascii) or its graph (dot).
    Render {
        perm: String,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long, default_value_t = 40)]
        spacing: u32,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 400)]
        height: u32,
        #[arg(long)]
        cycle: bool,
    },
}

fn main() -> ExitCode {
    // die quietly on closed pipes (`meanders enumerate 14 | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn parse_perm(text: &str, cycle: bool) -> Result<Permutation, String> {
    let result = if cycle {
        let values = text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("cannot parse {tok:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_cycle(&values)
    } else {
        Permutation::parse(text)
    };
    result.map_err(|e| e.to_string())
}

fn env_cap(default: usize) -> usize {
    std::env::var("MEANDER_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Check { perm, mode, cycle } => check(&parse_perm(&perm, cycle)?, mode),
        Command::Rsets { perm, cycle, json } => {
            let pi = parse_perm(&perm, cycle)?;
            let r = pi.inversion_set();
            let co = pi.co_inversion_set();
            let delta = PairSet::full(pi.n());
            if json {
                let value = serde_json::json!({
                    "n": pi.n(),
                    "r": r,
                    "co_r": co,
                    "delta": delta,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("serializable")
                );
            } else {
                println!("R = {}", format_pairs(&r));
                println!("¬R = {}", format_pairs(&co));
                println!("Δ = {}", format_pairs(&delta));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GaussCode { perm, cycle } => {
            let pi = parse_perm(&perm, cycle)?;
            println!("{}", ChordDiagram::of_permutation(&pi));
            Ok(ExitCode::SUCCESS)
        }
        Command::Realizable { word, json } => realizable(&word, json),
        Command::Enumerate { order } => {
            let cap = env_cap(DEFAULT_COUNT_CAP);
            if order > cap {
                return Err(format!(
                    "order {order} exceeds the enumeration cap {cap}; set MEANDER_MAX_ORDER to raise it"
                ));
            }
            for mu in meander::enumerate_meanders(order).map_err(|e| e.to_string())? {
                println!("{mu}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { order } => {
            let cap = env_cap(DEFAULT_COUNT_CAP);
            if order > cap {
                return Err(format!(
                    "order {order} exceeds the counting cap {cap}; set MEANDER_MAX_ORDER to raise it"
                ));
            }
            println!(
                "{}",
                meander::count_meanders(order).map_err(|e| e.to_string())?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { order, out } => {
            let cap = env_cap(DEFAULT_COMPARE_CAP);
            let report =
                meander::compare_criterion_oracle(order, cap).map_err(|e| e.to_string())?;
            println!(
                "order {}: oracle {}, criterion {}, missed {}, extra {}",
                report.order,
                report.oracle_count,
                report.criterion_count,
                report.missed.len(),
                report.extra.len()
            );
            for mu in &report.missed {
                println!("missed: {mu}");
            }
            for mu in &report.extra {
                println!("extra: {mu}");
            }
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&report).expect("serializable");
                fs::write(&path, text).map_err(|e| format!("cannot write {path}: {e}"))?;
            }
            Ok(if report.diverges() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Construct {
            order,
            all,
            trace,
            out,
        } => {
            let observer = |event: &SearchEvent| {
                if trace {
                    eprintln!("{}", trace_line(event));
                }
            };
            let report = construct_meanders(order, all, observer).map_err(|e| e.to_string())?;
            for mu in &report.emitted {
                println!("{mu}");
            }
            for mu in &report.oracle_rejected {
                eprintln!("rejected by oracle: {mu}");
            }
            if let Some(path) = out {
                let comparison =
                    compare_construction_with_enumeration(&report).map_err(|e| e.to_string())?;
                let text = serde_json::to_string_pretty(&comparison).expect("serializable");
                fs::write(&path, text).map_err(|e| format!("cannot write {path}: {e}"))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            perm,
            format,
            spacing,
            width,
            height,
            cycle,
        } => {
            let pi = parse_perm(&perm, cycle)?;
            let target = match format {
                Format::Svg => RenderTarget::Svg,
                Format::Ascii => RenderTarget::Ascii,
                Format::Dot => RenderTarget::Dot,
            };
            let spec =
                RenderSpec::new(target, width, height, spacing).map_err(|e| e.to_string())?;
            let text = render_meander(&pi, &spec).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn format_pairs(s: &PairSet) -> String {
    let body: Vec<String> = s.iter().map(|(i, j)| format!("({i},{j})")).collect();
    format!("{{{}}}", body.join(", "))
}

fn check(pi: &Permutation, mode: CheckMode) -> Result<ExitCode, String> {
    let verdict = |b: bool| if b { "meandric" } else { "not meandric" };
    let oracle = oracle_is_meandric(pi);
    let corrected = criterion_is_meandric(pi, CriterionMode::Corrected);
    let mut parts = Vec::new();
    let primary = match mode {
        CheckMode::Oracle => {
            parts.push(format!("oracle: {}", verdict(oracle)));
            oracle
        }
        CheckMode::Corrected => {
            let ok = corrected.map_err(|e| e.to_string())?;
            parts.push(format!("criterion(corrected): {}", verdict(ok)));
            ok
        }
        CheckMode::Strict => {
            let ok = criterion_is_meandric(pi, CriterionMode::Strict).map_err(|e| e.to_string())?;
            parts.push(format!("criterion(strict): {} (see errata)", verdict(ok)));
            ok
        }
        CheckMode::All => {
            parts.push(format!("oracle: {}", verdict(oracle)));
            match corrected {
                Ok(ok) => parts.push(format!("criterion(corrected): {}", verdict(ok))),
                Err(_) => parts.push("criterion(corrected): n/a (odd order)".to_string()),
            }
            parts.push("criterion(strict): see errata".to_string());
            oracle
        }
    };
    println!("{}", parts.join("; "));
    Ok(if primary {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn realizable(word: &str, json: bool) -> Result<ExitCode, String> {
    let values = word
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| format!("cannot parse {tok:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cd = ChordDiagram::new(values).map_err(|e| e.to_string())?;
    let verdict = cd.realizability();
    if json {
        let mut value = serde_json::to_value(&verdict).expect("serializable");
        value["labels"] = serde_json::to_value(cd.labels()).expect("serializable");
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
        return Ok(ExitCode::SUCCESS);
    }
    match &verdict {
        meanders::Realizability::Realizable { witness } => {
            let bits: Vec<String> = witness.iter().map(|&b| (b as u8).to_string()).collect();
            println!("realizable; witness diagonal D = {}", bits.join(","));
        }
        meanders::Realizability::NotRealizable { obstruction } => {
            println!("not realizable: {obstruction}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn trace_line(event: &SearchEvent) -> String {
    match event {
        SearchEvent::Candidate(c) => {
            let prefix: Vec<String> = c.prefix.iter().map(|v| v.to_string()).collect();
            let mut line = format!(
                "try {} after ({}): |N({})| = {} ({})",
                c.vertex,
                prefix.join(","),
                c.vertex,
                c.degree,
                if c.degree_ok {
                    "odd, ok"
                } else {
                    "even, reject"
                }
            );
            for pc in &c.pair_checks {
                line.push_str(&format!(
                    "; {} {} {}: |N∩N| = {} (excl. start vertex: {}) {}",
                    c.vertex,
                    if pc.adjacent { "~" } else { "!~" },
                    pc.placed,
                    pc.common,
                    pc.common_excluding_start,
                    if pc.ok { "ok" } else { "reject" }
                ));
            }
            line.push_str(if c.accepted {
                "; accepted"
            } else {
                "; rejected"
            });
            line
        }
        SearchEvent::Emit {
            sequence,
            oracle_ok,
        } => {
            let seq: Vec<String> = sequence.iter().map(|v| v.to_string()).collect();
            format!(
                "complete: ({}) oracle: {}",
                seq.join(","),
                if *oracle_ok {
                    "meandric"
                } else {
                    "not meandric"
                }
            )
        }
        SearchEvent::Backtrack { vertex } => format!("backtrack: remove {vertex}"),
    }
}
