//! `fsing`: command-line front end for fsing-core.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use fsing_core::{Budgets, Error, Limits, MonomialOrder, Ring, RingConfig};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "fsing",
    version,
    about = "Exact Frobenius computations over F_p[x_1..x_n]"
)]
struct Cli {
    /// Characteristic (prime).
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Field exponent: computations use q = p^s.
    #[arg(long, global = true, default_value_t = 1)]
    s: u32,
    /// Comma-separated variable names.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Vec<String>,
    /// grevlex, lex or elim:<k>.
    #[arg(long, global = true, default_value = "grevlex", value_parser = parse_order)]
    order: MonomialOrder,
    /// Print a JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of S-pairs per Groebner basis computation.
    #[arg(long, global = true)]
    budget_spairs: Option<usize>,
    /// Maximum number of kernel-chain and Fr-iteration steps.
    #[arg(long, global = true)]
    budget_iters: Option<usize>,
    /// Batch input: one polynomial per line, `#` comments. Output is JSON lines.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Frobenius root of an ideal (`;`-separated generators).
    Root {
        #[arg(long)]
        level: u32,
        input: Option<String>,
    },
    /// Bracket power I^[q^e].
    Bracket {
        #[arg(long)]
        e: u32,
        input: Option<String>,
    },
    /// Test ideal of f^(m/q^e).
    Testideal {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        e: u32,
        input: Option<String>,
    },
    /// F-pure-threshold brackets at the origin for levels 1..=max-e.
    Fpt {
        #[arg(long)]
        max_e: u32,
        input: Option<String>,
    },
    /// Direct and iterated test ideals side by side.
    JeChain {
        #[arg(long)]
        max_e: u32,
        input: Option<String>,
    },
    /// Minimal gamma-sheaf of N/K with structural map f·.
    Minimalize {
        #[arg(long = "K")]
        k: Option<String>,
        #[arg(long = "N")]
        n: Option<String>,
        input: Option<String>,
    },
    /// Kernel chain and nilpotency order of N/K with structural map f·.
    Nilpotency {
        #[arg(long = "K")]
        k: Option<String>,
        #[arg(long = "N")]
        n: Option<String>,
        #[arg(long)]
        max_e: usize,
        input: Option<String>,
    },
    /// Cross-check f against the brute-force oracles.
    Verify {
        #[arg(long, default_value_t = 2)]
        max_e: u32,
        input: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Root { .. } => "root",
            Command::Bracket { .. } => "bracket",
            Command::Testideal { .. } => "testideal",
            Command::Fpt { .. } => "fpt",
            Command::JeChain { .. } => "je-chain",
            Command::Minimalize { .. } => "minimalize",
            Command::Nilpotency { .. } => "nilpotency",
            Command::Verify { .. } => "verify",
        }
    }

    fn input(&self) -> Option<&str> {
        match self {
            Command::Root { input, .. }
            | Command::Bracket { input, .. }
            | Command::Testideal { input, .. }
            | Command::Fpt { input, .. }
            | Command::JeChain { input, .. }
            | Command::Minimalize { input, .. }
            | Command::Nilpotency { input, .. }
            | Command::Verify { input, .. } => input.as_deref(),
        }
    }
}

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 3;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => 3,
        e if e.is_resource() => 2,
        _ => 1,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Config(_) => "config",
        Error::Domain(_) => "domain",
        Error::Validation { .. } => "validation",
        Error::Resource(_) => "resource",
        Error::Budget { .. } => "budget",
        Error::Parse { .. } => "parse",
        Error::Invariant(_) => "invariant",
    }
}

/// Output of one computation.
pub struct Outcome {
    pub result: Value,
    pub certificate: Option<Value>,
    pub text: String,
}

pub struct Context {
    pub ring: Ring,
    pub budgets: Budgets,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}\n\nFor more information, try '--help'.");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_OK)
            };
        }
    };
    let Some(p) = cli.p else {
        return usage_error("--p is required");
    };
    if cli.vars.is_empty() {
        return usage_error("--vars is required");
    }
    if cli.file.is_some() == cli.command.input().is_some() {
        return usage_error("give exactly one of an input argument or --file");
    }

    let mut limits = Limits::default();
    if let Some(n) = cli.budget_spairs {
        limits.max_spairs = n;
    }
    let ring = match RingConfig::with_limits(p, cli.s, cli.vars.clone(), cli.order, limits) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut budgets = Budgets::default();
    if let Some(n) = cli.budget_iters {
        budgets.kernel_chain = n;
        budgets.fr_iterations = n;
    }
    let ctx = Context { ring, budgets };
    let ring_json = json!({
        "p": p,
        "s": cli.s,
        "vars": cli.vars,
        "order": cli.order.to_string(),
    });

    match &cli.file {
        None => {
            let input = cli.command.input().unwrap();
            let (record, outcome) = run_timed(&ctx, &cli.command, input, &ring_json);
            match outcome {
                Ok(text) => {
                    if cli.json {
                        println!("{record}");
                    } else {
                        println!("{text}");
                    }
                    ExitCode::from(EXIT_OK)
                }
                Err(code) => {
                    if cli.json {
                        println!("{record}");
                    }
                    eprintln!(
                        "error: {}",
                        record["error"]["message"].as_str().unwrap_or("")
                    );
                    ExitCode::from(code)
                }
            }
        }
        Some(path) => {
            let contents = match std::fs::read_to_string(path) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let lines: Vec<&str> = contents
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect();
            let records: Vec<(Value, Result<String, u8>)> = lines
                .par_iter()
                .map(|line| run_timed(&ctx, &cli.command, line, &ring_json))
                .collect();
            let mut code = EXIT_OK;
            for (record, outcome) in &records {
                println!("{record}");
                if let Err(c) = outcome {
                    if code == EXIT_OK {
                        code = *c;
                    }
                }
            }
            ExitCode::from(code)
        }
    }
}

fn run_timed(
    ctx: &Context,
    command: &Command,
    input: &str,
    ring_json: &Value,
) -> (Value, Result<String, u8>) {
    let start = Instant::now();
    let outcome = commands::run(ctx, command, input);
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut record = json!({
        "command": command.name(),
        "ring": ring_json,
        "input": input,
    });
    let status = match outcome {
        Ok(out) => {
            record["result"] = out.result;
            if let Some(c) = out.certificate {
                record["certificate"] = c;
            }
            Ok(out.text)
        }
        Err(e) => {
            record["error"] = json!({ "kind": error_kind(&e), "message": e.to_string() });
            Err(exit_code(&e))
        }
    };
    record["timing_ms"] = json!(timing_ms);
    (record, status)
}
