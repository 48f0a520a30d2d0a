use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use inferlab::adversary::{run_adversary, serve, verify_witness, AdversaryId, Bounds, ExternalOpponent, Opponent};
use inferlab::catalog::{self, ListKind, Params};
use inferlab::combinators::{pipeline, Combinator};
use inferlab::harness::config::DEFAULT_TIMEOUT_MS;
use inferlab::harness::{demo::demo, render_report, run_experiment, seed_from_env, validate_config, AdversaryExpect, AdversaryRecord, RenderMode};
use inferlab::upset::{Relation, SetOp, UpSet};

#[derive(Parser)]
#[command(name = "inferlab", version, about = "Informant learning experiments over ultimately periodic sets")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for RenderMode {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => RenderMode::Text,
            Format::Json => RenderMode::Machine,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpectArg {
    Exhausted,
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum Misbehave {
    Garbage,
    Silent,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an experiment config and print its report.
    Check {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the JSON report here (overrides `output` in the config).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Play one adversary against a catalog learner or an external process.
    Adversary {
        id: String,
        #[arg(long, default_value = "cofinite")]
        learner: String,
        #[arg(long, default_value = "")]
        params: String,
        /// Comma-separated combinator ids applied in order.
        #[arg(long, default_value = "")]
        combinators: String,
        #[arg(long, default_value_t = 100)]
        search: usize,
        #[arg(long, default_value_t = 50)]
        t_bound: usize,
        #[arg(long, default_value_t = 10)]
        rounds: usize,
        #[arg(long, value_enum, default_value = "exhausted")]
        expect: ExpectArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_TIMEOUT_MS)]
        timeout_ms: u64,
        /// External opponent command; replaces --learner.
        #[arg(last = true)]
        external: Vec<String>,
    },
    /// Ultimately periodic set calculator.
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Replay every separation and construction on its instance.
    Demo,
    /// List catalog entries.
    List {
        #[arg(value_enum)]
        kind: ListArg,
    },
    /// Serve a catalog learner over the opponent line protocol on stdin/stdout.
    #[command(hide = true)]
    Opponent {
        learner: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_enum)]
        misbehave: Option<Misbehave>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ListArg {
    Learners,
    Languages,
    Families,
}

#[derive(Subcommand)]
enum AlgebraOp {
    /// equal, proper-subset, proper-superset or incomparable.
    Relate { a: String, b: String },
    /// union, intersection or difference.
    Combine { op: String, a: String, b: String },
    Complement { a: String },
    /// Print the canonical form.
    Normalize { a: String },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn check(config: PathBuf, format: Format, output: Option<PathBuf>) -> ExitCode {
    let text = match std::fs::read_to_string(&config) {
        Ok(t) => t,
        Err(e) => return fail(format!("{}: {e}", config.display())),
    };
    let mut cfg = match validate_config(&text) {
        Ok(c) => c,
        Err(errors) => {
            eprintln!("{errors}");
            return ExitCode::from(2);
        }
    };
    if let Some(seed) = seed_from_env() {
        cfg.override_seed(seed);
    }
    let report = run_experiment(&cfg);
    if let Some(path) = output.or(cfg.output.clone()) {
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            return fail(format!("{}: {e}", path.display()));
        }
    }
    print!("{}", render_report(&report, format.into()));
    code(report.exit_code())
}

#[allow(clippy::too_many_arguments)]
fn adversary(
    id: &str,
    learner: &str,
    params: &str,
    combinators: &str,
    bounds: Bounds,
    expect: ExpectArg,
    format: Format,
    timeout: Duration,
    external: &[String],
) -> ExitCode {
    let id: AdversaryId = match id.parse() {
        Ok(id) => id,
        Err(e) => return fail(e),
    };
    let local;
    let remote;
    let op: &dyn Opponent = if let Some((program, args)) = external.split_first() {
        match ExternalOpponent::spawn(program, args, timeout) {
            Ok(o) => {
                remote = o;
                &remote
            }
            Err(e) => return fail(e),
        }
    } else {
        let base = match Params::parse(params).and_then(|p| catalog::learner(learner, &p)) {
            Ok(l) => l,
            Err(e) => return fail(e),
        };
        let steps: Result<Vec<Combinator>, String> =
            combinators.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect();
        match steps {
            Ok(steps) => local = pipeline(&base, &steps),
            Err(e) => return fail(e),
        }
        &local
    };
    let witness = match run_adversary(id, op, bounds) {
        Ok(w) => w,
        Err(e) => return fail(format!("opponent error: {e}")),
    };
    let verified = verify_witness(&witness, op);
    let record = AdversaryRecord {
        id,
        opponent: op.name(),
        expect: match expect {
            ExpectArg::Exhausted => AdversaryExpect::Exhausted,
            ExpectArg::Witness => AdversaryExpect::Witness,
        },
        witness: Some(witness.clone()),
        verified,
        error: None,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&witness).expect("witnesses serialize")),
        Format::Text => {
            println!("{id} vs {}: {}", op.name(), witness.summary());
            if let Some(v) = witness.violation() {
                for stage in &v.stages {
                    println!("  stage {} = {} at n={}", stage.name, stage.target, stage.index);
                }
                let params: Vec<String> = v.params.iter().map(|(k, x)| format!("{k}={x}")).collect();
                println!("  params {}", params.join(" "));
                println!("  data [{}]", v.data);
            }
            println!("  verified {verified}");
        }
    }
    code(if record.as_expected() { 0 } else { 1 })
}

fn parse_set(text: &str) -> Result<UpSet, String> {
    text.parse().map_err(|e| format!("{text:?}: {e}"))
}

fn algebra(op: AlgebraOp) -> ExitCode {
    let result = match op {
        AlgebraOp::Relate { a, b } => parse_set(&a).and_then(|a| {
            let b = parse_set(&b)?;
            Ok(match a.relate(&b) {
                Relation::Equal => "equal",
                Relation::ProperSubset => "proper-subset",
                Relation::ProperSuperset => "proper-superset",
                Relation::Incomparable => "incomparable",
            }
            .to_string())
        }),
        AlgebraOp::Combine { op, a, b } => op
            .parse::<SetOp>()
            .and_then(|op| Ok(UpSet::combine(op, &parse_set(&a)?, &parse_set(&b)?).to_string())),
        AlgebraOp::Complement { a } => parse_set(&a).map(|a| a.complement().to_string()),
        AlgebraOp::Normalize { a } => parse_set(&a).map(|a| a.to_string()),
    };
    match result {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn list(kind: ListArg) -> ExitCode {
    let kind = match kind {
        ListArg::Learners => ListKind::Learners,
        ListArg::Languages => ListKind::Languages,
        ListArg::Families => ListKind::Families,
    };
    for e in catalog::list(kind) {
        let iface = e.interface.map(|i| format!(" [{i}]")).unwrap_or_default();
        let supports: Vec<&str> = e.supports.iter().map(|r| r.id()).collect();
        let on = e.family.map(|f| format!(" on {f}")).unwrap_or_default();
        let sup = if supports.is_empty() { String::new() } else { format!(" ({}{on})", supports.join(", ")) };
        println!("{:<14} {:<12}{iface}{sup}  {}", e.id, e.params, e.note);
    }
    ExitCode::SUCCESS
}

fn opponent(learner: &str, params: &str, misbehave: Option<Misbehave>) -> ExitCode {
    let learner = match Params::parse(params).and_then(|p| catalog::learner(learner, &p)) {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let stdin = io::stdin();
    let mut stdout = io::stdout();
    let result = match misbehave {
        None => serve(&learner, stdin.lock(), &mut stdout),
        Some(Misbehave::Garbage) => stdin.lock().lines().try_for_each(|line| {
            line?;
            writeln!(stdout, "H not-a-label")?;
            stdout.flush()
        }),
        Some(Misbehave::Silent) => stdin.lock().lines().try_for_each(|line| line.map(drop)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Cmd::Check { config, format, output } => check(config, format, output),
        Cmd::Adversary { id, learner, params, combinators, search, t_bound, rounds, expect, format, timeout_ms, external } => {
            adversary(
                &id,
                &learner,
                &params,
                &combinators,
                Bounds { search, t_bound, rounds },
                expect,
                format,
                Duration::from_millis(timeout_ms),
                &external,
            )
        }
        Cmd::Algebra { op } => algebra(op),
        Cmd::Demo => {
            let lines = demo();
            for l in &lines {
                println!("{} {} -> {}", if l.ok { "ok  " } else { "FAIL" }, l.claim, l.outcome);
            }
            if lines.iter().all(|l| l.ok) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Cmd::List { kind } => list(kind),
        Cmd::Opponent { learner, params, misbehave } => opponent(&learner, &params, misbehave),
    }
}
