use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ultralevels::checker::{self, SuiteParams};
use ultralevels::filter::f_alpha;
use ultralevels::filter::spec::{build_alpha, parse_alpha, parse_filter};
use ultralevels::setlang::syntax::parse_set;
use ultralevels::witness::chain;
use ultralevels::{
    contains, level_evidence, omega, product, signature, signature_classes, tilde_divides,
    FilterBase, LevelIndex, SetDescriptor, Verdict, WitnessError,
};

#[derive(Parser)]
#[command(name = "ultralevels", version, about = "Levels, filter bases and divisibility checks on N")]
struct Cli {
    /// Search and enumeration bound.
    #[arg(long, global = true, default_value_t = checker::DEFAULT_BOUND)]
    bound: u64,
    /// Highest level examined for level evidence.
    #[arg(long, global = true, default_value_t = checker::DEFAULT_MAX_LEVEL)]
    max_level: u32,
    /// Links built below a base with no finite level.
    #[arg(long, global = true, default_value_t = checker::DEFAULT_CHAIN_LENGTH)]
    chain_length: u32,
    #[arg(long, global = true, default_value_t = checker::DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for `check`. Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall times in `check` reports (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Machine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Number of prime factors of N, with multiplicity.
    Omega { n: u64 },
    /// The level of N and its prime signature.
    Level { n: u64 },
    /// Prime-signature classes of level I.
    Classes { i: u32 },
    /// The level equal to L_I / M, if any.
    Quotient { i: u32, m: u64 },
    /// Members of a set up to --bound.
    Enum { set: String },
    /// Build F_alpha and report its level.
    Falpha { alpha: String },
    /// Product of two filter bases.
    Product { x: String, y: String },
    /// Whether X tilde-divides Y.
    Divides { x: String, y: String },
    /// Level evidence of a filter base.
    Evidence { x: String },
    /// The tilde-divisibility chain below a base.
    Chain { x: String },
    /// Run one suite, or `all`.
    Check { suite: String },
}

enum Failure {
    // Output is printed, then exit 1.
    Refuted(String),
    // Message on stderr, then exit 2.
    Usage(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn base(spec: &str, bound: u64) -> Result<FilterBase, Failure> {
    parse_filter(spec).map_err(usage)?.build(bound).map_err(usage)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let mut out = String::new();
    match &cli.cmd {
        Cmd::Omega { n } => writeln!(out, "{}", omega(*n).map_err(usage)?.get()),
        Cmd::Level { n } => {
            let i = omega(*n).map_err(usage)?;
            match signature(*n) {
                Ok(sig) => writeln!(out, "{i} {sig}"),
                Err(_) => writeln!(out, "{i}"),
            }
        }
        Cmd::Classes { i } => {
            for sig in signature_classes(LevelIndex(*i)).map_err(usage)? {
                writeln!(out, "{sig}").unwrap();
            }
            Ok(())
        }
        Cmd::Quotient { i, m } => match ultralevels::arith::quotient_level(LevelIndex(*i), *m).map_err(usage)? {
            Some(j) => writeln!(out, "{j}"),
            None => writeln!(out, "empty"),
        },
        Cmd::Enum { set } => {
            let s: SetDescriptor = parse_set(set).map_err(usage)?;
            let elems: Vec<String> = s.enumerate(cli.bound).iter().map(u64::to_string).collect();
            writeln!(out, "{}", elems.join(" "))
        }
        Cmd::Falpha { alpha } => {
            let a = build_alpha(&parse_alpha(alpha).map_err(usage)?, cli.bound).map_err(usage)?;
            let x = f_alpha(&a, cli.bound).map_err(usage)?;
            writeln!(out, "alpha {a}").unwrap();
            writeln!(out, "sigma {}", a.sigma()).unwrap();
            writeln!(out, "base {x}").unwrap();
            writeln!(out, "witness {}", x.witness()).unwrap();
            let v = contains(&x, &SetDescriptor::level(a.sigma() as u32), cli.bound);
            writeln!(out, "on L_{} {v}", a.sigma()).unwrap();
            if v.is_refuted() {
                return Err(Failure::Refuted(out));
            }
            Ok(())
        }
        Cmd::Product { x, y } => {
            let z = product(&base(x, cli.bound)?, &base(y, cli.bound)?).map_err(usage)?;
            writeln!(out, "{z}").unwrap();
            writeln!(out, "{}", level_evidence(&z, cli.max_level, cli.bound))
        }
        Cmd::Divides { x, y } => {
            let v: Verdict = tilde_divides(&base(x, cli.bound)?, &base(y, cli.bound)?, cli.bound);
            writeln!(out, "{v}").unwrap();
            if v.is_refuted() {
                return Err(Failure::Refuted(out));
            }
            Ok(())
        }
        Cmd::Evidence { x } => writeln!(out, "{}", level_evidence(&base(x, cli.bound)?, cli.max_level, cli.bound)),
        Cmd::Chain { x } => {
            let c = match chain(&base(x, cli.bound)?, cli.bound, cli.max_level, cli.chain_length) {
                Ok(c) => c,
                Err(e @ WitnessError::ChainBroken { .. }) => return Err(Failure::Refuted(format!("{e}\n"))),
                Err(e) => return Err(usage(e)),
            };
            for (k, b) in c.bases.iter().enumerate() {
                let level = c.levels[k].map_or("none".to_string(), |l| l.to_string());
                writeln!(out, "{b} level={level}").unwrap();
                if let Some(v) = c.links.get(k) {
                    writeln!(out, "  divides next: {v}").unwrap();
                }
            }
            Ok(())
        }
        Cmd::Check { suite } => {
            let params = SuiteParams {
                bound: cli.bound,
                max_level: cli.max_level,
                chain_length: cli.chain_length,
                seed: cli.seed,
                jobs: cli.jobs,
            };
            let results = if suite == "all" {
                checker::run_all(&params)
            } else {
                vec![checker::run_suite(suite, &params).map_err(usage)?]
            };
            out = match cli.format {
                Format::Md => checker::markdown(&results, cli.timings),
                Format::Machine => checker::machine(&results, cli.timings),
            };
            if results.iter().any(|r| !r.passed()) {
                return Err(Failure::Refuted(out));
            }
            Ok(())
        }
    }
    .unwrap();
    Ok(out)
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(text) => (text, 0),
        Err(Failure::Refuted(text)) => (text, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
