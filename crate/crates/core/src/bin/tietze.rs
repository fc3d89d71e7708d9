use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tietze::engine::{simplify, EngineConfig};
use tietze::generate::{generate, GenParams, Profile};
use tietze::matching::{AutomatonMode, Backing, MatchStrategy};
use tietze::report::{bench, StatsReport};
use tietze::skip::SkipPolicy;
use tietze::verify::abelian_invariants;
use tietze::Presentation;

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "tietze", version, about = "Simplify finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simplify a presentation.
    Simplify {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArgs,
        /// Write a JSON stats report.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Run one input under several configurations and compare.
    Bench {
        input: PathBuf,
        #[arg(long)]
        all_strategies: bool,
        #[arg(long)]
        all_skip: bool,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Write a random presentation.
    Gen {
        #[arg(long)]
        gens: usize,
        #[arg(long)]
        rels: usize,
        #[arg(long)]
        maxlen: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ProfileArg::Generic)]
        profile: ProfileArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the abelian invariants of two presentations.
    Verify { first: PathBuf, second: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum MatchArg {
    Brute,
    Signature,
    KrBloom,
    KrHash,
    Automaton,
}

#[derive(Clone, Copy, ValueEnum)]
enum AutomataArg {
    One,
    Two,
}

#[derive(Clone, Copy, ValueEnum)]
enum SkipArg {
    AllPairs,
    Flags,
    TsSorted,
    TsUnsorted,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Generic,
    SmallAlphabetLong,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long = "match", value_enum, default_value_t = MatchArg::KrBloom)]
    match_: MatchArg,
    #[arg(long, value_enum)]
    automata: Option<AutomataArg>,
    #[arg(long, value_enum, default_value_t = SkipArg::TsSorted)]
    skip: SkipArg,
    #[arg(long)]
    bloom_bits: Option<u8>,
    #[arg(long)]
    bloom_log2: Option<u32>,
    #[arg(long, value_enum, default_value_t = OnOff::On)]
    long_elim: OnOff,
    #[arg(long, default_value_t = 1.5)]
    growth_limit: f64,
    #[arg(long, default_value_t = 10_000)]
    max_passes: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl EngineArgs {
    fn config(&self) -> Result<EngineConfig, String> {
        let bloom_flags = self.bloom_bits.is_some() || self.bloom_log2.is_some();
        if bloom_flags && !matches!(self.match_, MatchArg::KrBloom) {
            return Err("--bloom-bits/--bloom-log2 require --match kr-bloom".into());
        }
        if self.automata.is_some() && !matches!(self.match_, MatchArg::Automaton) {
            return Err("--automata requires --match automaton".into());
        }
        let match_strategy = match self.match_ {
            MatchArg::Brute => MatchStrategy::Brute,
            MatchArg::Signature => MatchStrategy::Signature,
            MatchArg::KrHash => MatchStrategy::KarpRabin(Backing::Exact),
            MatchArg::KrBloom => match self.bloom_bits.unwrap_or(3) {
                3 => MatchStrategy::KarpRabin(Backing::Bloom3),
                4 => MatchStrategy::KarpRabin(Backing::Bloom4),
                b => return Err(format!("--bloom-bits must be 3 or 4, got {b}")),
            },
            MatchArg::Automaton => MatchStrategy::Automaton(match self.automata.unwrap_or(AutomataArg::Two) {
                AutomataArg::One => AutomatonMode::OneAutomaton,
                AutomataArg::Two => AutomatonMode::TwoAutomata,
            }),
        };
        let skip_policy = match self.skip {
            SkipArg::AllPairs => SkipPolicy::AllPairs,
            SkipArg::Flags => SkipPolicy::ChangeFlags,
            SkipArg::TsSorted => SkipPolicy::TsSorted,
            SkipArg::TsUnsorted => SkipPolicy::TsUnsorted,
        };
        let cfg = EngineConfig {
            match_strategy,
            skip_policy,
            bloom_log2: self.bloom_log2.unwrap_or(16),
            long_elim: matches!(self.long_elim, OnOff::On),
            growth_limit: self.growth_limit,
            max_passes: self.max_passes,
            seed: self.seed,
            ..EngineConfig::default()
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

/// Failure with its exit code.
struct Fail(u8, String);

fn io(e: impl std::fmt::Display) -> Fail {
    Fail(EXIT_IO, e.to_string())
}

fn read_presentation(path: &Path) -> Result<Presentation, Fail> {
    let text = fs::read_to_string(path).map_err(|e| io(format!("{}: {e}", path.display())))?;
    text.parse().map_err(|e| io(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Fail> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Fail> {
    serde_json::to_string_pretty(value).map_err(io)
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.command {
        Command::Simplify { input, output, engine, stats } => {
            let cfg = engine.config().map_err(|m| Fail(EXIT_USAGE, m))?;
            let mut p = read_presentation(&input)?;
            let st = simplify(&mut p, &cfg).map_err(io)?;
            write_out(output.as_deref(), &p.to_text())?;
            if let Some(path) = stats {
                write_out(Some(&path), &to_json(&StatsReport::new(&cfg, st))?)?;
            }
            Ok(())
        }
        Command::Bench { input, all_strategies, all_skip, engine, stats } => {
            let cfg = engine.config().map_err(|m| Fail(EXIT_USAGE, m))?;
            let p = read_presentation(&input)?;
            let strategies = if all_strategies { MatchStrategy::all() } else { vec![cfg.match_strategy] };
            let policies = if all_skip { SkipPolicy::all().to_vec() } else { vec![cfg.skip_policy] };
            let summary = bench(&p, &cfg, &strategies, &policies).map_err(io)?;
            print!("{}", summary.table());
            if let Some(path) = stats {
                write_out(Some(&path), &to_json(&summary)?)?;
            }
            if summary.dominance_holds() {
                Ok(())
            } else {
                Err(Fail(EXIT_MISMATCH, "skip-policy dominance violated".into()))
            }
        }
        Command::Gen { gens, rels, maxlen, seed, profile, output } => {
            let profile = match profile {
                ProfileArg::Generic => Profile::Generic,
                ProfileArg::SmallAlphabetLong => Profile::SmallAlphabetLong,
            };
            let p = generate(&GenParams { gens, rels, maxlen, seed, profile }).map_err(|e| Fail(EXIT_USAGE, e.to_string()))?;
            write_out(output.as_deref(), &p.to_text())
        }
        Command::Verify { first, second } => {
            let (a, b) = (abelian_invariants(&read_presentation(&first)?), abelian_invariants(&read_presentation(&second)?));
            println!("{}: {a}", first.display());
            println!("{}: {b}", second.display());
            if a == b {
                Ok(())
            } else {
                Err(Fail(EXIT_MISMATCH, "abelian invariants differ".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("tietze: {msg}");
            ExitCode::from(code)
        }
    }
}
