use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use knockout::pattern::eta;
use knockout::profile::{build_profile, trim};
use knockout::sampler::{
    chernoff_bound, estimate_mismatch, min_lambda_for, pair_count, pair_mismatch_bound,
    SimulationConfig,
};
use knockout::synthesis::{
    bracket_for_winner, check_top_seeds, class_of, SynthesisMethod,
};
use knockout::tournament::{winner, winner_with_log};
use knockout::{pattern_diff, Bracket, Error, PreferencePattern, VotingProfile};

/// Knockout tournament manipulation toolkit.
///
/// Family levels and board sizes: `pattern`, `profile`, `verify-profile`,
/// `simulate`, and `bound` take a family level `--n` covering `2^(n+3)`
/// candidates (level 0 is the 8-candidate seed). `bracket` and
/// `verify-brackets` take the board size exponent `--n` directly
/// (`2^n` board slots, `n >= 3`).
#[derive(Parser)]
#[command(name = "knockout", version, about, long_about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Explicit,
    Inductive,
}

impl From<Method> for SynthesisMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Explicit => SynthesisMethod::Explicit,
            Method::Inductive => SynthesisMethod::Inductive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print family level n as pattern JSON.
    Pattern {
        /// Family level (the pattern spans 2^(n+3) candidates).
        #[arg(long)]
        n: u32,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesize a bracket that crowns the chosen winner.
    Bracket {
        /// Board size exponent (2^n slots, n >= 3).
        #[arg(long)]
        n: u32,
        /// Target champion, 1..=2^n.
        #[arg(long)]
        winner: u32,
        #[arg(long, value_enum, default_value = "explicit")]
        method: Method,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check both synthesis routes for every target over a 2^n board.
    VerifyBrackets {
        /// Board size exponent (2^n slots, n >= 3).
        #[arg(long)]
        n: u32,
    },
    /// Play a tournament: pattern JSON plus bracket JSON in, champion out.
    Winner {
        /// Pattern JSON file.
        #[arg(long)]
        pattern: PathBuf,
        /// Bracket JSON file.
        #[arg(long)]
        bracket: PathBuf,
        /// Also write the match log as JSON to this file.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Print the level-n voting profile as CSV.
    Profile {
        /// Family level (rows span 2^(n+3) candidates).
        #[arg(long)]
        n: u32,
        /// Drop the last row, leaving an odd electorate with no ties.
        #[arg(long)]
        trimmed: bool,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Majority graph of a CSV profile as pattern JSON.
    Majority {
        /// Profile CSV file.
        #[arg(long)]
        profile: PathBuf,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the level-n profile generates family level n by majority.
    VerifyProfile {
        /// Family level.
        #[arg(long)]
        n: u32,
        /// Check the trimmed (odd electorate) variant.
        #[arg(long)]
        trimmed: bool,
    },
    /// Estimate the probability that a Poisson commission misses the
    /// family pattern.
    Simulate {
        /// Family level.
        #[arg(long)]
        n: u32,
        /// Total Poisson intensity split over the profile rows.
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Analytic mismatch bound, or the minimal intensity reaching a target.
    Bound(BoundArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BoundGroup {
    /// Evaluate the bound at this intensity.
    #[arg(long)]
    lambda: Option<f64>,
    /// Find the smallest intensity whose bound is at most this value.
    #[arg(long)]
    target: Option<f64>,
}

#[derive(Args)]
struct BoundArgs {
    /// Family level.
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    group: BoundGroup,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

const PASS: ExitCode = ExitCode::SUCCESS;

/// Exit status for a check that ran fine and found a negative answer.
fn check_failed() -> ExitCode {
    ExitCode::from(1)
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Pattern { n, out } => cmd_pattern(n, out.as_deref()),
        Command::Bracket { n, winner, method, out } => {
            cmd_bracket(n, winner, method, out.as_deref())
        }
        Command::VerifyBrackets { n } => cmd_verify_brackets(n),
        Command::Winner { pattern, bracket, log } => {
            cmd_winner(&pattern, &bracket, log.as_deref())
        }
        Command::Profile { n, trimmed, out } => cmd_profile(n, trimmed, out.as_deref()),
        Command::Majority { profile, out } => cmd_majority(&profile, out.as_deref()),
        Command::VerifyProfile { n, trimmed } => cmd_verify_profile(n, trimmed),
        Command::Simulate { n, lambda, trials, seed } => cmd_simulate(n, lambda, trials, seed),
        Command::Bound(args) => cmd_bound(args),
    }
}

/// Writes `emit`'s output to `out` when given, else to stdout.
fn with_sink(out: Option<&Path>, emit: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let file = fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            let mut w = BufWriter::new(file);
            emit(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            emit(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn emit_pattern(pattern: &PreferencePattern, out: Option<&Path>) -> Result<()> {
    with_sink(out, |w| {
        pattern.write_json(&mut *w)?;
        writeln!(w)?;
        Ok(())
    })
}

fn cmd_pattern(level: u32, out: Option<&Path>) -> Result<ExitCode> {
    let pattern = eta(level)?;
    emit_pattern(&pattern, out)?;
    Ok(PASS)
}

fn cmd_bracket(n: u32, target: u32, method: Method, out: Option<&Path>) -> Result<ExitCode> {
    let bracket = bracket_for_winner(n, target, method.into())?;
    with_sink(out, |w| {
        serde_json::to_writer(&mut *w, &bracket)?;
        writeln!(w)?;
        Ok(())
    })?;
    Ok(PASS)
}

fn cmd_verify_brackets(n: u32) -> Result<ExitCode> {
    let level = n
        .checked_sub(3)
        .ok_or(Error::SynthesisRegime(n))?;
    let pattern = eta(level)?;
    let m = 1u32 << n;
    let seeds_apply = n >= 4;
    let mut failures = 0u32;
    println!("{:>8}  {:>9}  {:>9}  {:>6}  {:>7}  {:>5}", "target", "explicit", "inductive", "agree", "classes", "seeds");
    for target in 1..=m {
        let explicit = bracket_for_winner(n, target, SynthesisMethod::Explicit)?;
        let inductive = bracket_for_winner(n, target, SynthesisMethod::Inductive)?;
        let we = winner(&pattern, &explicit)?;
        let wi = winner(&pattern, &inductive)?;
        let explicit_ok = we == target;
        let inductive_ok = wi == target;
        let agree = we == wi;
        let classes_ok = explicit
            .positions()
            .iter()
            .enumerate()
            .all(|(slot0, &c)| class_of(slot0 as u32 + 1) == class_of(c));
        let seeds_ok = if seeds_apply {
            check_top_seeds(&explicit)? && check_top_seeds(&inductive)?
        } else {
            true
        };
        let ok = explicit_ok && inductive_ok && agree && classes_ok && seeds_ok;
        if !ok {
            failures += 1;
        }
        let cell = |good: bool| if good { "ok" } else { "FAIL" };
        println!(
            "{:>8}  {:>9}  {:>9}  {:>6}  {:>7}  {:>5}",
            target,
            cell(explicit_ok),
            cell(inductive_ok),
            if agree { "yes" } else { "NO" },
            cell(classes_ok),
            if seeds_apply { cell(seeds_ok) } else { "-" },
        );
    }
    let passed = m - failures;
    println!("verified {passed}/{m} targets over {m} candidates");
    Ok(if failures == 0 { PASS } else { check_failed() })
}

fn cmd_winner(pattern_path: &Path, bracket_path: &Path, log: Option<&Path>) -> Result<ExitCode> {
    let pattern_text = fs::read_to_string(pattern_path)
        .with_context(|| format!("cannot read {}", pattern_path.display()))?;
    let pattern: PreferencePattern = serde_json::from_str(&pattern_text)
        .with_context(|| format!("{} is not valid pattern JSON", pattern_path.display()))?;
    let bracket_text = fs::read_to_string(bracket_path)
        .with_context(|| format!("cannot read {}", bracket_path.display()))?;
    let bracket: Bracket = serde_json::from_str(&bracket_text)
        .with_context(|| format!("{} is not valid bracket JSON", bracket_path.display()))?;
    match log {
        Some(log_path) => {
            let (champion, records) = winner_with_log(&pattern, &bracket)?;
            let file = fs::File::create(log_path)
                .with_context(|| format!("cannot create {}", log_path.display()))?;
            let mut w = BufWriter::new(file);
            serde_json::to_writer_pretty(&mut w, &records)?;
            writeln!(w)?;
            w.flush()?;
            println!("{champion}");
        }
        None => {
            println!("{}", winner(&pattern, &bracket)?);
        }
    }
    Ok(PASS)
}

fn cmd_profile(level: u32, trimmed: bool, out: Option<&Path>) -> Result<ExitCode> {
    let profile = level_profile(level, trimmed)?;
    with_sink(out, |w| {
        profile.write_csv(&mut *w)?;
        Ok(())
    })?;
    Ok(PASS)
}

fn level_profile(level: u32, trimmed: bool) -> Result<VotingProfile> {
    let full = build_profile(level)?;
    Ok(if trimmed { trim(&full)? } else { full })
}

fn cmd_majority(profile_path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let text = fs::read_to_string(profile_path)
        .with_context(|| format!("cannot read {}", profile_path.display()))?;
    let profile = VotingProfile::from_csv_str(&text)?;
    match profile.majority_graph() {
        Ok(pattern) => {
            emit_pattern(&pattern, out)?;
            Ok(PASS)
        }
        Err(Error::TiedPair(i, j)) => {
            println!("tie on pair ({i}, {j})");
            Ok(check_failed())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_verify_profile(level: u32, trimmed: bool) -> Result<ExitCode> {
    let profile = level_profile(level, trimmed)?;
    let target = eta(level)?;
    let name = if trimmed { format!("R\u{303}_{level}") } else { format!("R_{level}") };
    let rows = profile.row_count();
    match profile.majority_graph() {
        Ok(graph) if graph == target => {
            println!(
                "{name} generates \u{3b7}_{level}: OK ({rows} rows, {pairs} pairs)",
                pairs = target.pair_count()
            );
            Ok(PASS)
        }
        Ok(graph) => {
            let diff = pattern_diff(&graph, &target)?;
            let (i, j) = diff[0];
            println!(
                "{name} generates \u{3b7}_{level}: FAIL ({count} pairs differ, first ({i}, {j}))",
                count = diff.len()
            );
            Ok(check_failed())
        }
        Err(Error::TiedPair(i, j)) => {
            println!("{name} generates \u{3b7}_{level}: FAIL (tie on pair ({i}, {j}))");
            Ok(check_failed())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_simulate(level: u32, lambda: f64, trials: u64, seed: u64) -> Result<ExitCode> {
    let config = SimulationConfig { level, lambda, trials, seed };
    let report = estimate_mismatch(&config)?;
    let out = serde_json::json!({
        "level": config.level,
        "lambda": config.lambda,
        "trials": config.trials,
        "seed": config.seed,
        "mismatches": report.mismatches,
        "estimate": report.estimate,
        "ci_halfwidth": report.ci_halfwidth,
        "bound": report.bound,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(PASS)
}

fn cmd_bound(args: BoundArgs) -> Result<ExitCode> {
    let level = args.n;
    let out = if let Some(lambda) = args.group.lambda {
        serde_json::json!({
            "level": level,
            "lambda": lambda,
            "pair_count": pair_count(level),
            "per_pair_bound": pair_mismatch_bound(level, lambda)?,
            "bound": chernoff_bound(level, lambda)?,
        })
    } else {
        let target = args.group.target.expect("clap enforces one of lambda/target");
        let lambda = min_lambda_for(level, target)?;
        serde_json::json!({
            "level": level,
            "target": target,
            "lambda": lambda,
            "bound": chernoff_bound(level, lambda)?,
        })
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(PASS)
}
