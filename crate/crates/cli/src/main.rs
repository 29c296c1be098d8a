//! Command-line front end for the fuzzy answer set pipeline.
//!
//! Every subcommand reads one `.faso` file, runs a slice of the pipeline,
//! and writes a single result to standard output:
//!
//! * `parse` — validate and echo the program in canonical form;
//! * `ground` — instantiate variables over the Herbrand universe;
//! * `solve` — enumerate fuzzy answer sets;
//! * `rank` — order the answer sets by the preference rules;
//! * `translate` — compile preference rules to auxiliary generator rules;
//! * `verify` — check the compilation against the direct semantics.
//!
//! `--format json` wraps the payload in a stable envelope (schema version,
//! command, digest of the input) with grades as exact decimal or rational
//! strings; the default text format prints answer sets as sorted
//! `literal:grade` lists and rank tiers under `#1 (most preferred)`
//! headers. Exit status is 0 on success, 1 on input errors, 2 when a
//! resource limit is hit.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use faso_core::grounder::{ground_program, GroundError, GroundOptions};
use faso_core::kernel::{FuzzyInterpretation, Program};
use faso_core::parser::{parse_program, render_program, ParseError};
use faso_core::preferences::{rank, Strategy};
use faso_core::solver::{enumerate_answer_sets, Engine, SolveError, SolveOptions};
use faso_core::translator::{
    translate, verify_translation, TranslateError, TranslateOptions, VerifyError,
};

#[derive(Parser)]
#[command(name = "faso", version, about = "Fuzzy answer set solving and preference ranking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a program and echo it in canonical form.
    Parse { file: PathBuf },
    /// Instantiate variables over the Herbrand universe.
    Ground {
        file: PathBuf,
        #[command(flatten)]
        grounding: GroundingFlags,
    },
    /// Enumerate the fuzzy answer sets.
    Solve {
        file: PathBuf,
        /// Enumeration engine.
        #[arg(long, value_enum, default_value_t = EngineArg::Split)]
        engine: EngineArg,
        /// Keep at most this many answer sets, in output order.
        #[arg(long, value_name = "N")]
        max_models: Option<usize>,
        #[command(flatten)]
        grounding: GroundingFlags,
        #[command(flatten)]
        solving: SolvingFlags,
    },
    /// Rank the answer sets by the preference rules.
    Rank {
        file: PathBuf,
        /// Aggregation of per-rule comparisons.
        #[arg(long, value_enum, default_value_t = StrategyArg::Maximal)]
        strategy: StrategyArg,
        #[command(flatten)]
        grounding: GroundingFlags,
        #[command(flatten)]
        solving: SolvingFlags,
    },
    /// Compile preference rules to auxiliary generator rules.
    Translate {
        file: PathBuf,
        #[command(flatten)]
        grounding: GroundingFlags,
        #[command(flatten)]
        translating: TranslatingFlags,
    },
    /// Check the compiled form against the direct preference semantics.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        grounding: GroundingFlags,
        #[command(flatten)]
        solving: SolvingFlags,
        #[command(flatten)]
        translating: TranslatingFlags,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Ground { .. } => "ground",
            Command::Solve { .. } => "solve",
            Command::Rank { .. } => "rank",
            Command::Translate { .. } => "translate",
            Command::Verify { .. } => "verify",
        }
    }

    fn file(&self) -> &PathBuf {
        match self {
            Command::Parse { file }
            | Command::Ground { file, .. }
            | Command::Solve { file, .. }
            | Command::Rank { file, .. }
            | Command::Translate { file, .. }
            | Command::Verify { file, .. } => file,
        }
    }
}

#[derive(Args, Clone, Copy)]
struct GroundingFlags {
    /// Cap on the number of ground rule instances.
    #[arg(long, value_name = "N", default_value_t = GroundOptions::default().max_instances)]
    max_instances: usize,
}

impl GroundingFlags {
    fn options(self) -> GroundOptions {
        GroundOptions { max_instances: self.max_instances, ..GroundOptions::default() }
    }
}

#[derive(Args, Clone, Copy)]
struct SolvingFlags {
    /// Cap on sweeps of any single fixpoint loop.
    #[arg(long, value_name = "N", default_value_t = SolveOptions::default().iteration_cap)]
    iteration_cap: u64,
    /// Cap on the brute engine's candidate space.
    #[arg(long, value_name = "N", default_value_t = SolveOptions::default().candidate_cap)]
    candidate_cap: u64,
}

impl SolvingFlags {
    fn options(self) -> SolveOptions {
        SolveOptions { iteration_cap: self.iteration_cap, candidate_cap: self.candidate_cap }
    }
}

#[derive(Args, Clone, Copy)]
struct TranslatingFlags {
    /// Cap on disjunctive-normal-form clauses per combination.
    #[arg(long, value_name = "N", default_value_t = TranslateOptions::default().max_clauses)]
    max_clauses: usize,
}

impl TranslatingFlags {
    fn options(self) -> TranslateOptions {
        TranslateOptions { max_clauses: self.max_clauses }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Split,
    Brute,
}

impl From<EngineArg> for Engine {
    fn from(engine: EngineArg) -> Engine {
        match engine {
            EngineArg::Split => Engine::Split,
            EngineArg::Brute => Engine::Brute,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Pareto,
    Maximal,
}

impl From<StrategyArg> for Strategy {
    fn from(strategy: StrategyArg) -> Strategy {
        match strategy {
            StrategyArg::Pareto => Strategy::Pareto,
            StrategyArg::Maximal => Strategy::Maximal,
        }
    }
}

impl StrategyArg {
    fn name(self) -> &'static str {
        match self {
            StrategyArg::Pareto => "pareto",
            StrategyArg::Maximal => "maximal",
        }
    }
}

/// A failed run, split by exit status: 1 for bad input, 2 for a resource
/// limit.
enum CliError {
    Input(String),
    Resource(String),
}

impl CliError {
    fn status(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Resource(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(message) | CliError::Resource(message) => f.write_str(message),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(err: ParseError) -> CliError {
        CliError::Input(err.to_string())
    }
}

impl From<GroundError> for CliError {
    fn from(err: GroundError) -> CliError {
        CliError::Resource(err.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(err: SolveError) -> CliError {
        CliError::Resource(err.to_string())
    }
}

impl From<TranslateError> for CliError {
    fn from(err: TranslateError) -> CliError {
        match err {
            TranslateError::SizeExplosion { .. } => CliError::Resource(err.to_string()),
            TranslateError::ReservedPrefixCollision { .. } => CliError::Input(err.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(err: VerifyError) -> CliError {
        match err {
            VerifyError::Translate(inner) => inner.into(),
            VerifyError::Solve(inner) => inner.into(),
            VerifyError::CorrespondenceFailure { .. } => CliError::Input(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let status = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(status);
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.status())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let file = cli.command.file();
    let source = fs::read_to_string(file)
        .map_err(|err| CliError::Input(format!("cannot read {}: {err}", file.display())))?;
    let digest = digest(&source);
    let program = parse_program(&source)?;

    let (payload, text, status) = match &cli.command {
        Command::Parse { .. } => program_output(&program),
        Command::Ground { grounding, .. } => {
            let ground = ground_program(&program, &grounding.options())?;
            program_output(&ground)
        }
        Command::Solve { engine, max_models, grounding, solving, .. } => {
            let ground = ground_program(&program, &grounding.options())?;
            let report =
                enumerate_answer_sets(&ground.generators, (*engine).into(), &solving.options())?;
            let total = report.answer_sets.len();
            let kept = &report.answer_sets[..max_models.map_or(total, |n| n.min(total))];
            let payload = json!({
                "answer_sets": kept.iter().map(interpretation_value).collect::<Vec<_>>(),
                "total": total,
            });
            let mut text = String::new();
            for interpretation in kept {
                writeln!(text, "{interpretation}").expect("string write succeeds");
            }
            (payload, text, 0)
        }
        Command::Rank { strategy, grounding, solving, .. } => {
            let ground = ground_program(&program, &grounding.options())?;
            let report =
                enumerate_answer_sets(&ground.generators, Engine::Split, &solving.options())?;
            let ranking =
                rank(&report.answer_sets, &ground.preferences, (*strategy).into());
            let tiers: Vec<Value> = ranking
                .tiers
                .iter()
                .map(|tier| {
                    Value::Array(
                        tier.iter()
                            .map(|&i| interpretation_value(&report.answer_sets[i]))
                            .collect(),
                    )
                })
                .collect();
            let payload = json!({
                "strategy": strategy.name(),
                "tiers": tiers,
                "cycles_detected": ranking.cycles_detected,
            });
            let mut text = String::new();
            for (position, tier) in ranking.tiers.iter().enumerate() {
                if position == 0 {
                    writeln!(text, "#1 (most preferred)").expect("string write succeeds");
                } else {
                    writeln!(text, "#{}", position + 1).expect("string write succeeds");
                }
                for &i in tier {
                    writeln!(text, "  {}", report.answer_sets[i]).expect("string write succeeds");
                }
            }
            if ranking.cycles_detected {
                writeln!(text, "preference cycle: the final tier collects the remainder")
                    .expect("string write succeeds");
            }
            (payload, text, 0)
        }
        Command::Translate { grounding, translating, .. } => {
            let ground = ground_program(&program, &grounding.options())?;
            let translation = translate(&ground, &translating.options())?;
            let mut index: BTreeMap<String, BTreeMap<&str, &str>> = BTreeMap::new();
            for ((rule, key), predicate) in &translation.rule_index {
                index.entry(rule.to_string()).or_default().insert(key, predicate);
            }
            let rendered = render_program(&translation.program);
            let payload = json!({ "program": rendered, "rule_index": index });
            (payload, rendered, 0)
        }
        Command::Verify { grounding, solving, translating, .. } => {
            let ground = ground_program(&program, &grounding.options())?;
            let report =
                verify_translation(&ground, &translating.options(), &solving.options())?;
            let matched = report.checks.iter().filter(|c| c.matched).count();
            let answer_sets = report
                .checks
                .iter()
                .map(|c| c.answer_set.to_string())
                .collect::<std::collections::BTreeSet<_>>()
                .len();
            let mismatches: Vec<Value> = report
                .checks
                .iter()
                .filter(|c| !c.matched)
                .map(|c| {
                    json!({
                        "answer_set": c.answer_set.to_string(),
                        "rule": c.rule.to_string(),
                        "outcome": c.outcome.to_string(),
                    })
                })
                .collect();
            let all_matched = report.all_matched();
            let payload = json!({
                "answer_sets": answer_sets,
                "checks": report.checks.len(),
                "matched": matched,
                "all_matched": all_matched,
                "mismatches": mismatches,
            });
            let mut text = format!(
                "answer sets: {answer_sets}\nchecks: {}\nmatched: {matched}\nverification: {}\n",
                report.checks.len(),
                if all_matched { "OK" } else { "FAILED" },
            );
            for check in report.checks.iter().filter(|c| !c.matched) {
                writeln!(text, "mismatch: rule {} on {} ({})", check.rule, check.answer_set,
                    check.outcome)
                    .expect("string write succeeds");
            }
            if !all_matched {
                eprintln!("error: compiled program disagrees with the direct semantics");
            }
            (payload, text, u8::from(!all_matched))
        }
    };

    let output = match cli.format {
        Format::Json => {
            let document = json!({
                "schema_version": "1",
                "command": cli.command.name(),
                "program_digest": digest,
                "payload": payload,
            });
            let mut rendered =
                serde_json::to_string_pretty(&document).expect("JSON document serializes");
            rendered.push('\n');
            rendered
        }
        Format::Text => text,
    };
    let mut stdout = io::stdout().lock();
    match stdout.write_all(output.as_bytes()).and_then(|()| stdout.flush()) {
        Ok(()) => Ok(status),
        Err(err) if err.kind() == io::ErrorKind::BrokenPipe => Ok(status),
        Err(err) => Err(CliError::Input(format!("cannot write output: {err}"))),
    }
}

/// Payload and text echo for the commands whose result is a program.
fn program_output(program: &Program) -> (Value, String, u8) {
    let rendered = render_program(program);
    let payload = json!({
        "program": rendered,
        "generator_rules": program.generators.len(),
        "preference_rules": program.preferences.len(),
    });
    (payload, rendered, 0)
}

/// An answer set as a literal → grade-string object, keys sorted.
fn interpretation_value(interpretation: &FuzzyInterpretation) -> Value {
    let map: Map<String, Value> = interpretation
        .support()
        .map(|(literal, grade)| (literal.to_string(), Value::String(grade.to_string())))
        .collect();
    Value::Object(map)
}

fn digest(source: &str) -> String {
    let hash = Sha256::digest(source.as_bytes());
    let mut hex = String::with_capacity(7 + 2 * hash.len());
    hex.push_str("sha256:");
    for byte in hash {
        write!(hex, "{byte:02x}").expect("string write succeeds");
    }
    hex
}
