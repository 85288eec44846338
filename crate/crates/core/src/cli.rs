//! `stirling` command-line frontend.
//!
//! Exit codes: 0 all checks pass, 1 an identity or comparison failed,
//! 2 usage error, 3 resource limit.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::exact::{BigInt, Index, IndexCap};
use crate::identity::{self, IdentityReport, ReportSet};
use crate::oracle::{self, EnumerationBudget};
use crate::stirling::{Fault, StirlingEngine, StirlingKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Hard ceiling on the enumeration budget; 13! permutations is already
/// several billion.
const MAX_ORACLE_BUDGET: u64 = 12;

#[derive(Debug, Parser)]
#[command(
    name = "stirling",
    version,
    about = "Exact Stirling numbers and identity verification"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Largest index any command will accept.
    #[arg(long, global = true, env = "STIRLING_INDEX_CAP", default_value_t = 10_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub index_cap: u64,

    /// Largest n the brute-force oracles will enumerate.
    #[arg(long, global = true, env = "STIRLING_ORACLE_BUDGET", default_value_t = 10,
          value_parser = clap::value_parser!(u64).range(1..=MAX_ORACLE_BUDGET))]
    pub oracle_budget: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    /// Perturb one triangle entry (`kind:n:m[:delta]`) before running.
    #[arg(long = "inject-fault", global = true, hide = true)]
    pub faults: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    First,
    FirstUnsigned,
    Second,
}

impl From<KindArg> for StirlingKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::First => StirlingKind::FirstSigned,
            KindArg::FirstUnsigned => StirlingKind::FirstUnsigned,
            KindArg::Second => StirlingKind::Second,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    #[value(name = "s1-from-s2")]
    FirstFromSecond,
    #[value(name = "s2-from-s1")]
    SecondFromFirst,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print rows 0..=N of a triangle.
    Triangle {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        rows: Index,
    },
    /// Print a single value.
    Value {
        #[arg(long, value_enum)]
        kind: KindArg,
        n: Index,
        m: Index,
    },
    /// Sweep one identity (eq1..eq6, eq11..eq18) or all of them.
    Verify {
        #[arg(long, default_value = "all")]
        identity: String,
        /// Sweep bound; each identity has its own default.
        #[arg(long = "max")]
        max_index: Option<Index>,
    },
    /// Compare the engine against brute-force enumeration.
    OracleCheck {
        /// Defaults to the oracle budget.
        #[arg(long = "max")]
        max_n: Option<Index>,
    },
    /// Evaluate a conversion sum and compare with the recurrence.
    Convert {
        #[arg(long, value_enum)]
        direction: Direction,
        n: Index,
        m: Index,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = if code == 0 {
                e.to_string()
            } else {
                e.render().to_string()
            };
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_limit() {
                EXIT_LIMIT
            } else {
                EXIT_USAGE
            }
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn engine_for(config: &CliConfig) -> Result<StirlingEngine, Error> {
    let cap = IndexCap::new(usize::try_from(config.index_cap).unwrap_or(usize::MAX));
    let faults = config
        .faults
        .iter()
        .map(|f| f.parse::<Fault>())
        .collect::<Result<Vec<_>, _>>()?;
    StirlingEngine::with_faults(cap, faults)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let engine = engine_for(&cli.config)?;
    let format = cli.config.format;
    match &cli.command {
        Command::Triangle { kind, rows } => {
            let t = engine.triangle((*kind).into(), *rows)?;
            let text = match format {
                OutputFormat::Table => t.to_table(),
                OutputFormat::Csv => t.to_csv(),
                OutputFormat::Json => t.to_json() + "\n",
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Value { kind, n, m } => {
            let v = engine.stirling((*kind).into(), *n, *m)?;
            match format {
                OutputFormat::Json => writeln!(out, "\"{v}\"")?,
                _ => writeln!(out, "{v}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            identity,
            max_index,
        } => verify(&engine, identity, *max_index, format, out),
        Command::OracleCheck { max_n } => {
            let budget = EnumerationBudget::new(cli.config.oracle_budget as Index);
            oracle_check(&engine, budget, max_n.unwrap_or(budget.max_n), format, out)
        }
        Command::Convert { direction, n, m } => convert(&engine, *direction, *n, *m, format, out),
    }
}

fn verify(
    engine: &StirlingEngine,
    which: &str,
    max_index: Option<Index>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let registry = identity::registry();
    let selected: Vec<_> = if which == "all" {
        registry.iter().collect()
    } else {
        vec![registry.find(which)?]
    };
    let reports = selected
        .into_iter()
        .map(|id| {
            identity::run(
                id.as_ref(),
                engine,
                max_index.unwrap_or_else(|| id.default_max()),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let set = ReportSet::new(reports);
    match format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, &set).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            for r in &set.reports {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.id,
                    status_word(r),
                    r.range.cases,
                    r.counterexamples.len(),
                    r.elapsed_ms
                )?;
            }
        }
        OutputFormat::Table => write_report_table(&set, out)?,
    }
    Ok(if set.all_passed { EXIT_OK } else { EXIT_FAILED })
}

fn status_word(r: &IdentityReport) -> &'static str {
    if r.passed() {
        "pass"
    } else {
        "fail"
    }
}

fn write_report_table(set: &ReportSet, out: &mut dyn Write) -> io::Result<()> {
    let range_width = set
        .reports
        .iter()
        .map(|r| r.range.description.len())
        .max()
        .unwrap_or(0);
    for r in &set.reports {
        writeln!(
            out,
            "{:<5} {:<4}  {:<range_width$}  {:>6} cases  {:>3} counterexamples  {} ms",
            r.id.label(),
            status_word(r),
            r.range.description,
            r.range.cases,
            r.counterexamples.len(),
            r.elapsed_ms,
        )?;
        for c in &r.counterexamples {
            let idx: Vec<String> = c.indices.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(
                out,
                "    at {}: lhs = {}, rhs = {}",
                idx.join(", "),
                c.lhs,
                c.rhs
            )?;
        }
    }
    let failed = set.reports.iter().filter(|r| !r.passed()).count();
    if failed == 0 {
        writeln!(out, "all {} identities passed", set.reports.len())
    } else {
        writeln!(out, "{failed} of {} identities FAILED", set.reports.len())
    }
}

#[derive(Debug, Serialize)]
struct OracleMismatch {
    kind: &'static str,
    n: Index,
    m: Index,
    engine: String,
    oracle: String,
}

#[derive(Debug, Serialize)]
struct OracleSummary {
    max_n: Index,
    cases: u64,
    mismatches: Vec<OracleMismatch>,
    all_equal: bool,
}

fn oracle_check(
    engine: &StirlingEngine,
    budget: EnumerationBudget,
    max_n: Index,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if max_n > budget.max_n {
        return Err(Error::BudgetExceeded {
            n: max_n,
            budget: budget.max_n,
        }
        .into());
    }
    engine.check_index(max_n)?;
    let mut cases = 0u64;
    let mut mismatches = Vec::new();
    for n in 1..=max_n {
        let cycles = oracle::cycle_count_histogram(budget, n)?;
        let blocks = oracle::block_count_histogram(budget, n)?;
        for m in 1..=n {
            for (kind, counted) in [
                (StirlingKind::FirstUnsigned, cycles[m]),
                (StirlingKind::Second, blocks[m]),
            ] {
                cases += 1;
                let computed = engine.stirling(kind, n, m)?;
                if computed != BigInt::from(counted) {
                    mismatches.push(OracleMismatch {
                        kind: kind.name(),
                        n,
                        m,
                        engine: computed.to_string(),
                        oracle: counted.to_string(),
                    });
                }
            }
        }
    }
    let summary = OracleSummary {
        max_n,
        cases,
        all_equal: mismatches.is_empty(),
        mismatches,
    };
    match format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, &summary).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            for mm in &summary.mismatches {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    mm.kind, mm.n, mm.m, mm.engine, mm.oracle
                )?;
            }
        }
        OutputFormat::Table => {
            for mm in &summary.mismatches {
                writeln!(
                    out,
                    "{}({}, {}): engine {} != oracle {}",
                    mm.kind, mm.n, mm.m, mm.engine, mm.oracle
                )?;
            }
            if summary.all_equal {
                writeln!(out, "{cases} cases, all equal")?;
            } else {
                writeln!(
                    out,
                    "{cases} cases, {} mismatches",
                    summary.mismatches.len()
                )?;
            }
        }
    }
    Ok(if summary.all_equal {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

#[derive(Debug, Serialize)]
struct ConvertOutput {
    direction: &'static str,
    n: Index,
    m: Index,
    value: String,
    recurrence: String,
    agree: bool,
}

fn convert(
    engine: &StirlingEngine,
    direction: Direction,
    n: Index,
    m: Index,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (value, kind, name) = match direction {
        Direction::FirstFromSecond => (
            engine.first_from_second(n, m)?,
            StirlingKind::FirstSigned,
            "s1-from-s2",
        ),
        Direction::SecondFromFirst => (
            engine.second_from_first(n, m)?,
            StirlingKind::Second,
            "s2-from-s1",
        ),
    };
    let recurrence = engine.stirling(kind, n, m)?;
    let agree = value == recurrence;
    match format {
        OutputFormat::Json => {
            let doc = ConvertOutput {
                direction: name,
                n,
                m,
                value: value.to_string(),
                recurrence: recurrence.to_string(),
                agree,
            };
            serde_json::to_writer(&mut *out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => writeln!(out, "{name},{n},{m},{value},{recurrence},{agree}")?,
        OutputFormat::Table => {
            writeln!(out, "{value}")?;
            let verdict = if agree { "agrees" } else { "DISAGREES" };
            writeln!(out, "recurrence: {recurrence} ({verdict})")?;
        }
    }
    Ok(if agree { EXIT_OK } else { EXIT_FAILED })
}
