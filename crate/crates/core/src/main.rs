use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use siladic_core::counting::{count_B, CountEngine, Formulation};
use siladic_core::partitions::{OracleBound, Partitions, DEFAULT_ORACLE_LIMIT};
use siladic_core::qseries::{BiSeries, DEFAULT_K_MAX, DEFAULT_N_MAX};
use siladic_core::recurrence::build_G_recurrence;
use siladic_core::rules::{pair_cases, RuleSet};
use siladic_core::suite::{all_passed, emit_report, run_suite, CheckKind, Config, OutputFormat};

#[derive(Parser)]
#[command(
    name = "siladic",
    version,
    about = "Exact checks of the Siladic partition identity and its refinement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suite.
    Verify(VerifyArgs),
    /// Emit a count table as CSV (`k,n,count`).
    Count(CountArgs),
    /// Emit G_M or the distinct-odd product.
    Series(SeriesArgs),
    /// Print the pair-level table comparing the two rule formulations.
    Equiv(EquivArgs),
    /// List partitions of a small n.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct Window {
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n_max: usize,
    /// Defaults to --n-max.
    #[arg(long)]
    k_max: Option<usize>,
}

impl Window {
    fn k_max(&self) -> usize {
        self.k_max.unwrap_or(self.n_max)
    }
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn open(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n_max: usize,
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    k_max: usize,
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_n_max: u32,
    /// Comma-separated subset of: equivalence, oracle, eqd, eq, aux, main, limit, agreement.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include per-check wall-clock times (makes output non-reproducible).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableRole {
    #[value(name = "A")]
    Admissible,
    #[value(name = "B")]
    DistinctOdd,
    #[value(name = "a")]
    AtMost,
    #[value(name = "e")]
    Exactly,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_enum)]
    role: TableRole,
    /// Largest-part bound N for roles a and e.
    #[arg(long)]
    bound: Option<i64>,
    #[command(flatten)]
    window: Window,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Read G_M off the a_M count table.
    Counts,
    /// Rebuild G_M from the initial conditions and the q-difference equations.
    Recurrence,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFormat {
    Csv,
    Text,
}

#[derive(Args)]
struct SeriesArgs {
    /// Index M of G_M.
    #[arg(long, conflicts_with = "product", required_unless_present = "product")]
    index: Option<i64>,
    /// Emit the product of (1 + t q^(2j+1)) instead.
    #[arg(long)]
    product: bool,
    #[arg(long, value_enum, default_value_t = Method::Counts)]
    method: Method,
    #[arg(long, value_enum, default_value_t = SeriesFormat::Text)]
    format: SeriesFormat,
    #[command(flatten)]
    window: Window,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    None,
    Original,
    Reformulated,
}

#[derive(Args)]
struct EnumerateArgs {
    n: u32,
    #[arg(long)]
    max_part: Option<u32>,
    #[arg(long, value_enum, default_value_t = Filter::None)]
    filter: Filter,
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_n_max: u32,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug)]
enum Failure {
    /// Checks ran but at least one failed.
    Checks,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let checks = match args.checks {
        Some(names) => names
            .iter()
            .map(|s| s.trim().parse())
            .collect::<Result<Vec<CheckKind>, _>>()?,
        None => CheckKind::ALL.to_vec(),
    };
    let cfg = Config {
        n_max: args.n_max,
        k_max: args.k_max,
        oracle_n_max: args.oracle_n_max,
        checks,
        output_format: args.format.into(),
    };
    let reports = run_suite(&cfg)?;
    let mut out = args.output.open()?;
    emit_report(&reports, &cfg, cfg.output_format, args.timings, &mut out)?;
    out.flush()?;
    if all_passed(&reports) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn count(args: CountArgs) -> Result<(), Failure> {
    let (k_max, n_max) = (args.window.k_max(), args.window.n_max);
    let table = match args.role {
        TableRole::DistinctOdd => count_B(k_max, n_max)?,
        TableRole::Admissible => CountEngine::build(k_max, n_max)?.table_A()?,
        TableRole::AtMost | TableRole::Exactly => {
            let bound = args
                .bound
                .ok_or_else(|| Failure::Usage("--bound is required for roles a and e".into()))?;
            let top = bound.clamp(0, n_max as i64) as usize;
            let engine = CountEngine::build_with(&RuleSet::SILADIC, k_max, n_max, top)?;
            if matches!(args.role, TableRole::AtMost) {
                engine.table_a(bound)?
            } else {
                engine.table_e(bound)?
            }
        }
    };
    let mut out = args.output.open()?;
    table.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

fn series(args: SeriesArgs) -> Result<(), Failure> {
    let (k_max, n_max) = (args.window.k_max(), args.window.n_max);
    let s = match (args.product, args.index) {
        (true, _) => BiSeries::product_distinct_odd(k_max, n_max)?,
        (false, Some(m)) => match args.method {
            Method::Recurrence => build_G_recurrence(m, k_max, n_max)?,
            Method::Counts => {
                let top = m.clamp(0, n_max as i64) as usize;
                let engine = CountEngine::build_with(&RuleSet::SILADIC, k_max, n_max, top)?;
                BiSeries::from_count_table(&engine.table_a(m)?, k_max, n_max)?
            }
        },
        (false, None) => return Err(Failure::Usage("give --index or --product".into())),
    };
    let mut out = args.output.open()?;
    match args.format {
        SeriesFormat::Csv => s.write_csv(&mut out)?,
        SeriesFormat::Text => writeln!(out, "{s}")?,
    }
    out.flush()?;
    Ok(())
}

fn equiv(args: EquivArgs) -> Result<(), Failure> {
    let cases = pair_cases(&RuleSet::SILADIC);
    let mut out = args.output.open()?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &cases)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for c in &cases {
                w.serialize(c)?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                out,
                "gap  lower  upper  sum%16  upper%8  original  reformulated"
            )?;
            for c in &cases {
                writeln!(
                    out,
                    "{:>3}  {:>5}  {:>5}  {:>6}  {:>7}  {:<8}  {:<12}{}",
                    c.gap,
                    c.lower,
                    c.upper,
                    c.sum_mod16,
                    c.upper_mod8,
                    if c.original { "allow" } else { "reject" },
                    if c.reformulated { "allow" } else { "reject" },
                    if c.agrees() { "" } else { "  MISMATCH" }
                )?;
            }
            let agree = cases.iter().filter(|c| c.agrees()).count();
            writeln!(out, "{agree}/{} cases agree", cases.len())?;
        }
    }
    out.flush()?;
    if cases.iter().all(|c| c.agrees()) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn enumerate(args: EnumerateArgs) -> Result<(), Failure> {
    let rules = RuleSet::SILADIC;
    let filter = match args.filter {
        Filter::None => None,
        Filter::Original => Some(Formulation::Original),
        Filter::Reformulated => Some(Formulation::Reformulated),
    };
    let mut out = args.output.open()?;
    for p in Partitions::bounded(args.n, args.max_part, OracleBound(args.oracle_n_max))? {
        if filter.is_some_and(|f| !f.admits(&rules, p.parts())) {
            continue;
        }
        writeln!(out, "{p}\tk={}", p.statistic_k())?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Count(a) => count(a),
        Command::Series(a) => series(a),
        Command::Equiv(a) => equiv(a),
        Command::Enumerate(a) => enumerate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
