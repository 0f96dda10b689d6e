//! Command-line front-end: `theta-jordan verify [flags]`.
//!
//! Exit codes: 0 success, 1 property violation, 2 usage, 3 I/O.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::abelian::FiniteAbelianGroup;
use crate::bundlemodel::{self, DiffeoClass, Mode, OracleSettings, ReportRun};
use crate::error::Error;
use crate::lattice::DEFAULT_ORACLE_CAP;
use crate::report::{ConfigEcho, ReportDocument, Timestamps};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassSelection {
    #[value(name = "0")]
    Even,
    #[value(name = "1")]
    Odd,
    Both,
}

impl ClassSelection {
    fn classes(self) -> Vec<DiffeoClass> {
        match self {
            ClassSelection::Even => vec![DiffeoClass::TRIVIAL],
            ClassSelection::Odd => vec![DiffeoClass::TWISTED],
            ClassSelection::Both => vec![DiffeoClass::TRIVIAL, DiffeoClass::TWISTED],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "theta-jordan", version)]
#[command(about = "Verify minimal abelian indices of finite theta groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute minimal abelian indices of G_n and check that each is at least n
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Manifold class by Chern-number parity: 0, 1 or both
    #[arg(long = "class", value_enum, default_value = "both")]
    class: ClassSelection,

    /// Largest level n
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..))]
    max_n: i64,

    #[arg(long, value_enum, default_value = "both")]
    mode: Mode,

    /// Largest group order handed to the exhaustive oracle
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    oracle_cap: u64,

    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Run on Heis(K) for this K instead of the cyclic family, e.g. Z2xZ2
    #[arg(long)]
    base_group: Option<String>,

    /// Seed for randomized table spot checks
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Omit wall-clock fields from the report
    #[arg(long)]
    no_timestamps: bool,

    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub classes: ClassSelection,
    pub n_max: i64,
    pub mode: Mode,
    pub oracle_cap: u64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub base_group_override: Option<FiniteAbelianGroup>,
    pub seed: u64,
    pub timestamps: bool,
    pub inject_fault: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            classes: ClassSelection::Both,
            n_max: 6,
            mode: Mode::Both,
            oracle_cap: DEFAULT_ORACLE_CAP,
            output_format: OutputFormat::Table,
            output_path: None,
            base_group_override: None,
            seed: 0,
            timestamps: true,
            inject_fault: false,
        }
    }
}

/// Parses `argv` (program name first). Errors carry clap's usage message.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let Command::Verify(a) = Cli::try_parse_from(argv)?.command;
    let base_group_override = a
        .base_group
        .as_deref()
        .map(str::parse::<FiniteAbelianGroup>)
        .transpose()
        .map_err(|e| {
            clap::Error::raw(
                clap::error::ErrorKind::ValueValidation,
                format!("--base-group: {e}\n"),
            )
        })?;
    Ok(RunConfig {
        classes: a.class,
        n_max: a.max_n,
        mode: a.mode,
        oracle_cap: a.oracle_cap,
        output_format: a.format,
        output_path: a.out,
        base_group_override,
        seed: a.seed,
        timestamps: !a.no_timestamps,
        inject_fault: a.inject_fault,
    })
}

#[derive(Debug)]
pub struct RunOutcome {
    pub document: ReportDocument,
    /// Property violations and oracle/structural disagreements.
    pub violations: Vec<String>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> u8 {
        if self.violations.is_empty() {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }
}

/// Runs the verification described by `config` without writing anything.
pub fn run(config: &RunConfig) -> Result<RunOutcome, Error> {
    let start = Instant::now();
    let settings = OracleSettings {
        cap: config.oracle_cap,
        seed: config.seed,
        inject_fault: config.inject_fault,
        ..OracleSettings::default()
    };
    let runs: Vec<ReportRun> = match &config.base_group_override {
        Some(k) => vec![bundlemodel::verify_base(k, config.mode, &settings)?],
        None => config
            .classes
            .classes()
            .into_iter()
            .map(|m| bundlemodel::verify_class(m, config.n_max, config.mode, &settings))
            .collect::<Result<_, _>>()?,
    };
    let mut violations = Vec::new();
    let mut reports = Vec::with_capacity(runs.len());
    for run in runs {
        violations.extend(run.report.violations());
        violations.extend(run.disagreements);
        reports.push(run.report);
    }
    let echo = ConfigEcho {
        classes: match &config.base_group_override {
            Some(_) => reports.iter().map(|r| r.manifold_class.parity).collect(),
            None => config.classes.classes().iter().map(|c| c.parity).collect(),
        },
        max_n: config.n_max as u64,
        mode: config.mode,
        oracle_cap: config.oracle_cap,
        base_group: config.base_group_override.as_ref().map(ToString::to_string),
        seed: config.seed,
    };
    let mut document = ReportDocument::new(echo, reports);
    if config.timestamps {
        document.timestamps = Some(Timestamps {
            generated_at_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
            total_elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    } else {
        document.strip_timestamps();
    }
    Ok(RunOutcome {
        document,
        violations,
    })
}

pub fn render(document: &ReportDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => document.to_json(),
        OutputFormat::Csv => document.to_csv(),
        OutputFormat::Table => document.to_table(),
    }
}

/// Runs, writes the report and returns the process exit code.
pub fn execute(config: &RunConfig) -> u8 {
    let outcome = match run(config) {
        Ok(o) => o,
        Err(e @ Error::AxiomViolation(_)) => {
            eprintln!("error: {e}");
            return EXIT_VIOLATION;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = render(&outcome.document, config.output_format);
    match &config.output_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_IO;
            }
        }
        None => print!("{text}"),
    }
    for v in &outcome.violations {
        eprintln!("violation: {v}");
    }
    outcome.exit_code()
}
