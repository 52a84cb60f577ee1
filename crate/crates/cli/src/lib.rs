//! The `qf` command line.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict, 2 a usage
//! or file-format error, 3 a violated precondition.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand};
use quandle_core::composition::{
    closure_explore, closure_group, compose, distributivity_witness, power, word_operation, OpWord,
    QuandleGroup, EXPLORE_LIMIT,
};
use quandle_core::enumerate::{
    composition_survey, enumerate_quandles_capped, enumerate_racks, DEFAULT_MAX_N,
};
use quandle_core::families::{associated_quandle, validate_family};
use quandle_core::iso::is_isomorphic;
use quandle_core::{n_quandle_order, Error, OpTable};
use serde_json::json;

pub mod document;
pub mod report;
mod reproduce;
pub mod specs;

use document::{FamilyDocument, TableDocument};
use report::{Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("format: {0}")]
    Format(String),
    #[error("precondition: {0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Format(_) => EXIT_USAGE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        use Error::*;
        match e {
            EmptyCarrier
            | CarrierTooLarge(_)
            | DimensionMismatch { .. }
            | EntryOutOfRange { .. }
            | IndexOutOfRange { .. }
            | NotPermutation(_)
            | NotGroup(_)
            | UnknownCatalogName(_)
            | UnknownGenerator(_)
            | MalformedFamily(_)
            | WordSyntax(_) => CliError::Format(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qf", version, about = "Compute with finite racks and quandles")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Print tables with labels starting at 1.
    #[arg(long, global = true)]
    one_indexed: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a catalogued table, a construction or a group.
    Build { spec: String },
    /// Report which axioms a table satisfies.
    Check { table: String },
    /// The composition `a (t1 t2) b = t2(t1(a, b), b)`.
    Compose { first: String, second: String },
    /// The k-th power under composition.
    #[command(allow_negative_numbers = true)]
    Power { table: String, k: i64 },
    /// Whether the first operation distributes over the second.
    Distrib { star: String, circ: String },
    /// Evaluate a word such as `a^2 b^-1` in the given generators.
    Word {
        /// Generators followed by the word.
        #[arg(required = true, num_args = 2..)]
        args: Vec<String>,
        /// Generator names, comma separated; `a, b, c, ..` by default.
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
    },
    /// The group generated by mutually distributive quandle operations.
    Closure {
        #[arg(required = true)]
        generators: Vec<String>,
        /// Skip the distributivity check and accept any right quasigroups.
        #[arg(long)]
        explore: bool,
        #[arg(long, default_value_t = EXPLORE_LIMIT)]
        limit: usize,
    },
    /// Validate a family or build its associated quandle.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Quandles of order n, one per isomorphism class unless --labeled.
    Enumerate {
        n: usize,
        #[arg(long)]
        labeled: bool,
        /// Enumerate racks instead (n <= 5).
        #[arg(long)]
        racks: bool,
        /// Print only the number of tables.
        #[arg(long)]
        count_only: bool,
    },
    /// Classify every ordered product of the given tables.
    Survey {
        #[arg(required = true)]
        tables: Vec<String>,
    },
    /// Find an isomorphism between two tables.
    Iso { first: String, second: String },
    /// Minimal number of generators of a quandle.
    Rank { table: String },
    /// Run a named example end to end; `list` prints the names.
    Reproduce { id: String },
}

#[derive(Subcommand, Debug)]
enum FamilyAction {
    Validate { spec: String },
    Assoc { spec: String },
}

/// A command's rendered report and exit code.
pub struct Outcome {
    pub report: Report,
    pub code: i32,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome {
            report,
            code: EXIT_OK,
        }
    }

    fn verdict(report: Report, holds: bool) -> Self {
        Outcome {
            report,
            code: if holds { EXIT_OK } else { EXIT_FALSE },
        }
    }
}

/// Runs `qf` with the enumeration cap taken from `QF_MAX_N`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cap = match std::env::var("QF_MAX_N") {
        Ok(v) => match v.trim().parse() {
            Ok(cap) => cap,
            Err(_) => {
                let _ = writeln!(err, "error: QF_MAX_N must be a number, found `{v}`");
                return EXIT_USAGE;
            }
        },
        Err(_) => DEFAULT_MAX_N,
    };
    run_with_cap(args, cap, out, err)
}

pub fn run_with_cap<I, T>(args: I, cap: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command, cap) {
        Ok(outcome) => {
            let _ = write!(
                out,
                "{}",
                outcome.report.render(cli.format, cli.one_indexed)
            );
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))
}

/// A table argument: an existing file, or else a build spec.
pub fn load_document(arg: &str) -> Result<TableDocument, CliError> {
    if Path::new(arg).is_file() {
        TableDocument::parse(&read(arg)?)
    } else {
        specs::build(arg).map_err(|e| match e {
            CliError::Usage(msg) => CliError::Usage(format!(
                "`{arg}` is neither a file nor a known table ({msg})"
            )),
            other => other,
        })
    }
}

pub fn load_table(arg: &str) -> Result<OpTable, CliError> {
    load_document(arg)?.to_table()
}

fn classified(t: &OpTable, name: Option<&str>) -> TableDocument {
    TableDocument::from_table(t, name).with_meta("classification", t.classification())
}

fn triple(t: Option<(usize, usize, usize)>) -> serde_json::Value {
    t.map_or(serde_json::Value::Null, |(a, b, c)| json!([a, b, c]))
}

fn execute(command: &Command, cap: usize) -> Result<Outcome, CliError> {
    match command {
        Command::Build { spec } => Ok(Outcome::ok(Report::new().table(specs::build(spec)?))),
        Command::Check { table } => {
            let t = load_table(table)?;
            let r = t.axioms_report();
            let report = Report::new()
                .field("n", t.n())
                .field("classification", r.classification.to_string())
                .field("idempotent", r.idempotent)
                .field("right_quasigroup", r.right_quasigroup)
                .field("self_distributive", r.self_distributive)
                .field("first_non_idempotent", t.first_non_idempotent())
                .field("first_non_bijective_column", t.first_non_bijective_column())
                .field(
                    "first_non_distributive_triple",
                    triple(t.first_non_distributive_triple()),
                );
            Ok(Outcome::verdict(report, t.is_quandle()))
        }
        Command::Compose { first, second } => {
            let (a, b) = (load_table(first)?, load_table(second)?);
            let product = compose(&a, &b)?;
            Ok(Outcome::ok(Report::new().table(classified(&product, None))))
        }
        Command::Power { table, k } => {
            let t = power(&load_table(table)?, *k)?;
            Ok(Outcome::ok(Report::new().table(classified(&t, None))))
        }
        Command::Distrib { star, circ } => {
            let (s, c) = (load_table(star)?, load_table(circ)?);
            let forward = distributivity_witness(&s, &c)?;
            let backward = distributivity_witness(&c, &s)?;
            let report = Report::new()
                .field("distributes", forward.is_none())
                .field("counterexample", triple(forward))
                .field("converse_distributes", backward.is_none())
                .field("converse_counterexample", triple(backward));
            Ok(Outcome::verdict(report, forward.is_none()))
        }
        Command::Word { args, names } => {
            let (word_text, gens) = args.split_last().expect("at least two arguments");
            let generators = gens
                .iter()
                .map(|g| load_table(g))
                .collect::<Result<Vec<_>, _>>()?;
            let names = generator_names(names.as_deref(), generators.len())?;
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let word = OpWord::parse(word_text, &refs)?;
            let t = word_operation(&generators, &word)?;
            Ok(Outcome::ok(Report::new().table(
                classified(&t, None).with_meta("word", word.display_with(&refs)),
            )))
        }
        Command::Closure {
            generators,
            explore,
            limit,
        } => {
            let tables = generators
                .iter()
                .map(|g| load_table(g))
                .collect::<Result<Vec<_>, _>>()?;
            let group = if *explore {
                closure_explore(&tables, *limit)?
            } else {
                closure_group(&tables)?
            };
            Ok(Outcome::ok(closure_report(&group, tables.len())))
        }
        Command::Family { action } => match action {
            FamilyAction::Validate { spec } => {
                let spec = FamilyDocument::parse(&read(spec)?)?.to_spec()?;
                let verdict = validate_family(&spec)?;
                let mut report = Report::new()
                    .field("kind", spec.kind().as_str())
                    .field("valid", verdict.is_none());
                if let Some(v) = &verdict {
                    report.push_field("axiom", v.axiom());
                    report.push_field("counterexample", v.to_string());
                }
                Ok(Outcome::verdict(report, verdict.is_none()))
            }
            FamilyAction::Assoc { spec } => {
                let spec = FamilyDocument::parse(&read(spec)?)?.to_spec()?;
                let t = associated_quandle(&spec)?;
                let doc = classified(&t, None)
                    .with_meta("family", spec.kind().as_str())
                    .with_meta("layout", format!("(x, a) -> x * {} + a", spec.index_size()));
                Ok(Outcome::ok(Report::new().table(doc)))
            }
        },
        Command::Enumerate {
            n,
            labeled,
            racks,
            count_only,
        } => {
            let tables = if *racks {
                enumerate_racks(*n, !labeled)?
            } else {
                enumerate_quandles_capped(*n, !labeled, cap)?
            };
            let mut report = Report::new()
                .field("n", *n)
                .field("structure", if *racks { "rack" } else { "quandle" })
                .field("up_to_isomorphism", !labeled)
                .field("count", tables.len());
            if !count_only {
                for t in &tables {
                    report.push_table(TableDocument::from_table(t, None));
                }
            }
            Ok(Outcome::ok(report))
        }
        Command::Survey { tables } => {
            let loaded = tables
                .iter()
                .map(|t| load_table(t))
                .collect::<Result<Vec<_>, _>>()?;
            let survey = composition_survey(&loaded)?;
            let mut report = Report::new().field("tables", tables.clone());
            for (i, row) in survey.grid.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    report.push_section(
                        &format!("{} {}", tables[i], tables[j]),
                        Report::new()
                            .field("classification", cell.classification.to_string())
                            .field("second_distributes_over_first", cell.distributes)
                            .field("first_distributes_over_second", cell.converse_distributes)
                            .field("trivial", cell.product.is_trivial()),
                    );
                }
            }
            Ok(Outcome::ok(report))
        }
        Command::Iso { first, second } => {
            let (a, b) = (load_table(first)?, load_table(second)?);
            let map = is_isomorphic(&a, &b);
            let found = map.is_some();
            let report = Report::new()
                .field("isomorphic", found)
                .field("map", map.map(|p| json!(p.images())));
            Ok(Outcome::verdict(report, found))
        }
        Command::Rank { table } => {
            let t = load_table(table)?;
            let witness = t.rank_witness()?;
            let report = Report::new()
                .field("rank", witness.len())
                .field("generators", witness)
                .field("orbits", t.orbit_count()?)
                .field("n_quandle_order", n_quandle_order(&t)?);
            Ok(Outcome::ok(report))
        }
        Command::Reproduce { id } => reproduce::run(id, cap),
    }
}

fn generator_names(names: Option<&[String]>, count: usize) -> Result<Vec<String>, CliError> {
    match names {
        Some(names) if names.len() == count => Ok(names.to_vec()),
        Some(names) => Err(CliError::Usage(format!(
            "{} names given for {count} generators",
            names.len()
        ))),
        None => Ok(quandle_core::composition::default_generator_names(count)),
    }
}

fn closure_report(group: &QuandleGroup, generators: usize) -> Report {
    let names = quandle_core::composition::default_generator_names(generators);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let words: Vec<String> = (0..group.order())
        .map(|i| group.word(i).display_with(&refs))
        .collect();
    let iso_type = group.iso_type().unwrap_or_else(|_| "unresolved".into());
    let mut report = Report::new()
        .field("order", group.order())
        .field("abelian", group.is_abelian())
        .field("iso_type", iso_type)
        .field(
            "quandles",
            group.elements().iter().filter(|t| t.is_quandle()).count(),
        )
        .field("words", words.clone());
    for (i, t) in group.elements().iter().enumerate() {
        report
            .push_table(classified(t, Some(&format!("element {i}"))).with_meta("word", &words[i]));
    }
    report
}
