//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain failure (invalid tables, inconsistency,
//! infeasibility), 2 usage, parse or I/O failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::document::{format_number, Document};
use crate::entropy::{maxent_ipf, measure_u1, measure_u2, mvd_strength};
use crate::error::Error;
use crate::extension::{extension_star, project_interval, reconstruct};
use crate::measures::{distance_d0, enumerate_schemes, measure_u0, rank_schemes};
use crate::model::{var_set, RealDistribution, Scheme, VarSet};

#[derive(Debug, Parser)]
#[command(
    name = "ivprob",
    version,
    about = "Interval-valued probability distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Measure {
    U0,
    U1,
    U2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a document against the definition of interval distributions.
    Validate { path: PathBuf },
    /// Joint interval extension E(I)* of a database.
    Extend {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Interval projection of a distribution onto a set of variables.
    Project {
        path: PathBuf,
        /// Comma-separated variable names.
        #[arg(long)]
        onto: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Project onto a scheme and extend back to the joint space.
    Reconstruct {
        path: PathBuf,
        /// Subsets separated by `|`, variables by `,`; e.g. "A,B|B,C".
        #[arg(long)]
        scheme: String,
        /// Print the projected database instead of the reconstruction.
        #[arg(long)]
        projections: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Uncertainty of a distribution.
    Measure {
        path: PathBuf,
        #[arg(value_enum)]
        measure: Measure,
    },
    /// d0 distance between two distributions.
    Distance { first: PathBuf, second: PathBuf },
    /// Maximum-entropy joint of a real-valued database.
    Maxent {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Strength H(W|U) - H(W|U∪Z) of the dependency U ->-> W.
    Mvd {
        path: PathBuf,
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long)]
        w: String,
    },
    /// Rank schemes by information loss.
    Rank {
        path: PathBuf,
        #[arg(long, num_args = 1.., conflicts_with = "enumerate", required_unless_present = "enumerate")]
        schemes: Vec<String>,
        /// Rank every scheme with at most this many subsets.
        #[arg(long)]
        enumerate: Option<usize>,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for a failed command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Io(_)
        | Error::UnknownVariable(_)
        | Error::UnknownLabel { .. }
        | Error::TupleLength { .. }
        | Error::LengthMismatch { .. }
        | Error::InvalidScheme(_)
        | Error::InvalidVariable(_)
        | Error::DuplicateVariable(_)
        | Error::DuplicateLabel { .. }
        | Error::EmptyVariableSet
        | Error::OverlappingSets(_) => 2,
        _ => 1,
    }
}

fn emit(out: &mut dyn Write, doc: &Document, format: Format) -> Result<i32, Error> {
    let text = match format {
        Format::Json => doc.to_json(),
        Format::Table => doc.to_text_table(),
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Io(e.to_string()))?;
    Ok(0)
}

fn emit_scalar(out: &mut dyn Write, x: f64) -> Result<i32, Error> {
    writeln!(out, "{}", format_number(x)).map_err(|e| Error::Io(e.to_string()))?;
    Ok(0)
}

fn names(list: &str) -> VarSet {
    var_set(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
}

fn load(path: &Path) -> Result<Document, Error> {
    Document::read(path)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Validate { path } => {
            let doc = load(&path)?;
            let violations = match doc.to_database() {
                Ok(db) => db.validate(),
                Err(Error::Invalid(v)) => v,
                Err(e) => return Err(e),
            };
            let mut text = String::new();
            if violations.is_empty() {
                text.push_str("OK\n");
            }
            for v in &violations {
                text.push_str(&format!("{v}\n"));
            }
            out.write_all(text.as_bytes())
                .map_err(|e| Error::Io(e.to_string()))?;
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Extend { path, format } => {
            let db = load(&path)?.to_database()?;
            emit(
                out,
                &Document::from_distribution(&extension_star(&db)?),
                format,
            )
        }
        Command::Project { path, onto, format } => {
            let i = load(&path)?.to_distribution()?;
            let proj = project_interval(&i, &names(&onto))?;
            emit(out, &Document::from_distribution(&proj), format)
        }
        Command::Reconstruct {
            path,
            scheme,
            projections,
            format,
        } => {
            let i = load(&path)?.to_distribution()?;
            let scheme: Scheme = scheme.parse()?;
            let r = reconstruct(&i, &scheme)?;
            let doc = if projections {
                Document::from_database(&r.projections)
            } else {
                Document::from_distribution(&r.joint)
            };
            emit(out, &doc, format)
        }
        Command::Measure { path, measure } => {
            let i = load(&path)?.to_distribution()?;
            i.check()?;
            let v = match measure {
                Measure::U0 => measure_u0(&i),
                Measure::U1 => measure_u1(&i)?,
                Measure::U2 => measure_u2(&i)?,
            };
            emit_scalar(out, v)
        }
        Command::Distance { first, second } => {
            let a = load(&first)?.to_distribution()?;
            let b = load(&second)?.to_distribution()?;
            emit_scalar(out, distance_d0(&a, &b)?)
        }
        Command::Maxent { path, format } => {
            let db = load(&path)?.to_database()?;
            emit(out, &Document::from_real(&maxent_ipf(&db)?), format)
        }
        Command::Mvd { path, u, w } => {
            let i = load(&path)?.to_distribution()?;
            let p = RealDistribution::from_degenerate(&i)?;
            emit_scalar(out, mvd_strength(&p, &names(&u), &names(&w))?)
        }
        Command::Rank {
            path,
            schemes,
            enumerate,
        } => {
            let i = load(&path)?.to_distribution()?;
            let schemes = match enumerate {
                Some(k) => enumerate_schemes(i.space(), k)?,
                None => schemes
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<Vec<Scheme>, _>>()?,
            };
            let mut text = String::new();
            for r in rank_schemes(&i, &schemes)? {
                text.push_str(&format!("{}\t{}\n", r.scheme, format_number(r.loss)));
            }
            out.write_all(text.as_bytes())
                .map_err(|e| Error::Io(e.to_string()))?;
            Ok(0)
        }
    }
}
