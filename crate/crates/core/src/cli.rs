//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a query that expects a positive answer
//! has none (or a check reports violations), 2 on usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::binseq::{e0, e0star, f_n, witness_level, BinSeq};
use crate::cantor::{embed, format_rational, parse_rational, to_decimal, unembed};
use crate::oracle::{check_theorem_with_cap, max_prefix_from_env};
use crate::render::{arcs_for, render, RenderSpec};
use crate::witness::{simplify, synthesize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "knaster",
    version,
    about = "Exact path-connectivity in the Knaster continuum"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Relation {
    Fn,
    E0,
    E0star,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide F_n, E_0 or E_0* between two sequences.
    Decide {
        #[arg(long, value_enum)]
        rel: Relation,
        /// Level for `--rel fn`.
        #[arg(long)]
        n: Option<usize>,
        a: BinSeq,
        b: BinSeq,
    },
    /// Exact Cantor-set embedding of a sequence.
    Embed {
        seq: BinSeq,
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Sequence embedding to a rational, if any.
    Unembed {
        #[arg(value_parser = parse_rational_arg, allow_hyphen_values = true)]
        rat: BigRational,
    },
    /// Arc chain joining two related sequences.
    Path {
        a: BinSeq,
        b: BinSeq,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        simplify: bool,
    },
    /// Exhaustive finite check against the decider.
    Oracle {
        #[arg(long)]
        prefix: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an SVG drawing of the continuum.
    Render {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        levels: usize,
        #[arg(long, default_value_t = 1000)]
        width: u32,
        #[arg(long, default_value_t = 700)]
        height: u32,
        #[arg(long, default_value_t = 1.0)]
        stroke: f64,
        #[arg(long, default_value_t = 24.0)]
        margin: f64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

fn parse_rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn none(message: impl ToString) -> Self {
        Self {
            code: EXIT_NONE,
            message: message.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::none(e)
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Decide { rel, n, a, b } => {
            match rel {
                Relation::Fn => {
                    let n = n.ok_or_else(|| Failure::usage("--rel fn requires --n"))?;
                    writeln!(out, "{}", f_n(&a, &b, n))?;
                }
                Relation::E0 => writeln!(out, "{}", e0(&a, &b))?,
                Relation::E0star => {
                    writeln!(out, "{}", e0star(&a, &b))?;
                    let level = witness_level(&a, &b);
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&level).expect("serializable")
                    )?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Embed { seq, digits } => {
            let point = embed(&seq);
            writeln!(out, "{point}")?;
            if let Some(d) = digits {
                writeln!(out, "{}", to_decimal(point.value(), d))?;
            }
            Ok(EXIT_OK)
        }
        Command::Unembed { rat } => match unembed(&rat) {
            Some(seq) => {
                writeln!(out, "{seq}")?;
                Ok(EXIT_OK)
            }
            None => Err(Failure::none(format!(
                "{} is not in the Cantor set",
                format_rational(&rat)
            ))),
        },
        Command::Path {
            a,
            b,
            format,
            simplify: simple,
        } => {
            let mut w = synthesize(&a, &b)
                .ok_or_else(|| Failure::none(format!("{a} and {b} are not path-connected")))?;
            if simple {
                w = simplify(&w).map_err(Failure::none)?;
            }
            match format {
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string(&w).expect("serializable"))?
                }
                Format::Text => write!(out, "{}", w.to_text())?,
            }
            Ok(EXIT_OK)
        }
        Command::Oracle { prefix, out: path } => {
            let cap = max_prefix_from_env().map_err(Failure::usage)?;
            let report = check_theorem_with_cap(prefix, cap).map_err(Failure::usage)?;
            let json = serde_json::to_string_pretty(&report).expect("serializable");
            match path {
                Some(p) => std::fs::write(p, json + "\n")?,
                None => writeln!(out, "{json}")?,
            }
            Ok(if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_NONE
            })
        }
        Command::Render {
            depth,
            levels,
            width,
            height,
            stroke,
            margin,
            output,
        } => {
            let spec = RenderSpec {
                depth,
                levels,
                width,
                height,
                stroke,
                margin,
            };
            let svg = render(&spec).map_err(Failure::usage)?;
            std::fs::write(&output, svg)?;
            let arcs = arcs_for(&spec).map_err(Failure::usage)?;
            writeln!(out, "wrote {} arcs to {}", arcs.len(), output.display())?;
            Ok(EXIT_OK)
        }
    }
}
