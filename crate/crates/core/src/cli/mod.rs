//! Command-line front end: `socdef <command> --m M [--q SPEC] ...`.
//!
//! Exit status 0 when every check passes or is skipped, 1 when one fails,
//! 2 on a usage or parse error.

mod pipelines;
mod qspec;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::findim::DeformationParams;
use crate::structure::default_max_degree;

pub use pipelines::{execute, Command, InstanceSpec};
pub use qspec::{parse_qspec, trivial_qspec};
pub use report::{render, Check, Deformation, DimRow, Format, Generator, Instance, Report, Verdict, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "socdef", version, about = "Graded centres of Ext algebras of socle-deformed quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Graded centre dimensions against the Hilbert series.
    Centre(Args),
    /// Generators, relation and dimension table of the graded centre.
    Structure(Args),
    /// Radical, socle and socle quotient.
    Socle(Args),
    /// Simple ideals and socle growth of a deformation.
    Deform(Args),
    /// Rescaling isomorphism to the normalised parameters.
    Iso(Args),
    /// Frobenius test with a certificate.
    Frobenius(Args),
    /// Finite generation of E over its graded centre.
    Finitegen(Args),
    /// All of the above.
    Report(Args),
}

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    /// Number of vertices.
    #[arg(long)]
    pub m: usize,
    /// `rat:..`, `cyclo:D:..`, `fp:p:..`, `fpx:p:modulus:..` or `generic`;
    /// all ones over Q by default.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Highest centre degree N; defaults to L_x + L_y + 2 L_w, or 12.
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b2: Option<String>,
    /// Record stage timings in microseconds.
    #[arg(long)]
    pub timing: bool,
}

/// Builds the instance from parsed flags. Deformation parameters default to
/// `t = 1, b1 = 0, b2 = 1` for `deform` and are absent elsewhere unless one
/// of them is given, in which case the others default to `t = 1, b = 0`.
pub fn instance_spec(command: Command, args: &Args) -> Result<InstanceSpec, String> {
    let text = args.q.clone().unwrap_or_else(|| trivial_qspec(args.m));
    let params = parse_qspec(&text, args.m)?;
    let f = params.field().clone();
    let given = args.t.is_some() || args.b1.is_some() || args.b2.is_some();
    let deformation = if given || command == Command::Deform {
        let b2_default = if given { "0" } else { "1" };
        let parse = |v: &Option<String>, default: &str| {
            f.parse(v.as_deref().unwrap_or(default)).map_err(|e| e.to_string())
        };
        Some(DeformationParams {
            t: parse(&args.t, "1")?,
            b1: parse(&args.b1, "0")?,
            b2: parse(&args.b2, b2_default)?,
        })
    } else {
        None
    };
    let max_degree = args.max_degree.unwrap_or_else(|| default_max_degree(&params));
    Ok(InstanceSpec {
        command,
        params,
        deformation,
        max_degree,
        seed: args.seed,
        timing: args.timing,
    })
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (command, args) = match cli.command {
        Sub::Centre(a) => (Command::Centre, a),
        Sub::Structure(a) => (Command::Structure, a),
        Sub::Socle(a) => (Command::Socle, a),
        Sub::Deform(a) => (Command::Deform, a),
        Sub::Iso(a) => (Command::Iso, a),
        Sub::Frobenius(a) => (Command::Frobenius, a),
        Sub::Finitegen(a) => (Command::Finitegen, a),
        Sub::Report(a) => (Command::Report, a),
    };
    let report = match instance_spec(command, &args).and_then(execute) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let out = render(&report, args.format);
    let written = match &args.output {
        Some(path) => std::fs::write(path, &out),
        None => std::io::stdout().write_all(out.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    report.exit_code()
}
