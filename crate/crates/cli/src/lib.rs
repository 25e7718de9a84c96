//! Command-line front end for `hkcover-core`.
//!
//! Every command produces a [`Report`]: the parsed inputs, the result, and a
//! set of certificates recomputed from the result. Exit status 0 means every
//! certificate holds, 2 a malformed input or domain error, 3 a failed
//! certificate.

use std::ffi::OsString;
use std::io::IsTerminal;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand};

mod commands;
pub mod instances;
mod report;
pub mod reproduce;

pub use report::{CmdError, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hkcover",
    version,
    about = "Exact checks for rational covers of hyper-Kähler manifolds"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Print a generation time in human output.
    #[arg(long, global = true)]
    timestamps: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// alpha(d) and phi(d) with the prime-power parts of d.
    Alpha { d: u64 },
    /// Whether order d is possible in GL_m(Q) or on a g-dimensional abelian variety.
    #[command(group(ArgGroup::new("kind").required(true).args(["gl", "abelian"])))]
    OrderBound {
        #[arg(long, value_name = "M")]
        gl: Option<u64>,
        #[arg(long, value_name = "G")]
        abelian: Option<u64>,
        d: u64,
    },
    /// Abelian Galois-like obstruction for monodromy group S_n.
    MonoObstruct {
        #[arg(long)]
        degree: u64,
        #[arg(long = "abelian-dim")]
        abelian_dim: u64,
    },
    /// Feasible cover types (e, r) of a hyper-Kähler fourfold.
    CoverTypes {
        #[arg(long, allow_negative_numbers = true)]
        b2: i64,
        #[arg(long, allow_negative_numbers = true)]
        rho: i64,
    },
    /// Zariski decomposition of a class against a set of primes.
    Zariski { file: PathBuf },
    /// Whether a list of classes is q-exceptional.
    Exceptional { file: PathBuf },
    /// Signature of a lattice file or a catalog lattice.
    #[command(group(ArgGroup::new("source").required(true).args(["file", "catalog"])))]
    Signature {
        file: Option<PathBuf>,
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long, requires = "catalog", allow_negative_numbers = true)]
        param: Option<i64>,
    },
    /// Primitive orthogonal complement of a list of integral classes.
    Complement { file: PathBuf },
    /// Run every anchored check of the reproduction manifest.
    ReproducePaper,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Alpha { .. } => "alpha",
            Command::OrderBound { .. } => "order-bound",
            Command::MonoObstruct { .. } => "mono-obstruct",
            Command::CoverTypes { .. } => "cover-types",
            Command::Zariski { .. } => "zariski",
            Command::Exceptional { .. } => "exceptional",
            Command::Signature { .. } => "signature",
            Command::Complement { .. } => "complement",
            Command::ReproducePaper => "reproduce-paper",
        }
    }
}

/// Rendering switches that do not come from argv.
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub color: bool,
}

impl Options {
    /// Color only on a terminal and only without `NO_COLOR`.
    pub fn from_env() -> Self {
        let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
        Options {
            color: !no_color && std::io::stdout().is_terminal(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, Options::from_env())
}

pub fn run_with<I, T>(args: I, opts: Options) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json = args.iter().skip(1).any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => return parse_failure(e, json),
    };
    let name = cli.command.name();
    let result = match &cli.command {
        Command::Alpha { d } => commands::alpha(*d),
        Command::OrderBound { gl, abelian, d } => commands::order_bound(*gl, *abelian, *d),
        Command::MonoObstruct {
            degree,
            abelian_dim,
        } => commands::mono_obstruct(*degree, *abelian_dim),
        Command::CoverTypes { b2, rho } => commands::cover_types(*b2, *rho),
        Command::Zariski { file } => commands::zariski(file),
        Command::Exceptional { file } => commands::exceptional(file),
        Command::Signature {
            file,
            catalog,
            param,
        } => commands::signature(file.as_deref(), catalog.as_deref(), *param),
        Command::Complement { file } => commands::complement(file),
        Command::ReproducePaper => reproduce::run_manifest(),
    };
    finish(result, name, cli.json, cli.timestamps, opts.color)
}

fn finish(
    result: Result<Report, CmdError>,
    name: &str,
    json: bool,
    timestamps: bool,
    color: bool,
) -> Outcome {
    match result {
        Ok(report) => {
            let code = if report.all_certificates_hold() {
                EXIT_OK
            } else {
                EXIT_CERTIFICATE
            };
            let stdout = if json {
                report.to_json()
            } else {
                report.to_human(color, timestamps)
            };
            Outcome { code, stdout }
        }
        Err(err) => Outcome {
            code: EXIT_INPUT,
            stdout: err.render(name, json),
        },
    }
}

fn parse_failure(e: clap::Error, json: bool) -> Outcome {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
            code: EXIT_OK,
            stdout: e.to_string(),
        },
        kind => {
            let err_kind = if kind == ErrorKind::InvalidSubcommand {
                "UnknownCommand"
            } else {
                "ParseError"
            };
            let message = e
                .to_string()
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            let err = CmdError::new(err_kind, message);
            Outcome {
                code: EXIT_INPUT,
                stdout: err.render("", json),
            }
        }
    }
}
