//! The `sturmian` command line.
//!
//! Every invocation is described by a [`RunConfig`]; `--emit-config` prints
//! it as JSON and `replay <file>` runs a saved one, so runs can be repeated
//! byte for byte.

mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rotation::EndpointConvention;

pub use render::execute;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Which endpoint each interval keeps: `left` gives `[x, y)` (0 lies in
/// `I_0`), `right` gives `(x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Left,
    Right,
}

impl From<Convention> for EndpointConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Left => EndpointConvention::LEFT_CLOSED,
            Convention::Right => EndpointConvention::RIGHT_CLOSED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    /// Value, convergents and Lagrange constant of a continued fraction
    Cf {
        cf: String,
        #[arg(long, default_value_t = 10)]
        t_max: usize,
    },
    /// k-abelian classes of the factors of length m
    Classes {
        cf: String,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        m: usize,
        /// Also print cut points and factor intervals for plotting
        #[arg(long)]
        emit_circle: bool,
    },
    /// Maximal exponent of a k-abelian power of period m
    Exponent {
        cf: String,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        m: usize,
        /// Cross-check against the brute-force oracle
        #[arg(long)]
        verify: bool,
        /// Oracle factor-length cap (default: STURMIAN_SPECTRA_CAP or 2000)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Critical exponent Theta_k
    Theta {
        cf: String,
        #[arg(short)]
        k: usize,
        /// Also estimate Theta_k from convergents up to this index
        #[arg(long)]
        t_max: Option<usize>,
    },
    /// Theta_k at numbers equivalent to a base slope
    Spectrum {
        #[arg(short)]
        k: usize,
        #[arg(long)]
        base: String,
        /// Number of points, base included
        #[arg(long, default_value_t = 200)]
        pool: usize,
        #[arg(long, default_value_t = crate::powers::DEFAULT_MAX_QUOTIENT)]
        max_quotient: u32,
    },
    /// Stages of the construction of a slope with a prescribed
    /// integer-power critical exponent
    Linfty {
        /// Positive rational, e.g. `1`, `7/3`
        lambda: String,
        #[arg(long, default_value_t = 4)]
        stages: usize,
    },
    /// Convergent and approximation bounds on the exponents
    Bounds {
        cf: String,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        t_max: usize,
    },
    /// Prefix/suffix criterion on the image of a Sturmian word under 0 -> 02, 1 -> 1
    Ternary {
        cf: String,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        max_len: usize,
    },
    /// Highest exponent of an integer power of period m
    Powers {
        cf: String,
        #[arg(short)]
        m: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub convention: Convention,
}

#[derive(Debug, Parser)]
#[command(name = "sturmian", version, about = "k-abelian powers and Lagrange spectra of Sturmian words")]
struct Cli {
    #[command(subcommand)]
    command: TopCommand,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Convention::Left)]
    convention: Convention,
    /// Print the run configuration as JSON instead of running it
    #[arg(long, global = true)]
    emit_config: bool,
}

#[derive(Debug, Subcommand)]
enum TopCommand {
    #[command(flatten)]
    Run(Command),
    /// Run a configuration saved with --emit-config
    Replay { file: PathBuf },
}

/// What the binary should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap { .. } => EXIT_CAP,
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::InvalidQuotient { .. } => "invalid_quotient",
        Error::MixedRadicand(..) => "mixed_radicand",
        Error::RationalInput => "rational_input",
        Error::DivisionByZero => "division_by_zero",
        Error::LengthMismatch(..) => "length_mismatch",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Precondition(_) => "precondition",
        Error::Invariant(_) => "invariant",
        Error::ResourceCap { .. } => "resource_cap",
    }
}

fn error_outcome(kind: &str, message: &str, code: i32) -> Outcome {
    let body = serde_json::json!({ "error": { "kind": kind, "message": message } });
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("{body}\n"),
    }
}

pub fn failure(e: &Error) -> Outcome {
    error_outcome(error_kind(e), &e.to_string(), exit_code(e))
}

/// Parses arguments (program name first) into a configuration, or the
/// outcome to report instead (help, version, usage errors, `--emit-config`).
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return Err(if e.use_stderr() {
                error_outcome("usage", text.trim_end(), EXIT_USAGE)
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            });
        }
    };
    let config = match cli.command {
        TopCommand::Run(command) => RunConfig {
            command,
            format: cli.format,
            convention: cli.convention,
        },
        TopCommand::Replay { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| {
                error_outcome("io", &format!("{}: {e}", file.display()), EXIT_USAGE)
            })?;
            serde_json::from_str(&text)
                .map_err(|e| error_outcome("config", &e.to_string(), EXIT_USAGE))?
        }
    };
    if cli.emit_config {
        let mut stdout = serde_json::to_string_pretty(&config).expect("config serializes");
        stdout.push('\n');
        return Err(Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        });
    }
    Ok(config)
}

/// Runs the command line; the binary prints the streams and exits with
/// `code`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(args) {
        Ok(config) => match execute(&config) {
            Ok(stdout) => Outcome {
                code: EXIT_OK,
                stdout,
                stderr: String::new(),
            },
            Err(e) => failure(&e),
        },
        Err(outcome) => outcome,
    }
}
