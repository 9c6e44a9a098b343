use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use schurlab_core::certificate::Certificate;
use schurlab_core::runs::{run_cubic, run_example, run_logbundle, run_monad, EXAMPLES};
use schurlab_core::{Error, Field};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "schurlab", version, about = "Exact certificates for cubic surfaces, Schur quadrics and rank-2 bundle monads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Six points of P²: determinantal representation, double-six, Schur quadric, induced monad.
    Cubic(Common),
    /// 2d lines of P²: logarithmic bundle monad and its jumping lines.
    Logbundle(Common),
    /// Monad data (A₀, A₁, A₂, B) given as grids.
    Monad(Common),
    /// A built-in instance.
    Example {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(EXAMPLES))]
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Structured)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// A certificate for input that never reached a pipeline.
fn input_failure(command: &str, path: &str, seed: u64, e: &Error) -> Certificate {
    let mut c = Certificate::new(command, "input", &Value::String(path.into()), Field::Rational, seed);
    c.fail_with(e);
    c
}

fn load(path: Option<&Path>) -> Result<Value, Error> {
    let path = path.ok_or_else(|| Error::Parse("--in PATH is required".into()))?;
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

/// Writes through a sibling temporary file so readers never see a partial certificate.
fn write_atomic(path: &Path, body: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(body.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cert, common) = match &cli.command {
        Command::Example { name, common } => (run_example(name, common.seed), common),
        Command::Cubic(c) | Command::Logbundle(c) | Command::Monad(c) => {
            let command = match cli.command {
                Command::Cubic(_) => "cubic",
                Command::Logbundle(_) => "logbundle",
                _ => "monad",
            };
            let cert = match load(c.input.as_deref()) {
                Err(e) => input_failure(command, &c.input.as_ref().map(|p| p.display().to_string()).unwrap_or_default(), c.seed, &e),
                Ok(doc) => match command {
                    "cubic" => run_cubic(&doc, c.seed),
                    "logbundle" => run_logbundle(&doc, c.seed),
                    _ => run_monad(&doc, c.seed),
                },
            };
            (cert, c)
        }
    };
    let body = match common.format {
        Format::Text => cert.to_text(),
        Format::Structured => cert.to_json(),
    };
    let written = match &common.out {
        Some(p) => write_atomic(p, &body),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(Into::into),
    };
    if let Err(e) = written {
        eprintln!("schurlab: {e:#}");
        return ExitCode::from(2);
    }
    if let Some(e) = &cert.error {
        eprintln!("schurlab: {}: {}", e.kind, e.message);
    }
    ExitCode::from(cert.exit_code() as u8)
}
