//! Command-line front end for the `ptspec-core` library: spectra of both
//! partner Hamiltonians, verification reports and plot data.
//!
//! Exit statuses: 0 success, 1 failed verification check, 2 usage or
//! configuration error, 3 numerical failure.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use thiserror::Error;

use config::{CommonArgs, FileConfig, RunConfig, SampleObject, Which};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("output error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ptspec",
    version,
    about = "Real and PT-symmetric complex partner potentials of the sech/tanh family"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies of one or both partners.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        which: Option<Which>,
    },
    /// Full verification report; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Potentials or normalized wavefunctions sampled on the grid.
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        object: Option<SampleObject>,
        /// Level index for psi1-n / psi2-n.
        #[arg(long)]
        n: Option<usize>,
    },
}

fn resolve(common: &CommonArgs) -> Result<(RunConfig, FileConfig), CliError> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    Ok((RunConfig::resolve(common, &file)?, file))
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Spectrum { common, which } => {
            let (cfg, file) = resolve(&common)?;
            let which = match which {
                Some(w) => w,
                None => file.get_enum("which")?.unwrap_or(Which::Both),
            };
            let doc = commands::spectrum(&cfg, which)?;
            doc.emit(cfg.format, cfg.out.as_deref(), stdout)?;
            Ok(0)
        }
        Command::Verify { common } => {
            let (cfg, _) = resolve(&common)?;
            let (doc, passed) = commands::verify(&cfg)?;
            doc.emit(cfg.format, cfg.out.as_deref(), stdout)?;
            if passed {
                Ok(0)
            } else {
                let failed: Vec<String> = doc
                    .checks
                    .iter()
                    .filter(|row| {
                        row.iter()
                            .any(|(k, v)| *k == "passed" && *v == output::Cell::Bool(false))
                    })
                    .filter_map(|row| match &row[0].1 {
                        output::Cell::Text(name) => Some(name.clone()),
                        _ => None,
                    })
                    .collect();
                let _ = writeln!(stderr, "{} check(s) failed: {}", failed.len(), failed.join(", "));
                Ok(1)
            }
        }
        Command::Sample { common, object, n } => {
            let (cfg, file) = resolve(&common)?;
            let object = match object {
                Some(o) => o,
                None => file
                    .get_enum("object")?
                    .ok_or_else(|| CliError::Config("sample needs --object".into()))?,
            };
            let n = match n {
                Some(n) => n,
                None => file.get("n")?.unwrap_or(0),
            };
            let doc = commands::sample(&cfg, object, n)?;
            doc.emit(cfg.format, cfg.out.as_deref(), stdout)?;
            Ok(0)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status. Diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
