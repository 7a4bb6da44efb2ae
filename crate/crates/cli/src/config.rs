//! Run configuration: command-line flags layered over an optional flat
//! `key = value` file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use ptspec_core::numerics::{make_grid, Grid};
use ptspec_core::susy::ScarfParams;
use ptspec_core::verify::{default_half_width, DEFAULT_POINTS};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Partner1,
    Partner2,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleObject {
    V1,
    V2,
    ZeroMode,
    #[value(name = "psi1-n")]
    Psi1N,
    #[value(name = "psi2-n")]
    Psi2N,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Half-width L of the grid [-L, L] (default 16/|mu|, 32/|mu| at integer lambda/mu).
    #[arg(long, allow_negative_numbers = true)]
    pub half_width: Option<f64>,
    /// Odd number of grid points (default 4001).
    #[arg(long)]
    pub n_points: Option<usize>,
    /// Richardson pass on the h/2 grid (default true).
    #[arg(long, value_name = "BOOL")]
    pub refine: Option<bool>,
    #[arg(long, conflicts_with = "refine")]
    pub no_refine: bool,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Flat key=value file; flags override its entries.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Accept mu = lambda.
    #[arg(long)]
    pub allow_mu_eq_lambda: bool,
}

const KNOWN_KEYS: &[&str] = &[
    "mu",
    "lambda",
    "half_width",
    "n_points",
    "refine",
    "format",
    "out",
    "allow_mu_eq_lambda",
    "which",
    "object",
    "n",
];

/// Entries of a config file with keys normalized to snake case.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    entries: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value, got {raw:?}", lineno + 1)))?;
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!("line {}: unknown key {key:?}", lineno + 1)));
            }
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(CliError::Config(format!("line {}: duplicate key {key:?}", lineno + 1)));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.entries
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| CliError::Config(format!("config key {key}: cannot parse {v:?}")))
            })
            .transpose()
    }

    pub fn get_enum<T: ValueEnum>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.entries
            .get(key)
            .map(|v| {
                T::from_str(v, true).map_err(|_| CliError::Config(format!("config key {key}: invalid value {v:?}")))
            })
            .transpose()
    }
}

/// Validated settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ScarfParams,
    pub grid: Grid,
    pub refine: bool,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub allow_mu_eq_lambda: bool,
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs, file: &FileConfig) -> Result<Self, CliError> {
        let mu = args
            .mu
            .or(file.get("mu")?)
            .ok_or_else(|| CliError::Config("mu is required (--mu or config file)".into()))?;
        let lambda = args
            .lambda
            .or(file.get("lambda")?)
            .ok_or_else(|| CliError::Config("lambda is required (--lambda or config file)".into()))?;
        let allow = args.allow_mu_eq_lambda || file.get::<bool>("allow_mu_eq_lambda")?.unwrap_or(false);
        let params = if allow {
            ScarfParams::new_allowing_mu_eq_lambda(mu, lambda)
        } else {
            ScarfParams::new(mu, lambda)
        }
        .map_err(|e| CliError::Config(e.to_string()))?;

        let half_width = match args.half_width.or(file.get("half_width")?) {
            Some(l) => l,
            None => default_half_width(&params),
        };
        let n_points = args.n_points.or(file.get("n_points")?).unwrap_or(DEFAULT_POINTS);
        let grid = make_grid(half_width, n_points).map_err(|e| CliError::Config(e.to_string()))?;
        if !half_width.is_finite() {
            return Err(CliError::Config(format!("half_width must be finite, got {half_width}")));
        }

        let refine = if args.no_refine {
            false
        } else {
            args.refine.or(file.get("refine")?).unwrap_or(true)
        };
        let format = match args.format {
            Some(f) => f,
            None => file.get_enum("format")?.unwrap_or(OutputFormat::Json),
        };
        let out = args.out.clone().or(file.get::<PathBuf>("out")?);
        Ok(Self {
            params,
            grid,
            refine,
            format,
            out,
            allow_mu_eq_lambda: allow,
        })
    }
}
