//! Command-line arguments and their value syntaxes.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heinz_core::heinz::Which;

pub const MIN_TOL: f64 = 1e-13;
pub const MAX_DIM: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "heinz", version, about = "Sharp Heinz constants and harmonic Schwarz-lemma checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print C_n, with closed-form references for n = 2, 3, 4.
    Constants {
        /// Dimensions: `4`, `2..8` or `2,3,5`.
        #[arg(long, default_value = "2..4")]
        n: DimList,
        #[arg(long, default_value_t = 1e-13, value_parser = parse_tol)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate U(rN) or V(r) on a radius grid.
    Profile {
        #[arg(long, value_parser = parse_dim)]
        n: usize,
        #[arg(long, value_parser = parse_which)]
        which: Which,
        /// `start:step:stop`, a single value or a comma list, inside [0, 1].
        #[arg(long)]
        grid: Grid,
        #[arg(long, default_value_t = 1e-12, value_parser = parse_tol)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Schwarz,
    Ratio,
    Monotone,
    Sharpness,
    Identities,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub check: Check,
    #[arg(long)]
    pub n: Option<DimList>,
    #[arg(long, value_parser = parse_tol)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Monte Carlo samples per map.
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
    /// Number of random boundary maps per dimension.
    #[arg(long, default_value_t = 20)]
    pub maps: usize,
    /// Radii (same syntax as `--grid`).
    #[arg(long)]
    pub r: Option<Grid>,
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Members of the sharpness sequence.
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<usize>>,
    #[arg(long, default_value_t = 50)]
    pub k_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t >= MIN_TOL && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("tolerance must be at least {MIN_TOL:e}"))
    }
}

fn parse_dim(s: &str) -> Result<usize, String> {
    let n: usize = s.trim().parse().map_err(|e| format!("{e}"))?;
    if (2..=MAX_DIM).contains(&n) {
        Ok(n)
    } else {
        Err(format!("dimension must lie in 2..={MAX_DIM}, got {n}"))
    }
}

fn parse_which(s: &str) -> Result<Which, String> {
    s.parse().map_err(|e: heinz_core::Error| e.to_string())
}

/// A list of dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimList(pub Vec<usize>);

impl FromStr for DimList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut dims = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if let Some((a, b)) = part.split_once("..") {
                let a = parse_dim(a)?;
                let b = parse_dim(b.trim_start_matches('='))?;
                if a > b {
                    return Err(format!("empty dimension range {part}"));
                }
                dims.extend(a..=b);
            } else {
                dims.push(parse_dim(part)?);
            }
        }
        Ok(DimList(dims))
    }
}

/// Radii or arguments: `start:step:stop` (inclusive), or a comma list.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| -> Result<f64, String> {
            let v: f64 = t.trim().parse().map_err(|e| format!("bad number {t:?}: {e}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("bad number {t:?}"))
            }
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [start, step, stop] => {
                let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
                if !(step > 0.0) {
                    return Err(format!("grid step must be positive, got {step}"));
                }
                if stop < start {
                    return Err(format!("grid stop {stop} is below start {start}"));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize;
                let mut pts: Vec<f64> = (0..=count).map(|i| start + i as f64 * step).collect();
                if let Some(last) = pts.last_mut() {
                    if (*last - stop).abs() <= 1e-9 * step {
                        *last = stop;
                    }
                }
                Ok(Grid(pts))
            }
            [list] => list.split(',').map(num).collect::<Result<_, _>>().map(Grid),
            _ => Err(format!("expected start:step:stop or a comma list, got {s:?}")),
        }
    }
}
