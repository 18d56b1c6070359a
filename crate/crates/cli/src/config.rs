//! Run configuration and flag parsing.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use centpoly::cochar::Budget;
use clap::{Parser, Subcommand, ValueEnum};

/// Inclusive degree range `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub start: usize,
    pub end: usize,
}

impl DegreeRange {
    pub fn new(start: usize, end: usize) -> Result<Self, String> {
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(DegreeRange { start, end })
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad bound {t:?}: {e}"));
        match s.split_once("..") {
            Some((a, b)) => DegreeRange::new(parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                DegreeRange::new(v, v)
            }
        }
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Codimensions, cocharacters and central polynomials of the Grassmann algebra.
    Grassmann,
    /// Identity and central dimensions of M_k with the sandwich bounds.
    Matrix,
    /// Capelli-type central polynomials, gluing constants and the lower-bound construction.
    Regev,
    /// Rectangle growth rates and the δ_n(M_k)^{1/n} trend.
    Growth,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Grassmann => "grassmann",
            Command::Matrix => "matrix",
            Command::Regev => "regev",
            Command::Growth => "growth",
        }
    }

    fn default_range(self) -> DegreeRange {
        match self {
            Command::Grassmann => DegreeRange { start: 2, end: 8 },
            Command::Matrix => DegreeRange { start: 2, end: 6 },
            Command::Regev => DegreeRange { start: 8, end: 15 },
            Command::Growth => DegreeRange { start: 2, end: 5 },
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "growth",
    version,
    about = "Central polynomials and codimension growth, checked exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Degree range, `A..B` (inclusive) or a single degree.
    #[arg(long, global = true)]
    pub n: Option<DegreeRange>,

    /// Matrix size.
    #[arg(long, global = true, default_value_t = 2)]
    pub k: usize,

    /// Rectangle widths for `growth`.
    #[arg(long, global = true)]
    pub m: Option<DegreeRange>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for the randomized property checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Memory budget in GiB (default from CENTPOLY_BUDGET_GIB, else 4).
    #[arg(long, global = true)]
    pub budget_gib: Option<f64>,

    /// Raise the per-algebra degree limit.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,

    /// Random samples per degree for the cancellation check.
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,

    /// Print elapsed times on stderr.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: DegreeRange,
    pub k: usize,
    pub m: DegreeRange,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub budget: Budget,
    pub samples: usize,
    pub timing: bool,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Self {
        let mut budget = Budget::from_env();
        if let Some(g) = cli.budget_gib {
            budget.memory_gib = g;
        }
        budget.max_degree = cli.max_n;
        RunConfig {
            command: cli.command,
            n: cli.n.unwrap_or_else(|| cli.command.default_range()),
            k: cli.k,
            m: cli.m.unwrap_or(DegreeRange { start: 1, end: 100 }),
            format: cli.format,
            out: cli.out,
            seed: cli.seed,
            budget,
            samples: cli.samples,
            timing: cli.timing,
        }
    }

    /// The fields echoed in the report header.
    pub fn echo(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "command": self.command.name(),
            "n": self.n.to_string(),
            "k": self.k,
        });
        let obj = v.as_object_mut().expect("object");
        if self.command == Command::Growth {
            obj.insert("m".into(), self.m.to_string().into());
        }
        if self.command == Command::Grassmann {
            obj.insert("seed".into(), self.seed.into());
            obj.insert("samples".into(), self.samples.into());
        }
        obj.insert("budget_gib".into(), self.budget.memory_gib.to_string().into());
        obj.insert(
            "max_n".into(),
            self.budget.max_degree.map_or(serde_json::Value::Null, |d| d.into()),
        );
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("2..8".parse::<DegreeRange>().unwrap(), DegreeRange { start: 2, end: 8 });
        assert_eq!(
            "2..=8".parse::<DegreeRange>().unwrap(),
            DegreeRange { start: 2, end: 8 }
        );
        assert_eq!("5".parse::<DegreeRange>().unwrap(), DegreeRange { start: 5, end: 5 });
        assert!("8..2".parse::<DegreeRange>().is_err());
        assert!("a..2".parse::<DegreeRange>().is_err());
        assert_eq!(DegreeRange::new(1, 3).unwrap().iter().count(), 3);
    }

    #[test]
    fn flags_are_global() {
        let cli = Cli::try_parse_from(["growth", "matrix", "--k", "1", "--n", "1..3", "--format", "csv"]).unwrap();
        let cfg = RunConfig::from_cli(cli);
        assert_eq!(cfg.command, Command::Matrix);
        assert_eq!(cfg.k, 1);
        assert_eq!(cfg.format, Format::Csv);
        assert!(Cli::try_parse_from(["growth", "matrix", "--format", "xml"]).is_err());
    }
}
