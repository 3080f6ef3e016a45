//! Command line, run configuration and its hash.

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::verifier::Mode;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable that replaces `--out`.
pub const OUT_ENV: &str = "QCV_OUT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Suite {
    Cn,
    LemmaMin,
    Pointwise,
    OneMinusX2,
    Sums,
    Ledger,
    Induction,
    PropGrid,
    All,
}

impl Suite {
    /// Every concrete suite, in output order.
    pub const CONCRETE: [Suite; 8] = [
        Suite::Cn,
        Suite::LemmaMin,
        Suite::Pointwise,
        Suite::OneMinusX2,
        Suite::Sums,
        Suite::Ledger,
        Suite::Induction,
        Suite::PropGrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cn => "cn",
            Suite::LemmaMin => "lemma-min",
            Suite::Pointwise => "pointwise",
            Suite::OneMinusX2 => "one-minus-x2",
            Suite::Sums => "sums",
            Suite::Ledger => "ledger",
            Suite::Induction => "induction",
            Suite::PropGrid => "prop-grid",
            Suite::All => "all",
        }
    }

    /// Index range a suite runs over when none is given.
    pub fn default_range(self) -> (u64, u64) {
        match self {
            Suite::Cn => (6, 428),
            Suite::LemmaMin => (8, 10000),
            Suite::Pointwise => (6, 100),
            Suite::OneMinusX2 => (12, 429),
            Suite::Sums => (5, 10001),
            Suite::Ledger => (0, 9997),
            Suite::Induction => (41, 10001),
            Suite::PropGrid => (41, 101),
            Suite::All => (0, u64::MAX),
        }
    }

    pub fn parts(self) -> Vec<Suite> {
        if self == Suite::All {
            Suite::CONCRETE.to_vec()
        } else {
            vec![self]
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Float64,
    Interval,
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Float64 => Mode::Float64,
            ModeArg::Interval => Mode::Interval,
            ModeArg::Exact => Mode::Exact,
        }
    }
}

fn parse_precision(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(p @ (64 | 128 | 256 | 512)) => Ok(p),
        _ => Err(format!("precision must be one of 64, 128, 256, 512, got {s}")),
    }
}

#[derive(Parser, Debug)]
#[command(name = "qcv", version, about = "Certified checks of Gegenbauer-polynomial inequalities, with resumable runs and plots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a check suite and write certificates.json, <suite>.csv and checkpoint.log
    Verify(VerifyArgs),
    /// Render CSV output
    Report {
        #[command(subcommand)]
        command: ReportCommand,
    },
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    /// First index (n or k) of the range; defaults per suite
    #[arg(long)]
    pub from: Option<u64>,
    /// Last index of the range; defaults per suite
    #[arg(long)]
    pub to: Option<u64>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    /// Working precision of interval arithmetic in bits
    #[arg(long, default_value = "128", value_parser = parse_precision)]
    pub precision: u32,
    /// Output directory (QCV_OUT takes precedence)
    #[arg(long, default_value = "qcv-out")]
    pub out: PathBuf,
    /// Continue from checkpoint.log in the output directory
    #[arg(long)]
    pub resume: bool,
    /// Worker threads; 0 uses one per core
    #[arg(long, default_value = "0")]
    pub jobs: usize,
    /// d_0 in the a-range [d_0/λ_{n+4}, d_0/λ_n]
    #[arg(long, default_value = "16", value_parser = clap::value_parser!(u64).range(1..))]
    pub d0: u64,
}

#[derive(Subcommand, Debug)]
pub enum ReportCommand {
    /// Scatter plot of two CSV columns as a standalone SVG
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub suite: Suite,
    /// Explicit range; None means each suite's default.
    pub range: Option<(u64, u64)>,
    pub mode: Mode,
    pub precision_bits: u32,
    pub out_dir: PathBuf,
    pub resume: bool,
    pub jobs: usize,
    pub d0: u64,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("invalid range: --from {0} is greater than --to {1}")]
    Range(u64, u64),
}

impl RunConfig {
    /// Builds the configuration; `out_override` is the value of QCV_OUT, if set.
    pub fn from_args(args: &VerifyArgs, out_override: Option<PathBuf>) -> Result<Self, ConfigError> {
        let range = match (args.from, args.to) {
            (None, None) => None,
            (from, to) => {
                let (dlo, dhi) = args.suite.default_range();
                let (lo, hi) = (from.unwrap_or(dlo), to.unwrap_or(dhi));
                if lo > hi {
                    return Err(ConfigError::Range(lo, hi));
                }
                Some((lo, hi))
            }
        };
        Ok(RunConfig {
            suite: args.suite,
            range,
            mode: args.mode.into(),
            precision_bits: args.precision,
            out_dir: out_override.unwrap_or_else(|| args.out.clone()),
            resume: args.resume,
            jobs: args.jobs,
            d0: args.d0,
        })
    }

    /// Range for one concrete suite: the explicit range clipped to the suite default under
    /// `all`, the explicit range itself otherwise.
    pub fn range_for(&self, suite: Suite) -> (u64, u64) {
        let d = suite.default_range();
        match self.range {
            None => d,
            Some(r) if self.suite == Suite::All => (r.0.max(d.0), r.1.min(d.1)),
            Some(r) => r,
        }
    }

    /// SHA-256 over everything that affects certificate content; output directory, jobs
    /// and resume do not.
    pub fn hash(&self) -> String {
        let range = self.range.map_or("default".to_string(), |(a, b)| format!("{a}..{b}"));
        let canonical = format!(
            "qcv {TOOL_VERSION}\nsuite={}\nrange={range}\nmode={}\nprecision={}\nd0={}\n",
            self.suite,
            self.mode.as_str(),
            self.precision_bits,
            self.d0
        );
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("qcv").chain(args.iter().copied()))
    }

    fn verify_args(args: &[&str]) -> VerifyArgs {
        match parse(args).expect("parses").command {
            Command::Verify(v) => v,
            _ => panic!("not verify"),
        }
    }

    #[test]
    fn precision_is_restricted() {
        assert!(parse(&["verify", "cn", "--precision", "96"]).is_err());
        assert!(parse(&["verify", "cn", "--precision", "256"]).is_ok());
    }

    #[test]
    fn suites_parse_kebab_case() {
        assert_eq!(verify_args(&["verify", "one-minus-x2"]).suite, Suite::OneMinusX2);
        assert_eq!(verify_args(&["verify", "prop-grid"]).suite, Suite::PropGrid);
        assert!(parse(&["verify", "bogus"]).is_err());
    }

    #[test]
    fn env_override_and_range() {
        let a = verify_args(&["verify", "cn", "--from", "10", "--out", "x"]);
        let c = RunConfig::from_args(&a, Some(PathBuf::from("y"))).unwrap();
        assert_eq!(c.out_dir, PathBuf::from("y"));
        assert_eq!(c.range_for(Suite::Cn), (10, 428));
        let bad = verify_args(&["verify", "cn", "--from", "10", "--to", "9"]);
        assert_eq!(RunConfig::from_args(&bad, None), Err(ConfigError::Range(10, 9)));
    }

    #[test]
    fn hash_ignores_output_location() {
        let a = RunConfig::from_args(&verify_args(&["verify", "sums", "--out", "a", "--jobs", "3"]), None).unwrap();
        let b = RunConfig::from_args(&verify_args(&["verify", "sums", "--out", "b", "--resume"]), None).unwrap();
        assert_eq!(a.hash(), b.hash());
        let c = RunConfig::from_args(&verify_args(&["verify", "sums", "--precision", "256"]), None).unwrap();
        assert_ne!(a.hash(), c.hash());
    }
}
