//! The `qcv` command line: suite runs with checkpoints, and SVG reports.

pub mod config;
pub mod output;
pub mod plot;
pub mod runner;
pub mod suites;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;

use config::{Cli, Command, ReportCommand, RunConfig, OUT_ENV};
use runner::exit;

/// Runs the command line and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::PASS };
        }
    };
    match cli.command {
        Command::Verify(args) => {
            let out_override = std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
            let cfg = match RunConfig::from_args(&args, out_override) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("qcv: {e}");
                    return exit::USAGE;
                }
            };
            match runner::run(&cfg) {
                Ok((summary, _)) => {
                    eprintln!(
                        "qcv: {} pass, {} fail, {} inconclusive ({} units resumed); output in {}",
                        summary.pass,
                        summary.fail,
                        summary.inconclusive,
                        summary.resumed_units,
                        cfg.out_dir.display()
                    );
                    summary.exit_code()
                }
                Err(e) => {
                    eprintln!("qcv: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Report { command: ReportCommand::Plot { input, x, y, output } } => {
            match plot::plot_scatter(&input, &x, &y, &output) {
                Ok(n) => {
                    eprintln!("qcv: plotted {n} points to {}", output.display());
                    exit::PASS
                }
                Err(e) => {
                    eprintln!("qcv: {e}");
                    exit::USAGE
                }
            }
        }
    }
}
