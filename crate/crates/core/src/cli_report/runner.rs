//! Runs the units of a configuration, checkpointing as it goes, and writes the outputs.

use std::collections::HashMap;
use std::path::Path;
use std::time::Instant;

use serde_json::Value;

use super::config::RunConfig;
use super::output::{
    certificates_document, tally, timings_enabled, write_suite_csv, Checkpoint, CheckpointError, Record, CERTIFICATES_FILE,
    CHECKPOINT_FILE,
};
use super::suites::{run_unit, units, Unit};
use crate::verifier::Certificate;

/// Exit statuses of `verify`.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const INCONCLUSIVE: i32 = 2;
    pub const USAGE: i32 = 64;
    pub const RESUME_MISMATCH: i32 = 65;
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("cannot write to {path}: {source}")]
    Output { path: String, source: std::io::Error },
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Checkpoint(CheckpointError::HashMismatch { .. } | CheckpointError::BadHeader) => exit::RESUME_MISMATCH,
            RunError::Output { .. } | RunError::Checkpoint(CheckpointError::Io(_)) | RunError::Csv(_) => exit::USAGE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    /// Units taken from the checkpoint rather than recomputed.
    pub resumed_units: usize,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            exit::FAIL
        } else if self.inconclusive > 0 {
            exit::INCONCLUSIVE
        } else {
            exit::PASS
        }
    }
}

fn evaluate(unit: &Unit, cfg: &RunConfig) -> Record {
    let start = Instant::now();
    let mut certs = run_unit(unit, cfg);
    if timings_enabled() {
        let ms = start.elapsed().as_millis() as u64;
        certs.iter_mut().for_each(|c| c.runtime_ms = ms);
    }
    let certificates = certs.iter().map(|c| serde_json::to_value(c).expect("certificates serialize")).collect();
    Record { unit: *unit, certificates }
}

/// Evaluates units one after another.
pub fn evaluate_sequential(units: &[Unit], cfg: &RunConfig) -> Vec<Record> {
    units.iter().map(|u| evaluate(u, cfg)).collect()
}

/// Evaluates units on a pool of `cfg.jobs` threads (0: one per core); results keep input order.
#[cfg(feature = "parallel")]
pub fn evaluate_parallel(units: &[Unit], cfg: &RunConfig) -> Vec<Record> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().expect("thread pool");
    pool.install(|| units.par_iter().map(|u| evaluate(u, cfg)).collect())
}

#[cfg(not(feature = "parallel"))]
pub fn evaluate_parallel(units: &[Unit], cfg: &RunConfig) -> Vec<Record> {
    evaluate_sequential(units, cfg)
}

/// Units handed to the pool at once; the checkpoint is appended after each batch.
fn batch_size(cfg: &RunConfig) -> usize {
    let threads = if cfg.jobs == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { cfg.jobs };
    (threads * 4).max(8)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Output { path: path.display().to_string(), source }
}

/// Runs the configured suite and writes certificates.json, the suite CSVs and the checkpoint.
pub fn run(cfg: &RunConfig) -> Result<(RunSummary, Vec<Record>), RunError> {
    let dir = &cfg.out_dir;
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let ckpt_path = dir.join(CHECKPOINT_FILE);
    let hash = cfg.hash();
    let (mut ckpt, done): (Checkpoint, HashMap<String, Vec<Value>>) = if cfg.resume {
        Checkpoint::resume(&ckpt_path, &hash)?
    } else {
        (Checkpoint::create(&ckpt_path, &hash).map_err(io_err(&ckpt_path))?, HashMap::new())
    };

    let all = units(cfg);
    let mut slots: Vec<Option<Record>> = all
        .iter()
        .map(|u| done.get(&u.key()).map(|c| Record { unit: *u, certificates: c.clone() }))
        .collect();
    let resumed_units = slots.iter().filter(|s| s.is_some()).count();
    let pending: Vec<usize> = (0..all.len()).filter(|&i| slots[i].is_none()).collect();
    for batch in pending.chunks(batch_size(cfg)) {
        let us: Vec<Unit> = batch.iter().map(|&i| all[i]).collect();
        let recs = evaluate_parallel(&us, cfg);
        for (&i, rec) in batch.iter().zip(recs) {
            ckpt.append(&rec).map_err(io_err(&ckpt_path))?;
            slots[i] = Some(rec);
        }
    }
    ckpt.sync().map_err(io_err(&ckpt_path))?;

    let records: Vec<Record> = slots.into_iter().map(|s| s.expect("every unit evaluated")).collect();
    let json_path = dir.join(CERTIFICATES_FILE);
    std::fs::write(&json_path, certificates_document(cfg, &records)).map_err(io_err(&json_path))?;
    for suite in cfg.suite.parts() {
        write_suite_csv(dir, suite, &records)?;
    }
    let (pass, fail, inconclusive) = tally(&records);
    Ok((RunSummary { pass, fail, inconclusive, resumed_units }, records))
}

/// Certificates of a configuration computed in memory, without touching the disk.
pub fn certificates(cfg: &RunConfig) -> Vec<Certificate> {
    units(cfg).iter().flat_map(|u| run_unit(u, cfg)).collect()
}
