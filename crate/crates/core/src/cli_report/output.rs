//! certificates.json, per-suite CSV and the checkpoint log.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use chrono::{DateTime, Utc};
use serde_json::{json, Value};

use super::config::{RunConfig, Suite, TOOL_VERSION};
use super::suites::{Job, Unit};

pub const CERTIFICATES_FILE: &str = "certificates.json";
pub const CHECKPOINT_FILE: &str = "checkpoint.log";
/// Records between fsyncs of the checkpoint.
pub const SYNC_EVERY: usize = 100;

/// Set to 1 to record wall-clock runtimes and the current time; otherwise the output is
/// reproducible byte for byte.
pub const TIMINGS_ENV: &str = "QCV_TIMINGS";

pub fn timings_enabled() -> bool {
    std::env::var(TIMINGS_ENV).is_ok_and(|v| v == "1")
}

/// RFC 3339 time of the run: now with timings on, else SOURCE_DATE_EPOCH (default 0).
pub fn run_timestamp() -> String {
    let t = if timings_enabled() {
        Utc::now()
    } else {
        let secs = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.parse::<i64>().ok()).unwrap_or(0);
        DateTime::from_timestamp(secs, 0).unwrap_or_default()
    };
    t.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Certificates of one completed unit, already in their JSON form.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub unit: Unit,
    pub certificates: Vec<Value>,
}

#[derive(Debug, thiserror::Error)]
pub enum CheckpointError {
    #[error("checkpoint belongs to a different configuration (hash {found}, expected {expected})")]
    HashMismatch { found: String, expected: String },
    #[error("checkpoint header is unreadable")]
    BadHeader,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Append-only log: a header line with the config hash, then one JSON line per unit.
pub struct Checkpoint {
    file: File,
    unsynced: usize,
}

impl Checkpoint {
    /// Starts a fresh log, replacing any previous one.
    pub fn create(path: &Path, hash: &str) -> io::Result<Self> {
        let mut file = File::create(path)?;
        writeln!(file, "{}", json!({ "config_hash": hash, "tool_version": TOOL_VERSION }))?;
        file.sync_data()?;
        Ok(Checkpoint { file, unsynced: 0 })
    }

    /// Reads completed units from an existing log and reopens it for appending. A torn last
    /// line is cut off. A missing or empty log starts fresh.
    pub fn resume(path: &Path, hash: &str) -> Result<(Self, HashMap<String, Vec<Value>>), CheckpointError> {
        let text = match std::fs::read(path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        if text.is_empty() {
            return Ok((Self::create(path, hash)?, HashMap::new()));
        }
        let mut done = HashMap::new();
        let mut good_len = 0usize;
        let mut reader = BufReader::new(text.as_slice());
        let mut line = String::new();
        let mut first = true;
        loop {
            line.clear();
            let n = reader.read_line(&mut line)?;
            if n == 0 || !line.ends_with('\n') {
                break;
            }
            let Ok(v) = serde_json::from_str::<Value>(line.trim_end()) else { break };
            if first {
                let found = v.get("config_hash").and_then(Value::as_str).ok_or(CheckpointError::BadHeader)?;
                if found != hash {
                    return Err(CheckpointError::HashMismatch { found: found.to_string(), expected: hash.to_string() });
                }
                first = false;
            } else {
                let (Some(key), Some(certs)) = (v.get("unit").and_then(Value::as_str), v.get("certificates").and_then(Value::as_array)) else {
                    break;
                };
                done.insert(key.to_string(), certs.clone());
            }
            good_len += n;
        }
        if first {
            return Err(CheckpointError::BadHeader);
        }
        let file = OpenOptions::new().write(true).open(path)?;
        file.set_len(good_len as u64)?;
        drop(file);
        let file = OpenOptions::new().append(true).open(path)?;
        Ok((Checkpoint { file, unsynced: 0 }, done))
    }

    pub fn append(&mut self, record: &Record) -> io::Result<()> {
        let line = json!({ "unit": record.unit.key(), "certificates": record.certificates });
        writeln!(self.file, "{line}")?;
        self.unsynced += 1;
        if self.unsynced >= SYNC_EVERY {
            self.sync()?;
        }
        Ok(())
    }

    pub fn sync(&mut self) -> io::Result<()> {
        self.file.flush()?;
        self.file.sync_data()?;
        self.unsynced = 0;
        Ok(())
    }
}

/// The full certificates.json document.
pub fn certificates_document(cfg: &RunConfig, records: &[Record]) -> String {
    let (from, to) = match cfg.range {
        Some((a, b)) => (json!(a), json!(b)),
        None => (Value::Null, Value::Null),
    };
    let certs: Vec<&Value> = records.iter().flat_map(|r| r.certificates.iter()).collect();
    let doc = json!({
        "meta": {
            "tool_version": TOOL_VERSION,
            "config_hash": cfg.hash(),
            "timestamp": run_timestamp(),
            "suite": cfg.suite.name(),
            "from": from,
            "to": to,
            "mode": cfg.mode.as_str(),
            "precision_bits": cfg.precision_bits,
            "d0": cfg.d0,
        },
        "certificates": certs,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    s.push('\n');
    s
}

fn field<'a>(c: &'a Value, path: &[&str]) -> &'a Value {
    path.iter().fold(c, |v, k| &v[*k])
}

fn text(c: &Value, path: &[&str]) -> String {
    match field(c, path) {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        v => v.to_string(),
    }
}

/// The claimed range written compactly, e.g. "< 13/500" or "[3/10, 33/100]".
pub fn claim_text(c: &Value) -> String {
    let lo = text(c, &["claimed", "lo"]);
    let hi = text(c, &["claimed", "hi"]);
    let lo_strict = field(c, &["claimed", "lo_strict"]).as_bool().unwrap_or(false);
    let hi_strict = field(c, &["claimed", "hi_strict"]).as_bool().unwrap_or(false);
    match (lo.as_str(), hi.as_str()) {
        ("-inf", h) => format!("{} {h}", if hi_strict { "<" } else { "<=" }),
        (l, "+inf") => format!("{} {l}", if lo_strict { ">" } else { ">=" }),
        (l, h) if l == h && !lo_strict && !hi_strict => format!("= {l}"),
        (l, h) => format!("{}{l}, {h}{}", if lo_strict { "(" } else { "[" }, if hi_strict { ")" } else { "]" }),
    }
}

fn worst_verdict<'a>(certs: impl Iterator<Item = &'a Value>) -> &'static str {
    let mut worst = "pass";
    for c in certs {
        match c["verdict"].as_str() {
            Some("fail") => return "fail",
            Some("inconclusive") => worst = "inconclusive",
            _ => {}
        }
    }
    worst
}

fn csv_writer(path: &Path) -> csv::Result<csv::Writer<File>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path)
}

/// Writes <suite>.csv for one concrete suite from its records.
pub fn write_suite_csv(dir: &Path, suite: Suite, records: &[Record]) -> csv::Result<()> {
    let mut w = csv_writer(&dir.join(format!("{}.csv", suite.name())))?;
    let mine = records.iter().filter(|r| r.unit.suite == suite);
    match suite {
        Suite::Cn => {
            w.write_record(["n", "c_n_lo", "c_n_hi", "claimed", "verdict"])?;
            for r in mine {
                for c in &r.certificates {
                    w.write_record([
                        r.unit.index.to_string(),
                        text(c, &["computed", "lo"]),
                        text(c, &["computed", "hi"]),
                        claim_text(c),
                        text(c, &["verdict"]),
                    ])?;
                }
            }
        }
        Suite::Induction => {
            // upper ends of the certified enclosures at a = d0/λ_{n+4} and a = d0/λ_n
            w.write_record(["n", "g_at_a_lo", "g_at_a_hi", "a2_coefficient", "verdict"])?;
            for r in mine.filter(|r| r.unit.job == Job::Step) {
                let find = |suffix: &str| r.certificates.iter().find(|c| c["check_id"].as_str().is_some_and(|s| s.ends_with(suffix)));
                let hi = |suffix: &str| find(suffix).map(|c| text(c, &["computed", "hi"])).unwrap_or_default();
                let lo = |suffix: &str| find(suffix).map(|c| text(c, &["computed", "lo"])).unwrap_or_default();
                w.write_record([
                    r.unit.index.to_string(),
                    hi(".g-lo"),
                    hi(".g-hi"),
                    lo(".a2-coefficient"),
                    worst_verdict(r.certificates.iter()).to_string(),
                ])?;
            }
        }
        _ => {
            w.write_record(["index", "check_id", "computed_lo", "computed_hi", "claimed", "verdict"])?;
            for r in mine {
                for c in &r.certificates {
                    w.write_record([
                        r.unit.index.to_string(),
                        text(c, &["check_id"]),
                        text(c, &["computed", "lo"]),
                        text(c, &["computed", "hi"]),
                        claim_text(c),
                        text(c, &["verdict"]),
                    ])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Verdict counts over all records: (pass, fail, inconclusive).
pub fn tally(records: &[Record]) -> (usize, usize, usize) {
    let mut t = (0, 0, 0);
    for c in records.iter().flat_map(|r| r.certificates.iter()) {
        match c["verdict"].as_str() {
            Some("pass") => t.0 += 1,
            Some("fail") => t.1 += 1,
            _ => t.2 += 1,
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(lo: &str, hi: &str, ls: bool, hs: bool) -> Value {
        json!({ "claimed": { "lo": lo, "hi": hi, "lo_strict": ls, "hi_strict": hs } })
    }

    #[test]
    fn claims_render() {
        assert_eq!(claim_text(&cert("-inf", "13/500", false, true)), "< 13/500");
        assert_eq!(claim_text(&cert("-1/25", "+inf", false, false)), ">= -1/25");
        assert_eq!(claim_text(&cert("0/1", "0/1", false, false)), "= 0/1");
        assert_eq!(claim_text(&cert("3/10", "33/100", false, false)), "[3/10, 33/100]");
    }

    #[test]
    fn fixed_timestamp_by_default() {
        if std::env::var("SOURCE_DATE_EPOCH").is_err() && !timings_enabled() {
            assert_eq!(run_timestamp(), "1970-01-01T00:00:00Z");
        }
    }
}
