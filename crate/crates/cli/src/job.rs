use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::args::OutputFormat;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error in {what}: {msg}")]
    Parse { what: String, msg: String },
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn parse(what: impl Into<String>, msg: impl ToString) -> Self {
        CliError::Parse { what: what.into(), msg: msg.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Read { .. } => 2,
            CliError::Write { .. } | CliError::Compute(_) => 1,
        }
    }
}

/// Everything the output depends on. Input files enter by content, so a
/// moved file still hits the cache; thread count and output format do not
/// enter at all.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub params: BTreeMap<String, Value>,
}

impl JobSpec {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), inputs: BTreeMap::new(), params: BTreeMap::new() }
    }

    pub fn param(mut self, key: &str, v: impl Serialize) -> Self {
        self.params.insert(key.into(), serde_json::to_value(v).expect("serializable parameter"));
        self
    }

    pub fn input(mut self, key: &str, v: Value) -> Self {
        self.inputs.insert(key.into(), v);
        self
    }

    /// SHA-256 of the compact JSON form. `serde_json` maps keep keys sorted,
    /// which makes the encoding canonical.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("serializable job");
        hex::encode(Sha256::digest(bytes))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// What a command computes, before it is tied to a job.
pub struct Outcome {
    pub passed: bool,
    pub values: Value,
    pub table: Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub job_hash: String,
    pub job: JobSpec,
    pub passed: bool,
    pub values: Value,
}

/// Cache file layout. The timestamp lives here rather than in the record so
/// that reruns print identical bytes.
#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    created_unix: u64,
    record: ResultRecord,
    table: Table,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Self { dir: dir.to_path_buf() }
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    /// A stored record for this job. Unreadable or mismatched entries are
    /// treated as misses.
    pub fn load(&self, job: &JobSpec) -> Option<(ResultRecord, Table)> {
        let hash = job.hash();
        let text = fs::read_to_string(self.path(&hash)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.record.job_hash == hash && entry.record.job == *job).then_some((entry.record, entry.table))
    }

    pub fn store(&self, record: &ResultRecord, table: &Table) -> Result<(), CliError> {
        let write_err = |source| CliError::Write { path: self.dir.clone(), source };
        fs::create_dir_all(&self.dir).map_err(write_err)?;
        let created_unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let entry = CacheEntry { created_unix, record: record.clone(), table: table.clone() };
        let path = self.path(&record.job_hash);
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(&entry).expect("serializable record");
        fs::write(&tmp, text).map_err(|source| CliError::Write { path: tmp.clone(), source })?;
        fs::rename(&tmp, &path).map_err(|source| CliError::Write { path, source })
    }
}

pub fn finish(job: JobSpec, outcome: Outcome) -> (ResultRecord, Table) {
    let record = ResultRecord {
        command: job.command.clone(),
        job_hash: job.hash(),
        job,
        passed: outcome.passed,
        values: outcome.values,
    };
    (record, outcome.table)
}

pub fn render(record: &ResultRecord, table: &Table, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    match format {
        OutputFormat::Json => {
            let mut out = serde_json::to_vec_pretty(record).expect("serializable record");
            out.push(b'\n');
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Compute(e.to_string());
            w.write_record(&table.columns).map_err(io)?;
            for row in &table.rows {
                w.write_record(row).map_err(io)?;
            }
            w.into_inner().map_err(|e| CliError::Compute(e.to_string()))
        }
    }
}
