//! Append-only run manifest.
//!
//! One record per line, tab-separated `key=value` fields, terminated by an
//! `end=.` field. A line cut short by a killed process lacks the terminator
//! and is ignored on reload.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::{PipelineError, Result};

const TERMINATOR: &str = "end=.";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    fields: Vec<(String, String)>,
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

impl Record {
    pub fn new(event: &str, stage: &str) -> Self {
        let ts = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Record::default()
            .with("event", event)
            .with("stage", stage)
            .with("time", ts)
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((clean(key), clean(&value.to_string())));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    fn to_line(&self) -> String {
        let mut parts: Vec<String> = self.fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.push(TERMINATOR.to_string());
        parts.join("\t")
    }

    fn from_line(line: &str) -> Option<Self> {
        let mut parts: Vec<&str> = line.split('\t').collect();
        if parts.pop() != Some(TERMINATOR) {
            return None;
        }
        let fields = parts
            .into_iter()
            .map(|p| p.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
            .collect::<Option<Vec<_>>>()?;
        Some(Record { fields })
    }
}

#[derive(Debug)]
pub struct Manifest {
    path: PathBuf,
    records: Vec<Record>,
}

impl Manifest {
    /// Opens (or creates) the manifest at `path` and loads its complete records.
    pub fn open(path: &Path) -> Result<Self> {
        let mut records = Vec::new();
        if path.exists() {
            let text = fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))?;
            records.extend(text.lines().filter_map(Record::from_line));
            if !text.is_empty() && !text.ends_with('\n') {
                // finish the torn line so the next record starts cleanly
                let mut f = OpenOptions::new().append(true).open(path).map_err(|e| PipelineError::io(path, e))?;
                f.write_all(b"\n").map_err(|e| PipelineError::io(path, e))?;
            }
        } else if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| PipelineError::io(dir, e))?;
        }
        Ok(Manifest {
            path: path.to_path_buf(),
            records,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&mut self, rec: Record) -> Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| PipelineError::io(&self.path, e))?;
        let mut line = rec.to_line();
        line.push('\n');
        f.write_all(line.as_bytes())
            .and_then(|_| f.sync_data())
            .map_err(|e| PipelineError::io(&self.path, e))?;
        self.records.push(rec);
        Ok(())
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    /// Latest completion record for `stage`.
    pub fn last_done(&self, stage: &str) -> Option<&Record> {
        self.records
            .iter()
            .rev()
            .find(|r| r.get("event") == Some("done") && r.get("stage") == Some(stage))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_torn_lines() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.log");
        let mut m = Manifest::open(&p).unwrap();
        m.append(Record::new("done", "a").with("count", 3)).unwrap();
        // simulate a write cut short
        let mut f = OpenOptions::new().append(true).open(&p).unwrap();
        f.write_all(b"event=done\tstage=b\tcount=9").unwrap();
        drop(f);
        let mut m = Manifest::open(&p).unwrap();
        assert_eq!(m.records().len(), 1);
        assert!(m.last_done("b").is_none());
        assert_eq!(m.last_done("a").unwrap().get("count"), Some("3"));
        m.append(Record::new("done", "b").with("count", "x\ty")).unwrap();
        let m = Manifest::open(&p).unwrap();
        assert_eq!(m.records().len(), 2);
        assert_eq!(m.last_done("b").unwrap().get("count"), Some("x y"));
    }
}
