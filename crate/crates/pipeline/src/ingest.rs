//! Ingestion of external graph6 datasets into a local normalized copy.

use std::path::Path;

use crate::error::{PipelineError, Result};
use crate::io::{maybe_gunzip, parse_lines, read_bytes, sha256_hex, write_graphs};
use crate::manifest::{Manifest, Record};

/// Largest download accepted, in bytes.
const MAX_DOWNLOAD: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IngestReport {
    pub source: String,
    pub count: usize,
    /// hash of the bytes as fetched (before decompression)
    pub source_sha256: String,
    /// hash of the normalized output file
    pub output_sha256: String,
}

fn is_url(s: &str) -> bool {
    s.starts_with("http://") || s.starts_with("https://")
}

fn fetch(url: &str) -> Result<Vec<u8>> {
    let fail = |e: ureq::Error| PipelineError::Data(format!("fetching {url}: {e}"));
    let mut resp = ureq::get(url).call().map_err(fail)?;
    resp.body_mut().with_config().limit(MAX_DOWNLOAD).read_to_vec().map_err(fail)
}

/// Reads `source` (a path, `-`, or an http(s) URL; optionally gzip-compressed),
/// checks every line parses, and writes one re-encoded graph6 line per graph
/// to `out`, keeping the source order. A mismatching `expected_sha256`
/// (over the fetched bytes) aborts before anything is written.
pub fn ingest(source: &str, out: &Path, expected_sha256: Option<&str>, manifest: Option<&Path>) -> Result<IngestReport> {
    let raw = if is_url(source) {
        fetch(source)?
    } else {
        read_bytes(Path::new(source))?
    };
    let source_sha256 = sha256_hex(&raw);
    if let Some(want) = expected_sha256 {
        if !want.eq_ignore_ascii_case(&source_sha256) {
            return Err(PipelineError::HashMismatch {
                what: source.to_string(),
                expected: want.to_ascii_lowercase(),
                found: source_sha256,
            });
        }
    }
    let text = maybe_gunzip(raw, Path::new(source))?;
    let graphs = parse_lines(&text, source)?;
    let output_sha256 = write_graphs(out, &graphs)?;
    if let Some(m) = manifest {
        Manifest::open(m)?.append(
            Record::new("ingest", "ingest")
                .with("source", source)
                .with("source_sha256", &source_sha256)
                .with("output", out.display())
                .with("sha256", &output_sha256)
                .with("count", graphs.len()),
        )?;
    }
    Ok(IngestReport {
        source: source.to_string(),
        count: graphs.len(),
        source_sha256,
        output_sha256,
    })
}
