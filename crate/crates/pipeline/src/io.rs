//! graph6 line files: reading (optionally gzip-compressed), atomic writing, hashing.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use flate2::read::GzDecoder;
use folkman_core::{parse_graph6, write_graph6, Graph};
use sha2::{Digest, Sha256};

use crate::error::{PipelineError, Result};

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];
const HEADER: &str = ">>graph6<<";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Raw bytes of `path` (`-` is stdin).
pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| PipelineError::io(path, e))?;
    } else {
        buf = fs::read(path).map_err(|e| PipelineError::io(path, e))?;
    }
    Ok(buf)
}

/// Decompresses gzip data, detected by its magic bytes; other data passes through.
pub fn maybe_gunzip(bytes: Vec<u8>, what: &Path) -> Result<Vec<u8>> {
    if !bytes.starts_with(&GZIP_MAGIC) {
        return Ok(bytes);
    }
    let mut out = Vec::new();
    GzDecoder::new(&bytes[..])
        .read_to_end(&mut out)
        .map_err(|e| PipelineError::io(what, e))?;
    Ok(out)
}

/// Parses graph6 lines. Blank lines and the optional `>>graph6<<` header are
/// skipped; line numbers in errors are 1-based.
pub fn parse_lines(text: &[u8], what: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (i, raw) in text.split(|&b| b == b'\n').enumerate() {
        let line = std::str::from_utf8(raw).map_err(|_| PipelineError::Config {
            path: what.to_string(),
            line: i + 1,
            msg: "line is not ASCII".into(),
        })?;
        let line = line.trim_end_matches('\r');
        let line = line.strip_prefix(HEADER).unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line).map_err(|source| PipelineError::Parse {
            path: what.to_string(),
            line: i + 1,
            source,
        })?;
        out.push(g);
    }
    Ok(out)
}

pub fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    let bytes = maybe_gunzip(read_bytes(path)?, path)?;
    parse_lines(&bytes, &path.display().to_string())
}

pub fn encode(graphs: &[Graph]) -> Vec<u8> {
    let mut out = Vec::new();
    for g in graphs {
        out.extend_from_slice(write_graph6(g).as_bytes());
        out.push(b'\n');
    }
    out
}

/// Writes `bytes` through a temporary file and a rename, so a killed run never
/// leaves a truncated file under the final name. `-` writes to stdout.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if path.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(bytes)
            .and_then(|_| out.flush())
            .map_err(|e| PipelineError::io(path, e));
    }
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| PipelineError::io(dir, e))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    fs::write(&tmp, bytes).map_err(|e| PipelineError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| PipelineError::io(path, e))
}

/// Writes graphs one per line and returns the SHA-256 of the written bytes.
pub fn write_graphs(path: &Path, graphs: &[Graph]) -> Result<String> {
    let bytes = encode(graphs);
    write_atomic(path, &bytes)?;
    Ok(sha256_hex(&bytes))
}

pub fn file_sha256(path: &Path) -> Result<String> {
    Ok(sha256_hex(&read_bytes(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use flate2::write::GzEncoder;
    use flate2::Compression;

    #[test]
    fn header_and_blank_lines_are_skipped() {
        let g = parse_lines(b">>graph6<<Bw\n\nDhc\r\n", "t").unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[1], Graph::cycle(5));
    }

    #[test]
    fn bad_line_reports_its_number() {
        let err = parse_lines(b"Bw\nDhc\nB\n", "f.g6").unwrap_err();
        assert!(matches!(err, PipelineError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn gzip_is_detected() {
        let mut enc = GzEncoder::new(Vec::new(), Compression::default());
        enc.write_all(b"Bw\nDhc\n").unwrap();
        let raw = maybe_gunzip(enc.finish().unwrap(), Path::new("x")).unwrap();
        assert_eq!(raw, b"Bw\nDhc\n");
    }
}
