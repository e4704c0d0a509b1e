//! Line-oriented `key = value` stanzas.
//!
//! ```text
//! # comment
//! [stage inputs]
//! kind = load
//! path = data/h14.g6
//! ```
//!
//! A stanza header is `[kind]` or `[kind name]`. Keys before the first header
//! land in a stanza of kind `""`.

use std::collections::HashSet;
use std::path::Path;
use std::str::FromStr;

use crate::error::{PipelineError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stanza {
    pub kind: String,
    pub name: Option<String>,
    pub line: usize,
    pub entries: Vec<Entry>,
    source: String,
}

impl Stanza {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn error(&self, line: usize, msg: impl Into<String>) -> PipelineError {
        PipelineError::Config {
            path: self.source.clone(),
            line,
            msg: msg.into(),
        }
    }

    pub fn name_or_err(&self) -> Result<&str> {
        self.name
            .as_deref()
            .ok_or_else(|| self.error(self.line, format!("[{}] needs a name", self.kind)))
    }

    fn entry(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entry(key).map(|e| e.value.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| self.error(self.line, format!("[{}] is missing `{key}`", self.kind)))
    }

    pub fn parse<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.entry(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse()
                .map(Some)
                .map_err(|err| self.error(e.line, format!("bad value for `{key}`: {err}"))),
        }
    }

    pub fn parse_required<T: FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.parse(key)?
            .ok_or_else(|| self.error(self.line, format!("[{}] is missing `{key}`", self.kind)))
    }

    pub fn flag(&self, key: &str) -> Result<bool> {
        match self.entry(key) {
            None => Ok(false),
            Some(e) => match e.value.as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                other => Err(self.error(e.line, format!("`{key}` must be true or false, got `{other}`"))),
            },
        }
    }

    /// Rejects keys outside `allowed`, to catch typos early.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for e in &self.entries {
            if !allowed.contains(&e.key.as_str()) {
                return Err(self.error(e.line, format!("unknown key `{}` in [{}]", e.key, self.kind)));
            }
        }
        Ok(())
    }
}

pub fn parse_config(text: &str, source: &str) -> Result<Vec<Stanza>> {
    let mut out: Vec<Stanza> = Vec::new();
    let err = |line: usize, msg: String| PipelineError::Config {
        path: source.to_string(),
        line,
        msg,
    };
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| err(lineno, "unterminated stanza header".into()))?;
            let mut words = inner.split_whitespace();
            let kind = words.next().ok_or_else(|| err(lineno, "empty stanza header".into()))?;
            let name = words.next().map(str::to_string);
            if words.next().is_some() {
                return Err(err(lineno, "stanza header takes at most a kind and a name".into()));
            }
            out.push(Stanza {
                kind: kind.to_string(),
                name,
                line: lineno,
                entries: Vec::new(),
                source: source.to_string(),
            });
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(lineno, format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(err(lineno, "empty key".into()));
        }
        if out.is_empty() {
            out.push(Stanza {
                kind: String::new(),
                name: None,
                line: lineno,
                entries: Vec::new(),
                source: source.to_string(),
            });
        }
        let st = out.last_mut().expect("pushed above");
        if st.entries.iter().any(|e| e.key == key) {
            return Err(err(lineno, format!("duplicate key `{key}`")));
        }
        st.entries.push(Entry {
            key: key.to_string(),
            value: value.trim().to_string(),
            line: lineno,
        });
    }
    let mut seen = HashSet::new();
    for st in &out {
        if let Some(name) = &st.name {
            if !seen.insert((st.kind.clone(), name.clone())) {
                return Err(err(st.line, format!("duplicate stanza [{} {name}]", st.kind)));
            }
        }
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<Vec<Stanza>> {
    let text = std::fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))?;
    parse_config(&text, &path.display().to_string())
}

/// Parses `3`, `1-4` or `1..4` (inclusive) into a range.
pub fn parse_range(s: &str) -> Option<(usize, usize)> {
    let s = s.trim();
    let (a, b) = match s.split_once("..").or_else(|| s.split_once('-')) {
        Some((a, b)) => (a.trim().parse().ok()?, b.trim().parse().ok()?),
        None => {
            let v = s.parse().ok()?;
            (v, v)
        }
    };
    (a <= b).then_some((a, b))
}
