//! Table of cited constants, loaded from `data/constants.txt`.

use std::collections::BTreeMap;
use std::path::Path;

use folkman_core::ArrowTarget;

use crate::config::{parse_config, read_config, Stanza};
use crate::error::{PipelineError, Result};

pub const BUILTIN: &str = include_str!("../data/constants.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    /// R(k, l) = value: every graph on `value` vertices has a K_k or an independent l-set.
    Ramsey { k: usize, l: usize, value: usize },
    /// lower ≤ F_v(target; q) ≤ upper
    Folkman {
        target: ArrowTarget,
        q: usize,
        lower: Option<usize>,
        upper: Option<usize>,
    },
    /// A published graph list and its size.
    Dataset { count: usize, description: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constant {
    pub key: String,
    pub value: Value,
    pub citation: String,
}

impl Constant {
    pub fn statement(&self) -> String {
        match &self.value {
            Value::Ramsey { k, l, value } => format!("R({k},{l}) = {value}"),
            Value::Folkman { target, q, lower, upper } => {
                let name = format!("F_v({};{q})", target.entries().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","));
                match (lower, upper) {
                    (Some(a), Some(b)) if a == b => format!("{name} = {a}"),
                    (Some(a), Some(b)) => format!("{a} <= {name} <= {b}"),
                    (Some(a), None) => format!("{name} >= {a}"),
                    (None, Some(b)) => format!("{name} <= {b}"),
                    (None, None) => name,
                }
            }
            Value::Dataset { count, description } => format!("{count} graphs: {description}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    pub version: u32,
    entries: BTreeMap<String, Constant>,
}

impl Constants {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN, "data/constants.txt").expect("bundled constants table parses")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_stanzas(read_config(path)?)
    }

    pub fn parse(text: &str, source: &str) -> Result<Self> {
        Self::from_stanzas(parse_config(text, source)?)
    }

    fn from_stanzas(stanzas: Vec<Stanza>) -> Result<Self> {
        let mut version = None;
        let mut entries = BTreeMap::new();
        for st in &stanzas {
            match st.kind.as_str() {
                "" => {
                    st.check_keys(&["version"])?;
                    version = st.parse("version")?;
                }
                "constant" => {
                    let c = parse_constant(st)?;
                    entries.insert(c.key.clone(), c);
                }
                other => return Err(st.error(st.line, format!("unexpected stanza [{other}] in constants table"))),
            }
        }
        let version = version.ok_or_else(|| PipelineError::Data("constants table has no version".into()))?;
        Ok(Constants { version, entries })
    }

    pub fn get(&self, key: &str) -> Option<&Constant> {
        self.entries.get(key)
    }

    pub fn require(&self, key: &str) -> Result<&Constant> {
        self.get(key)
            .ok_or_else(|| PipelineError::Usage(format!("no cited constant named `{key}`")))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Constant> {
        self.entries.values()
    }
}

fn parse_constant(st: &Stanza) -> Result<Constant> {
    let key = st.name_or_err()?.to_string();
    let citation = st.require("citation")?.to_string();
    let value = match st.require("kind")? {
        "ramsey" => {
            st.check_keys(&["kind", "k", "l", "value", "citation"])?;
            Value::Ramsey {
                k: st.parse_required("k")?,
                l: st.parse_required("l")?,
                value: st.parse_required("value")?,
            }
        }
        "folkman" => {
            st.check_keys(&["kind", "target", "q", "lower", "upper", "citation"])?;
            let lower: Option<usize> = st.parse("lower")?;
            let upper: Option<usize> = st.parse("upper")?;
            if let (Some(a), Some(b)) = (lower, upper) {
                if a > b {
                    return Err(st.error(st.line, format!("lower {a} exceeds upper {b}")));
                }
            }
            Value::Folkman {
                target: st.parse_required("target")?,
                q: st.parse_required("q")?,
                lower,
                upper,
            }
        }
        "dataset" => {
            st.check_keys(&["kind", "count", "description", "citation"])?;
            Value::Dataset {
                count: st.parse_required("count")?,
                description: st.require("description")?.to_string(),
            }
        }
        other => return Err(st.error(st.line, format!("unknown constant kind `{other}`"))),
    };
    Ok(Constant { key, value, citation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_loads() {
        let c = Constants::builtin();
        assert!(c.version >= 1);
        assert_eq!(c.require("ramsey_4_4").unwrap().statement(), "R(4,4) = 18");
        assert_eq!(c.require("fv_2_2_3_4").unwrap().statement(), "F_v(2,2,3;4) = 14");
        assert_eq!(c.require("fv_2_3_3_4").unwrap().statement(), "20 <= F_v(2,3,3;4) <= 24");
        assert!(matches!(
            c.require("dataset_r45_24").unwrap().value,
            Value::Dataset { count: 352366, .. }
        ));
        assert!(c.iter().all(|k| !k.citation.is_empty()));
        assert!(c.require("nope").is_err());
    }

    #[test]
    fn inverted_bounds_rejected() {
        let text = "version = 1\n[constant x]\nkind = folkman\ntarget = 2,3\nq = 4\nlower = 9\nupper = 7\ncitation = t\n";
        assert!(Constants::parse(text, "t").is_err());
    }
}
