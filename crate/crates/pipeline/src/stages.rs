//! Config-declared stages producing sorted graph6 files, with manifest-gated resume.

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use folkman_core::enumerate::all_graphs;
use folkman_core::extender::{edge_removal_members, populate_to_fixpoint};
use folkman_core::{
    algorithm_extend, dedup, descend_vertices, maximalize, sperner_closure, ArrowChecker, ClassSpec, ExtendParams,
    Graph,
};
use rayon::prelude::*;

use crate::config::Stanza;
use crate::constants::{Constants, Value};
use crate::error::{PipelineError, Result};
use crate::filter::{filter_graphs, Predicates, STANZA_KEYS};
use crate::io::{encode, maybe_gunzip, parse_lines, read_bytes, sha256_hex, write_atomic};
use crate::manifest::{Manifest, Record};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StageKind {
    Load {
        path: PathBuf,
        sha256: Option<String>,
        dataset: Option<String>,
    },
    Enumerate {
        n: usize,
        preds: Predicates,
    },
    Filter {
        input: String,
        preds: Predicates,
    },
    Extend {
        input: String,
        n: usize,
        r: usize,
        s: usize,
        validate: bool,
    },
    Sperner {
        input: String,
        class: ClassSpec,
    },
    Union {
        inputs: Vec<String>,
    },
    EdgeRemoval {
        input: String,
        class: ClassSpec,
        preds: Predicates,
    },
    Maximalize {
        input: String,
        q: usize,
        class: Option<ClassSpec>,
    },
    Populate {
        input: String,
        class: ClassSpec,
        rounds: usize,
    },
    Descend {
        input: String,
        class: ClassSpec,
    },
}

impl StageKind {
    pub fn name(&self) -> &'static str {
        match self {
            StageKind::Load { .. } => "load",
            StageKind::Enumerate { .. } => "enumerate",
            StageKind::Filter { .. } => "filter",
            StageKind::Extend { .. } => "extend",
            StageKind::Sperner { .. } => "sperner",
            StageKind::Union { .. } => "union",
            StageKind::EdgeRemoval { .. } => "edge-removal",
            StageKind::Maximalize { .. } => "maximalize",
            StageKind::Populate { .. } => "populate",
            StageKind::Descend { .. } => "descend",
        }
    }

    pub fn inputs(&self) -> Vec<&str> {
        match self {
            StageKind::Load { .. } | StageKind::Enumerate { .. } => Vec::new(),
            StageKind::Union { inputs } => inputs.iter().map(String::as_str).collect(),
            StageKind::Filter { input, .. }
            | StageKind::Extend { input, .. }
            | StageKind::Sperner { input, .. }
            | StageKind::EdgeRemoval { input, .. }
            | StageKind::Maximalize { input, .. }
            | StageKind::Populate { input, .. }
            | StageKind::Descend { input, .. } => vec![input.as_str()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub id: String,
    pub kind: StageKind,
    /// expected size of the output
    pub expect: Option<usize>,
    /// extend only: expected number of graphs after isomorph rejection, before arrowing
    pub expect_before_arrowing: Option<usize>,
    /// marks a stage whose running time is not known in advance
    pub cost_unknown: bool,
}

const COMMON_KEYS: &[&str] = &["kind", "expect", "expect_before_arrowing", "cost"];

impl Stage {
    /// Parses a `[stage id]` stanza. Relative `path`s resolve against `base`.
    pub fn from_stanza(st: &Stanza, base: &Path) -> Result<Self> {
        let id = st.name_or_err()?.to_string();
        let allow = |extra: &[&str]| -> Result<()> {
            let keys: Vec<&str> = COMMON_KEYS.iter().chain(extra).copied().collect();
            st.check_keys(&keys)
        };
        let input = || st.require("input").map(str::to_string);
        let class = || st.parse_required::<ClassSpec>("class");
        let kind = match st.require("kind")? {
            "load" => {
                allow(&["path", "sha256", "dataset"])?;
                StageKind::Load {
                    path: base.join(st.require("path")?),
                    sha256: st.get("sha256").map(str::to_ascii_lowercase),
                    dataset: st.get("dataset").map(str::to_string),
                }
            }
            "enumerate" => {
                allow(STANZA_KEYS)?;
                let preds = Predicates::from_stanza(st)?;
                let n = preds
                    .n
                    .or(preds.class.as_ref().map(|c| c.n))
                    .ok_or_else(|| st.error(st.line, "enumerate needs `n` or `class`"))?;
                StageKind::Enumerate { n, preds }
            }
            "filter" => {
                let mut keys = vec!["input"];
                keys.extend_from_slice(STANZA_KEYS);
                allow(&keys)?;
                StageKind::Filter {
                    input: input()?,
                    preds: Predicates::from_stanza(st)?,
                }
            }
            "extend" => {
                allow(&["input", "n", "r", "s", "validate"])?;
                StageKind::Extend {
                    input: input()?,
                    n: st.parse_required("n")?,
                    r: st.parse_required("r")?,
                    s: st.parse_required("s")?,
                    validate: st.get("validate").is_none() || st.flag("validate")?,
                }
            }
            "sperner" => {
                allow(&["input", "class"])?;
                StageKind::Sperner {
                    input: input()?,
                    class: class()?,
                }
            }
            "union" => {
                allow(&["inputs"])?;
                let inputs: Vec<String> = st
                    .require("inputs")?
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                if inputs.is_empty() {
                    return Err(st.error(st.line, "union needs at least one input"));
                }
                StageKind::Union { inputs }
            }
            "edge-removal" => {
                let mut keys = vec!["input"];
                keys.extend_from_slice(STANZA_KEYS);
                allow(&keys)?;
                let c = class()?;
                let mut preds = Predicates::from_stanza(st)?;
                preds.class = None;
                StageKind::EdgeRemoval {
                    input: input()?,
                    class: c,
                    preds,
                }
            }
            "maximalize" => {
                allow(&["input", "q", "class"])?;
                let class: Option<ClassSpec> = st.parse("class")?;
                let q = match (st.parse::<usize>("q")?, &class) {
                    (Some(q), _) => q,
                    (None, Some(c)) => c.q,
                    (None, None) => return Err(st.error(st.line, "maximalize needs `q` or `class`")),
                };
                StageKind::Maximalize {
                    input: input()?,
                    q,
                    class,
                }
            }
            "populate" => {
                allow(&["input", "class", "rounds"])?;
                StageKind::Populate {
                    input: input()?,
                    class: class()?,
                    rounds: st.parse("rounds")?.unwrap_or(1),
                }
            }
            "descend" => {
                allow(&["input", "class"])?;
                StageKind::Descend {
                    input: input()?,
                    class: class()?,
                }
            }
            other => return Err(st.error(st.line, format!("unknown stage kind `{other}`"))),
        };
        let cost_unknown = match st.get("cost") {
            None | Some("known") => false,
            Some("unknown") => true,
            Some(other) => return Err(st.error(st.line, format!("`cost` must be known or unknown, got `{other}`"))),
        };
        let expect_before_arrowing = st.parse("expect_before_arrowing")?;
        if expect_before_arrowing.is_some() && !matches!(kind, StageKind::Extend { .. }) {
            return Err(st.error(st.line, "`expect_before_arrowing` applies to extend stages only"));
        }
        Ok(Stage {
            id,
            kind,
            expect: st.parse("expect")?,
            expect_before_arrowing,
            cost_unknown,
        })
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub workdir: PathBuf,
    pub allow_unknown_cost: bool,
    /// capacity of the arrowing memo; 0 disables it
    pub cache_capacity: usize,
}

impl RunOptions {
    pub fn new(workdir: impl Into<PathBuf>) -> Self {
        RunOptions {
            workdir: workdir.into(),
            allow_unknown_cost: false,
            cache_capacity: 1 << 16,
        }
    }
}

type Metrics = Vec<(String, usize)>;

#[derive(Clone, Debug)]
pub struct StageResult {
    pub id: String,
    pub path: PathBuf,
    pub sha256: String,
    pub graphs: Vec<Graph>,
    /// named counts besides the output size
    pub metrics: Vec<(String, usize)>,
    /// loaded from a completed earlier run instead of recomputed
    pub reused: bool,
}

impl StageResult {
    pub fn count(&self) -> usize {
        self.graphs.len()
    }

    pub fn metric(&self, name: &str) -> Option<usize> {
        self.metrics.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }
}

pub struct Runner<'a> {
    stages: BTreeMap<String, Stage>,
    constants: &'a Constants,
    opts: RunOptions,
    manifest: Manifest,
    checker: ArrowChecker,
    results: BTreeMap<String, StageResult>,
    active: HashSet<String>,
}

impl<'a> Runner<'a> {
    pub fn new(stages: Vec<Stage>, constants: &'a Constants, opts: RunOptions) -> Result<Self> {
        let mut map = BTreeMap::new();
        for s in stages {
            if map.contains_key(&s.id) {
                return Err(PipelineError::Usage(format!("stage `{}` declared twice", s.id)));
            }
            map.insert(s.id.clone(), s);
        }
        for s in map.values() {
            for i in s.kind.inputs() {
                if !map.contains_key(i) {
                    return Err(PipelineError::Usage(format!("stage `{}` reads unknown stage `{i}`", s.id)));
                }
            }
            if let StageKind::Load { dataset: Some(d), .. } = &s.kind {
                match &constants.require(d)?.value {
                    Value::Dataset { .. } => {}
                    _ => return Err(PipelineError::Usage(format!("stage `{}`: constant `{d}` is not a dataset", s.id))),
                }
            }
        }
        std::fs::create_dir_all(&opts.workdir).map_err(|e| PipelineError::io(&opts.workdir, e))?;
        let manifest = Manifest::open(&opts.workdir.join("manifest.log"))?;
        let checker = if opts.cache_capacity > 0 {
            ArrowChecker::with_cache(opts.cache_capacity)
        } else {
            ArrowChecker::new()
        };
        Ok(Runner {
            stages: map,
            constants,
            opts,
            manifest,
            checker,
            results: BTreeMap::new(),
            active: HashSet::new(),
        })
    }

    /// Registers a stage built by a driver rather than read from a config.
    pub fn add_stage(&mut self, stage: Stage) -> Result<()> {
        if self.stages.contains_key(&stage.id) {
            return Err(PipelineError::Usage(format!("stage `{}` declared twice", stage.id)));
        }
        for i in stage.kind.inputs() {
            if !self.stages.contains_key(i) {
                return Err(PipelineError::Usage(format!("stage `{}` reads unknown stage `{i}`", stage.id)));
            }
        }
        self.stages.insert(stage.id.clone(), stage);
        Ok(())
    }

    /// Load stages (with their cited dataset, if any) that `id` ultimately reads.
    pub fn sources(&self, id: &str) -> Vec<(String, Option<String>)> {
        let mut out = Vec::new();
        let mut stack = vec![id.to_string()];
        let mut seen = HashSet::new();
        while let Some(s) = stack.pop() {
            if !seen.insert(s.clone()) {
                continue;
            }
            let Some(stage) = self.stages.get(&s) else { continue };
            match &stage.kind {
                StageKind::Load { dataset, .. } => out.push((s.clone(), dataset.clone())),
                StageKind::Enumerate { .. } => out.push((s.clone(), None)),
                k => stack.extend(k.inputs().into_iter().map(str::to_string)),
            }
        }
        out.sort();
        out
    }

    pub fn stage(&self, id: &str) -> Option<&Stage> {
        self.stages.get(id)
    }

    pub fn checker(&self) -> &ArrowChecker {
        &self.checker
    }

    pub fn constants(&self) -> &Constants {
        self.constants
    }

    pub fn manifest_mut(&mut self) -> &mut Manifest {
        &mut self.manifest
    }

    pub fn result(&self, id: &str) -> Option<&StageResult> {
        self.results.get(id)
    }

    /// Runs `id` and everything it depends on, reusing completed stages.
    pub fn run(&mut self, id: &str) -> Result<&StageResult> {
        if !self.results.contains_key(id) {
            let stage = self
                .stages
                .get(id)
                .cloned()
                .ok_or_else(|| PipelineError::Usage(format!("unknown stage `{id}`")))?;
            if !self.active.insert(id.to_string()) {
                return Err(PipelineError::Usage(format!("stage `{id}` depends on itself")));
            }
            let mut input_hashes = Vec::new();
            for i in stage.kind.inputs() {
                input_hashes.push(self.run(i)?.sha256.clone());
            }
            let res = self.run_one(&stage, &input_hashes)?;
            self.active.remove(id);
            self.results.insert(id.to_string(), res);
        }
        Ok(&self.results[id])
    }

    fn input_graphs(&self, stage: &Stage) -> Vec<Graph> {
        let mut all = Vec::new();
        for i in stage.kind.inputs() {
            all.extend(self.results[i].graphs.iter().cloned());
        }
        all
    }

    fn run_one(&mut self, stage: &Stage, input_hashes: &[String]) -> Result<StageResult> {
        let out_path = self.opts.workdir.join(format!("{}.g6", stage.id));
        // a load stage depends on the file contents, not just the path
        let source = match &stage.kind {
            StageKind::Load { path, .. } => Some(read_bytes(path)?),
            _ => None,
        };
        let mut digest_input = format!("{:?}|{}", stage.kind, input_hashes.join(","));
        if let Some(bytes) = &source {
            digest_input.push('|');
            digest_input.push_str(&sha256_hex(bytes));
        }
        let digest = sha256_hex(digest_input.as_bytes());

        if let Some(rec) = self.manifest.last_done(&stage.id) {
            if rec.get("digest") == Some(digest.as_str()) {
                let res = self.reuse(stage, rec, &out_path)?;
                self.manifest.append(
                    Record::new("reuse", &stage.id)
                        .with("digest", &digest)
                        .with("sha256", &res.sha256)
                        .with("count", res.count()),
                )?;
                log::info!("stage {}: reused {} graphs", stage.id, res.count());
                self.check_expectations(stage, &res)?;
                return Ok(res);
            }
        }

        if stage.cost_unknown && !self.opts.allow_unknown_cost {
            return Err(PipelineError::Usage(format!(
                "stage `{}` is marked cost = unknown; rerun with --allow-unknown-cost to start it",
                stage.id
            )));
        }
        self.manifest.append(
            Record::new("start", &stage.id)
                .with("kind", stage.kind.name())
                .with("digest", &digest),
        )?;
        log::info!("stage {}: running {}", stage.id, stage.kind.name());
        let started = Instant::now();
        let (graphs, metrics) = self.compute(stage, source)?;
        let bytes = encode(&graphs);
        let sha = sha256_hex(&bytes);
        write_atomic(&out_path, &bytes)?;
        let wall = started.elapsed().as_millis();
        let mut rec = Record::new("done", &stage.id)
            .with("kind", stage.kind.name())
            .with("digest", &digest)
            .with("inputs", input_hashes.join(","))
            .with("output", out_path.display())
            .with("sha256", &sha)
            .with("count", graphs.len());
        for (k, v) in &metrics {
            rec = rec.with(&format!("metric.{k}"), v);
        }
        self.manifest.append(rec.with("wall_ms", wall))?;
        log::info!("stage {}: {} graphs in {wall} ms", stage.id, graphs.len());
        let res = StageResult {
            id: stage.id.clone(),
            path: out_path,
            sha256: sha,
            graphs,
            metrics,
            reused: false,
        };
        self.check_expectations(stage, &res)?;
        Ok(res)
    }

    fn reuse(&self, stage: &Stage, rec: &Record, out_path: &Path) -> Result<StageResult> {
        let expected = rec.get("sha256").unwrap_or_default().to_string();
        if !out_path.exists() {
            return Err(PipelineError::Data(format!(
                "stage `{}` is marked complete but {} is missing",
                stage.id,
                out_path.display()
            )));
        }
        let bytes = read_bytes(out_path)?;
        let found = sha256_hex(&bytes);
        if found != expected {
            return Err(PipelineError::HashMismatch {
                what: out_path.display().to_string(),
                expected,
                found,
            });
        }
        let graphs = parse_lines(&bytes, &out_path.display().to_string())?;
        let metrics = rec
            .fields()
            .iter()
            .filter_map(|(k, v)| Some((k.strip_prefix("metric.")?.to_string(), v.parse().ok()?)))
            .collect();
        Ok(StageResult {
            id: stage.id.clone(),
            path: out_path.to_path_buf(),
            sha256: found,
            graphs,
            metrics,
            reused: true,
        })
    }

    fn check_expectations(&self, stage: &Stage, res: &StageResult) -> Result<()> {
        if let Some(e) = stage.expect {
            if res.count() != e {
                return Err(PipelineError::CountMismatch {
                    stage: stage.id.clone(),
                    metric: "count".into(),
                    expected: e,
                    found: res.count(),
                });
            }
        }
        if let Some(e) = stage.expect_before_arrowing {
            let found = res.metric("after_dedup").unwrap_or(0);
            if found != e {
                return Err(PipelineError::CountMismatch {
                    stage: stage.id.clone(),
                    metric: "graphs before arrowing".into(),
                    expected: e,
                    found,
                });
            }
        }
        Ok(())
    }

    fn compute(&self, stage: &Stage, source: Option<Vec<u8>>) -> Result<(Vec<Graph>, Metrics)> {
        let checker = &self.checker;
        let mut metrics = Vec::new();
        let graphs = match &stage.kind {
            StageKind::Load { path, sha256, dataset } => {
                let raw = source.expect("read before compute");
                if let Some(want) = sha256 {
                    let found = sha256_hex(&raw);
                    if &found != want {
                        return Err(PipelineError::HashMismatch {
                            what: path.display().to_string(),
                            expected: want.clone(),
                            found,
                        });
                    }
                }
                let text = maybe_gunzip(raw, path)?;
                let graphs = parse_lines(&text, &path.display().to_string())?;
                metrics.push(("lines".to_string(), graphs.len()));
                if let Some(d) = dataset {
                    if let Value::Dataset { count, .. } = &self.constants.require(d)?.value {
                        if graphs.len() != *count {
                            return Err(PipelineError::Data(format!(
                                "{} has {} graphs, cited dataset `{d}` has {count}",
                                path.display(),
                                graphs.len()
                            )));
                        }
                    }
                }
                dedup(graphs)
            }
            StageKind::Enumerate { n, preds } => {
                let all = all_graphs(*n, preds.hereditary()).ok_or_else(|| {
                    PipelineError::Usage(format!(
                        "stage `{}`: enumeration is capped at {} vertices",
                        stage.id,
                        folkman_core::enumerate::ENUMERATION_MAX_VERTICES
                    ))
                })?;
                metrics.push(("generated".to_string(), all.len()));
                filter_graphs(all, preds, checker)
            }
            StageKind::Filter { preds, .. } => filter_graphs(self.input_graphs(stage), preds, checker),
            StageKind::Extend { n, r, s, validate, .. } => {
                let mut params = ExtendParams::new(*n, *r, *s);
                params.validate_inputs = *validate;
                let run = algorithm_extend(&self.input_graphs(stage), &params, checker)?;
                metrics.push(("candidates".to_string(), run.candidates));
                metrics.push(("after_dedup".to_string(), run.after_dedup));
                run.graphs
            }
            StageKind::Sperner { class, .. } => sperner_closure(&self.input_graphs(stage), class, checker),
            StageKind::Union { .. } => dedup(self.input_graphs(stage)),
            StageKind::EdgeRemoval { class, preds, .. } => {
                let inputs = self.input_graphs(stage);
                let mut all = edge_removal_members(&inputs, class, checker);
                all.extend(inputs.into_iter().filter(|g| class.contains_with(g, checker)));
                filter_graphs(all, preds, checker)
            }
            StageKind::Maximalize { q, class, .. } => {
                let grown: Vec<Vec<Graph>> = self
                    .input_graphs(stage)
                    .par_iter()
                    .map(|g| maximalize(g, *q))
                    .collect::<Result<_, _>>()
                    .map_err(|e| PipelineError::Data(format!("stage `{}`: {e}", stage.id)))?;
                let all = dedup(grown.into_iter().flatten());
                match class {
                    Some(c) => all.into_par_iter().filter(|g| c.contains_with(g, checker)).collect(),
                    None => all,
                }
            }
            StageKind::Populate { class, rounds, .. } => {
                let (out, ran) = populate_to_fixpoint(&self.input_graphs(stage), class, checker, *rounds)?;
                metrics.push(("rounds".to_string(), ran));
                out
            }
            StageKind::Descend { class, .. } => descend_vertices(&self.input_graphs(stage), class, checker),
        };
        Ok((graphs, metrics))
    }
}

/// Reads stage stanzas from a parsed config; other stanza kinds are left to the caller.
pub fn stages_from_config(stanzas: &[Stanza], base: &Path) -> Result<Vec<Stage>> {
    stanzas
        .iter()
        .filter(|s| s.kind == "stage")
        .map(|s| Stage::from_stanza(s, base))
        .collect()
}
