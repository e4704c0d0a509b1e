//! Lower-bound driver: proves `H_v(a; q; n) = ∅` through an α case split.
//!
//! Each `[claim name]` stanza names a class and is followed by `[case]`
//! stanzas covering every independence number 1..=n. A case is closed by
//!
//! * `by = ramsey`: a cited R(k, l) with k ≥ q and n ≥ R(k, l) rules out α < l;
//! * `by = removal`: deleting a maximum independent set leaves a graph arrowing
//!   the target with one 2 dropped, so a cited lower bound L on that number
//!   rules out α > n − L;
//! * `by = enumerate`: every graph of the class with α in range is generated;
//! * `by = extend`: the named extend stage finds every maximal non-Sperner
//!   graph with α = s; Sperner graphs are excluded by `sperner`, either
//!   `cite:<constant>` (a lower bound ≥ n) or `claim:<name>` (an earlier
//!   established claim for n − 1).
//!
//! Nothing is claimed unless every α value is covered.

use std::fmt;
use std::path::Path;

use folkman_core::extender::EXTEND_Q;
use folkman_core::{write_graph6, ArrowTarget, ClassSpec, Graph};

use crate::config::{parse_range, Stanza};
use crate::constants::{Constant, Constants, Value};
use crate::error::{PipelineError, Result, EXIT_OK, EXIT_REFUTED};
use crate::filter::Predicates;
use crate::ledger::fv_name;
use crate::manifest::Record;
use crate::stages::{stages_from_config, RunOptions, Runner, Stage, StageKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpernerBasis {
    Cite(String),
    Claim(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    Ramsey { constant: String },
    Removal { constant: String },
    Enumerate,
    Extend { stage: String, sperner: SpernerBasis },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub alpha: (usize, usize),
    pub method: Method,
    line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub name: String,
    pub class: ClassSpec,
    pub cases: Vec<Case>,
    source: String,
    line: usize,
}

impl Claim {
    fn error(&self, line: usize, msg: impl Into<String>) -> PipelineError {
        PipelineError::Config {
            path: self.source.clone(),
            line,
            msg: format!("claim {}: {}", self.name, msg.into()),
        }
    }
}

fn parse_case(st: &Stanza) -> Result<Case> {
    st.check_keys(&["alpha", "by", "constant", "stage", "sperner"])?;
    let alpha_text = st.require("alpha")?;
    let alpha = parse_range(alpha_text).ok_or_else(|| st.error(st.line, format!("bad alpha range `{alpha_text}`")))?;
    let method = match st.require("by")? {
        "ramsey" => Method::Ramsey {
            constant: st.require("constant")?.to_string(),
        },
        "removal" => Method::Removal {
            constant: st.require("constant")?.to_string(),
        },
        "enumerate" => Method::Enumerate,
        "extend" => {
            let sp = st.require("sperner")?;
            let sperner = if let Some(k) = sp.strip_prefix("cite:") {
                SpernerBasis::Cite(k.to_string())
            } else if let Some(c) = sp.strip_prefix("claim:") {
                SpernerBasis::Claim(c.to_string())
            } else {
                return Err(st.error(st.line, "`sperner` must be cite:<constant> or claim:<name>"));
            };
            Method::Extend {
                stage: st.require("stage")?.to_string(),
                sperner,
            }
        }
        other => return Err(st.error(st.line, format!("unknown case method `{other}`"))),
    };
    Ok(Case {
        alpha,
        method,
        line: st.line,
    })
}

/// Splits a lower-bound config into stages and claims.
pub fn parse_lower_config(stanzas: &[Stanza], base: &Path) -> Result<(Vec<Stage>, Vec<Claim>)> {
    let stages = stages_from_config(stanzas, base)?;
    let mut claims: Vec<Claim> = Vec::new();
    for st in stanzas {
        match st.kind.as_str() {
            "stage" => {}
            "claim" => {
                st.check_keys(&["class"])?;
                claims.push(Claim {
                    name: st.name_or_err()?.to_string(),
                    class: st.parse_required("class")?,
                    cases: Vec::new(),
                    source: st.source().to_string(),
                    line: st.line,
                });
            }
            "case" => {
                let claim = claims
                    .last_mut()
                    .ok_or_else(|| st.error(st.line, "[case] must follow a [claim]"))?;
                claim.cases.push(parse_case(st)?);
            }
            other => return Err(st.error(st.line, format!("unexpected stanza [{other}] in lower-bound config"))),
        }
    }
    if claims.is_empty() {
        return Err(PipelineError::Usage("config declares no [claim]".into()));
    }
    Ok((stages, claims))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    /// closed by a value taken from the literature
    Assumed {
        constant: String,
        statement: String,
        citation: String,
        reason: String,
    },
    /// closed by a computation recorded in the manifest
    Computed {
        stage: String,
        sha256: String,
        survivors: usize,
        detail: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub alpha: (usize, usize),
    pub basis: Basis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub name: String,
    pub class: ClassSpec,
    pub cases: Vec<CaseReport>,
    /// class members found where emptiness was expected
    pub survivors: Vec<Graph>,
}

impl ClaimReport {
    pub fn established(&self) -> bool {
        self.survivors.is_empty() && !self.cases.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerReport {
    pub claims: Vec<ClaimReport>,
    pub constants_version: u32,
}

impl LowerReport {
    pub fn established(&self) -> bool {
        self.claims.iter().all(ClaimReport::established)
    }

    pub fn exit_code(&self) -> u8 {
        if self.established() {
            EXIT_OK
        } else {
            EXIT_REFUTED
        }
    }
}

fn range_text((a, b): (usize, usize)) -> String {
    if a == b {
        a.to_string()
    } else {
        format!("{a}..{b}")
    }
}

impl fmt::Display for LowerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            writeln!(f, "claim {}: {} = empty", c.name, c.class)?;
            for case in &c.cases {
                let a = range_text(case.alpha);
                match &case.basis {
                    Basis::Assumed {
                        constant,
                        statement,
                        citation,
                        reason,
                    } => {
                        writeln!(f, "  alpha {a}: assumed from literature [{constant}] {statement}; {reason}")?;
                        writeln!(f, "    citation: {citation}")?;
                    }
                    Basis::Computed {
                        stage,
                        sha256,
                        survivors,
                        detail,
                    } => {
                        writeln!(f, "  alpha {a}: proved here by stage {stage}, {survivors} survivors (sha256 {sha256})")?;
                        for d in detail {
                            writeln!(f, "    {d}")?;
                        }
                    }
                }
            }
            let fv = fv_name(&c.class.target, c.class.q);
            if c.established() {
                writeln!(f, "  established: {} is empty, hence {fv} >= {}", c.class, c.class.n + 1)?;
            } else {
                writeln!(f, "  REFUTED: {} survivors in {}", c.survivors.len(), c.class)?;
                for g in &c.survivors {
                    writeln!(f, "    {}", write_graph6(g))?;
                }
            }
        }
        write!(f, "constants table version {}", self.constants_version)
    }
}

fn drop_one_two(t: &ArrowTarget) -> Option<ArrowTarget> {
    let e = t.entries();
    let i = e.iter().position(|&a| a == 2)?;
    let mut rest: Vec<usize> = e.to_vec();
    rest.remove(i);
    ArrowTarget::new(&rest).ok()
}

fn folkman_lower(c: &Constant) -> Option<(&ArrowTarget, usize, usize)> {
    match &c.value {
        Value::Folkman {
            target,
            q,
            lower: Some(l),
            ..
        } => Some((target, *q, *l)),
        _ => None,
    }
}

struct Driver<'r, 'c> {
    runner: &'r mut Runner<'c>,
    done: Vec<ClaimReport>,
}

impl Driver<'_, '_> {
    /// Static checks: coverage and the arithmetic behind cited cases.
    fn validate(&self, claim: &Claim, earlier: &[Claim]) -> Result<()> {
        let n = claim.class.n;
        if n == 0 {
            return Err(claim.error(claim.line, "class must have at least one vertex"));
        }
        if claim.cases.is_empty() {
            return Err(claim.error(claim.line, "no [case] stanzas"));
        }
        let mut covered = vec![false; n + 1];
        for case in &claim.cases {
            let (lo, hi) = case.alpha;
            if lo == 0 || hi > n {
                return Err(claim.error(case.line, format!("alpha range {} outside 1..{n}", range_text(case.alpha))));
            }
            covered[lo..=hi].iter_mut().for_each(|c| *c = true);
            self.check_case(claim, case, earlier)?;
        }
        let gaps: Vec<String> = (1..=n).filter(|&a| !covered[a]).map(|a| a.to_string()).collect();
        if !gaps.is_empty() {
            return Err(claim.error(
                claim.line,
                format!("refusing to claim emptiness: no case covers alpha = {}", gaps.join(", ")),
            ));
        }
        Ok(())
    }

    fn check_case(&self, claim: &Claim, case: &Case, earlier: &[Claim]) -> Result<()> {
        let class = &claim.class;
        let (lo, hi) = case.alpha;
        let constants = self.runner.constants();
        match &case.method {
            Method::Ramsey { constant } => {
                let c = constants.require(constant)?;
                let Value::Ramsey { k, l, value } = c.value else {
                    return Err(claim.error(case.line, format!("`{constant}` is not a Ramsey number")));
                };
                if k < class.q {
                    return Err(claim.error(case.line, format!("{} bounds K{k}, but the class only forbids K{}", c.statement(), class.q)));
                }
                if class.n < value {
                    return Err(claim.error(case.line, format!("{} needs at least {value} vertices, class has {}", c.statement(), class.n)));
                }
                if hi >= l {
                    return Err(claim.error(case.line, format!("{} only excludes alpha < {l}", c.statement())));
                }
            }
            Method::Removal { constant } => {
                let c = constants.require(constant)?;
                let (t, q, lower) =
                    folkman_lower(c).ok_or_else(|| claim.error(case.line, format!("`{constant}` has no Folkman lower bound")))?;
                let want = drop_one_two(&class.target)
                    .ok_or_else(|| claim.error(case.line, format!("target {} has no entry 2 to remove", class.target)))?;
                if *t != want || q != class.q {
                    return Err(claim.error(
                        case.line,
                        format!("removal needs a bound on {}, `{constant}` is about {}", fv_name(&want, class.q), fv_name(t, q)),
                    ));
                }
                let first = (class.n + 1).saturating_sub(lower).max(1);
                if lo < first {
                    return Err(claim.error(case.line, format!("{} only excludes alpha >= {first}", c.statement())));
                }
            }
            Method::Enumerate => {
                if class.n > folkman_core::enumerate::ENUMERATION_MAX_VERTICES {
                    return Err(claim.error(
                        case.line,
                        format!("enumeration is capped at {} vertices", folkman_core::enumerate::ENUMERATION_MAX_VERTICES),
                    ));
                }
            }
            Method::Extend { stage, sperner } => {
                let r = class
                    .target
                    .as_2r3()
                    .ok_or_else(|| claim.error(case.line, format!("extend applies to targets (2_r,3), not {}", class.target)))?;
                if class.q != EXTEND_Q {
                    return Err(claim.error(case.line, format!("extend applies to q = {EXTEND_Q}")));
                }
                if lo != hi {
                    return Err(claim.error(case.line, "an extend case covers exactly one alpha"));
                }
                let st = self
                    .runner
                    .stage(stage)
                    .ok_or_else(|| claim.error(case.line, format!("unknown stage `{stage}`")))?;
                match st.kind {
                    StageKind::Extend { n, r: sr, s, .. } if n == class.n && sr == r && s == lo => {}
                    _ => {
                        return Err(claim.error(
                            case.line,
                            format!("stage `{stage}` must be an extend stage with n = {}, r = {r}, s = {lo}", class.n),
                        ))
                    }
                }
                match sperner {
                    SpernerBasis::Cite(key) => {
                        let c = constants.require(key)?;
                        let ok = folkman_lower(c).is_some_and(|(t, q, l)| *t == class.target && q == class.q && l >= class.n);
                        if !ok {
                            return Err(claim.error(
                                case.line,
                                format!("`{key}` does not give {} >= {}", fv_name(&class.target, class.q), class.n),
                            ));
                        }
                    }
                    SpernerBasis::Claim(name) => {
                        let prev = earlier
                            .iter()
                            .find(|c| &c.name == name)
                            .ok_or_else(|| claim.error(case.line, format!("no earlier claim `{name}`")))?;
                        if prev.class.target != class.target || prev.class.q != class.q || prev.class.n + 1 != class.n {
                            return Err(claim.error(
                                case.line,
                                format!("claim `{name}` is about {}, Sperner exclusion needs {}", prev.class, class.with_n(class.n - 1)),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn run_claim(&mut self, claim: &Claim) -> Result<ClaimReport> {
        let mut cases = Vec::new();
        let mut survivors = Vec::new();
        for case in &claim.cases {
            let alpha = range_text(case.alpha);
            let basis = match &case.method {
                Method::Ramsey { constant } | Method::Removal { constant } => {
                    let c = self.runner.constants().require(constant)?.clone();
                    let reason = match (&case.method, &c.value) {
                        (Method::Ramsey { .. }, Value::Ramsey { k, l, value }) => {
                            format!("a K{k}-free graph on {value} or more vertices has alpha >= {l}")
                        }
                        _ => format!(
                            "deleting a maximum independent set leaves a graph arrowing {} on fewer vertices than allowed",
                            drop_one_two(&claim.class.target).map(|t| t.to_string()).unwrap_or_default()
                        ),
                    };
                    Basis::Assumed {
                        constant: constant.clone(),
                        statement: c.statement(),
                        citation: c.citation.clone(),
                        reason,
                    }
                }
                Method::Enumerate => {
                    let id = format!("{}.alpha{}", claim.name, alpha.replace("..", "-"));
                    let preds = Predicates {
                        class: Some(claim.class.clone()),
                        alpha_min: Some(case.alpha.0),
                        alpha_max: Some(case.alpha.1),
                        ..Default::default()
                    };
                    if self.runner.stage(&id).is_none() {
                        self.runner.add_stage(Stage {
                            id: id.clone(),
                            kind: StageKind::Enumerate { n: claim.class.n, preds },
                            expect: None,
                            expect_before_arrowing: None,
                            cost_unknown: false,
                        })?;
                    }
                    let res = self.runner.run(&id)?;
                    survivors.extend(res.graphs.iter().cloned());
                    Basis::Computed {
                        stage: id,
                        sha256: res.sha256.clone(),
                        survivors: res.count(),
                        detail: vec![format!(
                            "exhaustive: {} graphs generated with omega < {}",
                            res.metric("generated").unwrap_or(0),
                            claim.class.q
                        )],
                    }
                }
                Method::Extend { stage, sperner } => {
                    let sperner_text = match sperner {
                        SpernerBasis::Cite(key) => {
                            let c = self.runner.constants().require(key)?;
                            format!("Sperner graphs excluded: assumed from literature [{key}] {} ({})", c.statement(), c.citation)
                        }
                        SpernerBasis::Claim(name) => {
                            let prev = self.done.iter().find(|c| &c.name == name);
                            if !prev.is_some_and(ClaimReport::established) {
                                return Err(claim.error(case.line, format!("claim `{name}` was not established")));
                            }
                            format!("Sperner graphs excluded: proved here by claim {name}")
                        }
                    };
                    let sources = self.runner.sources(stage);
                    let res = self.runner.run(stage)?;
                    survivors.extend(res.graphs.iter().cloned());
                    let mut detail = vec![
                        format!(
                            "maximal non-Sperner graphs: {} candidate families, {} graphs before arrowing, {} after",
                            res.metric("candidates").unwrap_or(0),
                            res.metric("after_dedup").unwrap_or(0),
                            res.count()
                        ),
                        sperner_text,
                    ];
                    let (sha, count) = (res.sha256.clone(), res.count());
                    for (src, dataset) in sources {
                        match dataset {
                            Some(d) => {
                                let c = self.runner.constants().require(&d)?;
                                detail.push(format!("input {src}: assumed complete from literature [{d}] {} ({})", c.statement(), c.citation));
                            }
                            None => detail.push(format!("input {src}: computed here")),
                        }
                    }
                    Basis::Computed {
                        stage: stage.clone(),
                        sha256: sha,
                        survivors: count,
                        detail,
                    }
                }
            };
            let mut rec = Record::new("case", &claim.name).with("alpha", &alpha);
            rec = match &basis {
                Basis::Assumed { constant, .. } => rec.with("basis", format!("cited:{constant}")),
                Basis::Computed {
                    stage,
                    sha256,
                    survivors,
                    ..
                } => rec
                    .with("basis", format!("stage:{stage}"))
                    .with("sha256", sha256)
                    .with("survivors", survivors),
            };
            self.runner.manifest_mut().append(rec)?;
            cases.push(CaseReport {
                alpha: case.alpha,
                basis,
            });
            if !survivors.is_empty() {
                break;
            }
        }
        let report = ClaimReport {
            name: claim.name.clone(),
            class: claim.class.clone(),
            cases,
            survivors: folkman_core::dedup(survivors),
        };
        self.runner.manifest_mut().append(
            Record::new("claim", &claim.name)
                .with("class", &claim.class)
                .with("outcome", if report.established() { "established" } else { "refuted" })
                .with("survivors", report.survivors.len()),
        )?;
        Ok(report)
    }
}

/// Runs every claim of a lower-bound config, stopping at the first refuted one.
pub fn run_lower_bound(stanzas: &[Stanza], base: &Path, constants: &Constants, opts: RunOptions) -> Result<LowerReport> {
    let (stages, claims) = parse_lower_config(stanzas, base)?;
    let mut runner = Runner::new(stages, constants, opts)?;
    let mut driver = Driver {
        runner: &mut runner,
        done: Vec::new(),
    };
    for (i, claim) in claims.iter().enumerate() {
        driver.validate(claim, &claims[..i])?;
    }
    for claim in &claims {
        let report = driver.run_claim(claim)?;
        let ok = report.established();
        driver.done.push(report);
        if !ok {
            break;
        }
    }
    Ok(LowerReport {
        claims: driver.done,
        constants_version: constants.version,
    })
}
