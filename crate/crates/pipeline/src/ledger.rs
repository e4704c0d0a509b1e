//! Bounds ledger: closes a set of known Folkman-number bounds under the exact
//! small-q formulas and the propagation inequalities.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use folkman_core::{target_is_valid, ArrowTarget};

use crate::config::Stanza;
use crate::constants::{Constants, Value};
use crate::error::{PipelineError, Result};

/// `F_v(2,2,3;4)`.
pub fn fv_name(t: &ArrowTarget, q: usize) -> String {
    let t = t.to_string();
    format!("F_v({};{q})", &t[1..t.len() - 1])
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    Number { target: ArrowTarget, q: usize },
    /// `F_v(2_r, 3; r + 1)` for every r ≥ 3; bounds are offsets added to r.
    TwosThree,
    /// `F_v(a; m - 2)` for every target with m ≥ 6 and max a = 3; bounds are offsets added to m.
    MinusTwoMaxThree,
}

impl Subject {
    pub fn number(target: ArrowTarget, q: usize) -> Self {
        Subject::Number { target, q }
    }

    fn value_text(&self, v: i64) -> String {
        let (param, suffix) = match self {
            Subject::Number { .. } => return v.to_string(),
            Subject::TwosThree => ("r", " for r >= 3"),
            Subject::MinusTwoMaxThree => ("m", " for m >= 6 and max a = 3"),
        };
        match v {
            0 => format!("{param}{suffix}"),
            v if v > 0 => format!("{param} + {v}{suffix}"),
            v => format!("{param} - {}{suffix}", -v),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Number { target, q } => f.write_str(&fv_name(target, *q)),
            Subject::TwosThree => f.write_str("F_v(2_r,3;r+1)"),
            Subject::MinusTwoMaxThree => f.write_str("F_v(a;m-2)"),
        }
    }
}

impl FromStr for Subject {
    type Err = String;

    /// `2,2,2,3;4`, `F_v(2,2,2,3;4)`, `family:twos-three` or `family:minus-two`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s {
            "family:twos-three" | "F_v(2_r,3;r+1)" => return Ok(Subject::TwosThree),
            "family:minus-two" | "F_v(a;m-2)" => return Ok(Subject::MinusTwoMaxThree),
            _ => {}
        }
        let body = s.strip_prefix("F_v").unwrap_or(s).trim();
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let (t, q) = body
            .split_once(';')
            .ok_or_else(|| format!("expected a1,...,as;q, got {s:?}"))?;
        let target: ArrowTarget = t.parse()?;
        let q: usize = q.trim().parse().map_err(|_| format!("bad q in {s:?}"))?;
        if !target_is_valid(&target, q) {
            return Err(format!("{} does not exist: q must exceed max a = {}", fv_name(&target, q), target.p()));
        }
        Ok(Subject::Number { target, q })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    AboveM,
    AtM,
    JoinLift,
    MinusTwo,
    Stronger233,
    FamilyInstance,
}

impl Rule {
    pub fn id(&self) -> &'static str {
        match self {
            Rule::AboveM => "exact-above-m",
            Rule::AtM => "exact-at-m",
            Rule::JoinLift => "join-lift",
            Rule::MinusTwo => "minus-two",
            Rule::Stronger233 => "233-dominates-2223",
            Rule::FamilyInstance => "family-instance",
        }
    }

    pub fn statement(&self) -> &'static str {
        match self {
            Rule::AboveM => "if q >= m + 1 then F_v(a;q) = m",
            Rule::AtM => "if q = m >= p + 1 then F_v(a;m) = m + p",
            Rule::JoinLift => "K_t + G arrows (2_t, a) when G arrows a, so F_v(2_r,3;r+1) <= F_v(2,2,2,3;4) + r - 3 for r >= 3",
            Rule::MinusTwo => "F_v(a;m-2) <= F_v(2,3,3;4) + m - 6 if m >= 6 and max a = 3",
            Rule::Stronger233 => "G -> (2,3,3) implies G -> (2,2,2,3), so F_v(2,2,2,3;4) <= F_v(2,3,3;4)",
            Rule::FamilyInstance => "instance of a bound proved for a whole family",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// from the cited constants table
    Cited { key: String, citation: String },
    /// established by a computation of this tool
    Computed(String),
    /// supplied as an input without further justification
    Assumed(String),
    Derived { rule: Rule, from: Vec<String> },
}

impl Provenance {
    fn parse(s: &str, constants: &Constants) -> Result<Self, String> {
        if let Some(k) = s.strip_prefix("cite:") {
            let c = constants.get(k.trim()).ok_or_else(|| format!("no cited constant named `{}`", k.trim()))?;
            return Ok(Provenance::Cited {
                key: c.key.clone(),
                citation: c.citation.clone(),
            });
        }
        if let Some(t) = s.strip_prefix("computed:") {
            return Ok(Provenance::Computed(t.trim().to_string()));
        }
        if let Some(t) = s.strip_prefix("assumed:") {
            return Ok(Provenance::Assumed(t.trim().to_string()));
        }
        Err(format!("source must be cite:<key>, computed:<text> or assumed:<text>, got {s:?}"))
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Cited { key, citation } => write!(f, "assumed from literature [{key}]: {citation}"),
            Provenance::Computed(t) => write!(f, "proved here: {t}"),
            Provenance::Assumed(t) => write!(f, "assumed: {t}"),
            Provenance::Derived { rule, from } => {
                write!(f, "derived by rule {} ({})", rule.id(), rule.statement())?;
                if !from.is_empty() {
                    write!(f, " from {}", from.join(", "))?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRecord {
    pub subject: Subject,
    pub lower: Option<i64>,
    pub upper: Option<i64>,
    pub provenance: Provenance,
}

impl BoundRecord {
    pub fn upper(subject: Subject, v: i64, provenance: Provenance) -> Self {
        BoundRecord {
            subject,
            lower: None,
            upper: Some(v),
            provenance,
        }
    }

    pub fn lower(subject: Subject, v: i64, provenance: Provenance) -> Self {
        BoundRecord {
            subject,
            lower: Some(v),
            upper: None,
            provenance,
        }
    }

    pub fn is_derived(&self) -> bool {
        matches!(self.provenance, Provenance::Derived { .. })
    }

    pub fn rule(&self) -> Option<Rule> {
        match self.provenance {
            Provenance::Derived { rule, .. } => Some(rule),
            _ => None,
        }
    }

    /// The bound without its provenance, e.g. `F_v(2_r,3;r+1) <= r + 19 for r >= 3`.
    pub fn statement(&self) -> String {
        let s = &self.subject;
        match (self.lower, self.upper) {
            (Some(a), Some(b)) if a == b => format!("{s} = {}", s.value_text(a)),
            (Some(a), Some(b)) => format!("{} <= {s} <= {}", s.value_text(a), s.value_text(b)),
            (Some(a), None) => format!("{s} >= {}", s.value_text(a)),
            (None, Some(b)) => format!("{s} <= {}", s.value_text(b)),
            (None, None) => s.to_string(),
        }
    }
}

impl fmt::Display for BoundRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  [{}]", self.statement(), self.provenance)
    }
}

#[derive(Clone, Debug, Default)]
struct Sides {
    lower: Option<(i64, Provenance)>,
    upper: Option<(i64, Provenance)>,
}

#[derive(Default)]
struct Closure {
    map: BTreeMap<Subject, Sides>,
    changed: bool,
}

impl Closure {
    fn lower(&self, s: &Subject) -> Option<i64> {
        self.map.get(s).and_then(|e| e.lower.as_ref().map(|x| x.0))
    }

    fn upper(&self, s: &Subject) -> Option<i64> {
        self.map.get(s).and_then(|e| e.upper.as_ref().map(|x| x.0))
    }

    fn raise(&mut self, s: &Subject, v: i64, p: Provenance) {
        let e = self.map.entry(s.clone()).or_default();
        if e.lower.as_ref().is_none_or(|(cur, _)| v > *cur) {
            e.lower = Some((v, p));
            self.changed = true;
        }
    }

    fn lower_upper(&mut self, s: &Subject, v: i64, p: Provenance) {
        let e = self.map.entry(s.clone()).or_default();
        if e.upper.as_ref().is_none_or(|(cur, _)| v < *cur) {
            e.upper = Some((v, p));
            self.changed = true;
        }
    }

    fn check(&self) -> Result<()> {
        for (s, e) in &self.map {
            if let (Some((lo, lp)), Some((hi, hp))) = (&e.lower, &e.upper) {
                if lo > hi {
                    return Err(PipelineError::Data(format!(
                        "contradictory bounds for {s}: lower {lo} [{lp}] exceeds upper {hi} [{hp}]"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn n2223() -> Subject {
    Subject::number(ArrowTarget::twos_then(3, 3), 4)
}

fn n233() -> Subject {
    Subject::number(ArrowTarget::new(&[2, 3, 3]).expect("valid target"), 4)
}

fn derived(rule: Rule, from: Vec<String>) -> Provenance {
    Provenance::Derived { rule, from }
}

/// Closure of `known` under the ledger rules. Exact formulas and family
/// instances are also evaluated for every subject in `queries`.
/// Inputs with lower > upper (directly or after propagation) are rejected.
pub fn derive(known: &[BoundRecord], queries: &[Subject]) -> Result<Vec<BoundRecord>> {
    let mut c = Closure::default();
    for r in known {
        if let (Some(a), Some(b)) = (r.lower, r.upper) {
            if a > b {
                return Err(PipelineError::Data(format!("input record {} has lower > upper", r.subject)));
            }
        }
        if let Some(v) = r.lower {
            c.raise(&r.subject, v, r.provenance.clone());
        }
        if let Some(v) = r.upper {
            c.lower_upper(&r.subject, v, r.provenance.clone());
        }
    }
    c.check()?;
    for q in queries {
        c.map.entry(q.clone()).or_default();
    }

    loop {
        c.changed = false;
        let numbers: Vec<(ArrowTarget, usize)> = c
            .map
            .keys()
            .filter_map(|s| match s {
                Subject::Number { target, q } => Some((target.clone(), *q)),
                _ => None,
            })
            .collect();

        for (t, q) in &numbers {
            let s = Subject::number(t.clone(), *q);
            let (m, p) = (t.m() as i64, t.p() as i64);
            let q = *q as i64;
            let exact = if q > m {
                Some((m, Rule::AboveM))
            } else if q == m && m > p {
                Some((m + p, Rule::AtM))
            } else {
                None
            };
            if let Some((v, rule)) = exact {
                c.raise(&s, v, derived(rule, vec![format!("m = {m}, p = {p}, q = {q}")]));
                c.lower_upper(&s, v, derived(rule, vec![format!("m = {m}, p = {p}, q = {q}")]));
            }
        }

        if let Some(u) = c.upper(&n2223()) {
            let from = vec![format!("{} <= {u}", n2223())];
            c.lower_upper(&Subject::TwosThree, u - 3, derived(Rule::JoinLift, from));
        }
        if let Some(u) = c.upper(&n233()) {
            let from = vec![format!("{} <= {u}", n233())];
            c.lower_upper(&Subject::MinusTwoMaxThree, u - 6, derived(Rule::MinusTwo, from.clone()));
            c.lower_upper(&n2223(), u, derived(Rule::Stronger233, from));
        }
        if let Some(l) = c.lower(&n2223()) {
            c.raise(&n233(), l, derived(Rule::Stronger233, vec![format!("{} >= {l}", n2223())]));
        }

        for (t, q) in &numbers {
            let s = Subject::number(t.clone(), *q);
            if let Some(r) = t.as_2r3() {
                if r >= 3 && *q == r + 1 {
                    if let Some(off) = c.upper(&Subject::TwosThree) {
                        let from = vec![format!("{} <= {}", Subject::TwosThree, Subject::TwosThree.value_text(off))];
                        c.lower_upper(&s, r as i64 + off, derived(Rule::FamilyInstance, from));
                    }
                }
            }
            let m = t.m();
            if m >= 6 && t.p() == 3 && *q + 2 == m {
                if let Some(off) = c.upper(&Subject::MinusTwoMaxThree) {
                    let fam = Subject::MinusTwoMaxThree;
                    let from = vec![format!("{fam} <= {}", fam.value_text(off))];
                    c.lower_upper(&s, m as i64 + off, derived(Rule::FamilyInstance, from));
                }
            }
        }

        c.check()?;
        if !c.changed {
            break;
        }
    }

    let mut out = Vec::new();
    for (s, e) in c.map {
        match (e.lower, e.upper) {
            (Some((a, pa)), Some((b, pb))) if a == b && pa == pb => out.push(BoundRecord {
                subject: s,
                lower: Some(a),
                upper: Some(b),
                provenance: pa,
            }),
            (lo, hi) => {
                if let Some((a, p)) = lo {
                    out.push(BoundRecord::lower(s.clone(), a, p));
                }
                if let Some((b, p)) = hi {
                    out.push(BoundRecord::upper(s, b, p));
                }
            }
        }
    }
    Ok(out)
}

/// Folkman-type entries of the constants table as cited records.
pub fn cited_records(constants: &Constants) -> Vec<BoundRecord> {
    constants
        .iter()
        .filter_map(|c| match &c.value {
            Value::Folkman { target, q, lower, upper } if target_is_valid(target, *q) => Some(BoundRecord {
                subject: Subject::number(target.clone(), *q),
                lower: lower.map(|v| v as i64),
                upper: upper.map(|v| v as i64),
                provenance: Provenance::Cited {
                    key: c.key.clone(),
                    citation: c.citation.clone(),
                },
            }),
            _ => None,
        })
        .collect()
}

/// Reads `[bound]` and `[query]` stanzas.
pub fn parse_ledger_input(stanzas: &[Stanza], constants: &Constants) -> Result<(Vec<BoundRecord>, Vec<Subject>)> {
    let mut records = Vec::new();
    let mut queries = Vec::new();
    for st in stanzas {
        match st.kind.as_str() {
            "bound" => {
                st.check_keys(&["subject", "lower", "upper", "source"])?;
                let subject: Subject = st.parse_required("subject")?;
                let lower: Option<i64> = st.parse("lower")?;
                let upper: Option<i64> = st.parse("upper")?;
                if lower.is_none() && upper.is_none() {
                    return Err(st.error(st.line, "[bound] needs `lower` or `upper`"));
                }
                let provenance =
                    Provenance::parse(st.require("source")?, constants).map_err(|e| st.error(st.line, e))?;
                records.push(BoundRecord {
                    subject,
                    lower,
                    upper,
                    provenance,
                });
            }
            "query" => {
                st.check_keys(&["subject"])?;
                queries.push(st.parse_required("subject")?);
            }
            other => return Err(st.error(st.line, format!("unexpected stanza [{other}] in ledger input"))),
        }
    }
    Ok((records, queries))
}
