//! Upper-bound driver: runs a stage chain and re-verifies the graphs it ends
//! with as members of the target class.
//!
//! ```text
//! [witness w22]
//! stage = d22
//! class = 2,2,2,3;4;22
//! ```

use std::fmt;
use std::path::Path;

use folkman_core::arrowing::{ORACLE_MAX_COLORS, ORACLE_MAX_VERTICES};
use folkman_core::{arrows_oracle, clique_number, write_graph6, ArrowChecker, ClassSpec, Graph};

use crate::config::Stanza;
use crate::constants::Constants;
use crate::error::{PipelineError, Result, EXIT_OK, EXIT_REFUTED};
use crate::ledger::fv_name;
use crate::manifest::Record;
use crate::stages::{stages_from_config, RunOptions, Runner};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSpec {
    pub name: String,
    pub stage: String,
    pub class: ClassSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub name: String,
    pub class: ClassSpec,
    pub stage: String,
    pub witnesses: Vec<Graph>,
    /// each witness was also confirmed by the colouring oracle
    pub oracle_checked: bool,
    /// stage sizes along the chain, in execution order
    pub chain: Vec<(String, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperReport {
    pub results: Vec<WitnessReport>,
    pub constants_version: u32,
}

impl UpperReport {
    pub fn found(&self) -> bool {
        self.results.iter().all(|r| !r.witnesses.is_empty())
    }

    pub fn exit_code(&self) -> u8 {
        if self.found() {
            EXIT_OK
        } else {
            EXIT_REFUTED
        }
    }
}

impl fmt::Display for UpperReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "witness {}: {} from stage {}", r.name, r.class, r.stage)?;
            for (stage, count) in &r.chain {
                writeln!(f, "  stage {stage}: {count} graphs")?;
            }
            if r.witnesses.is_empty() {
                writeln!(f, "  no witness found; no bound is claimed")?;
                continue;
            }
            let how = if r.oracle_checked {
                "re-verified (clique number, arrowing, colouring oracle)"
            } else {
                "re-verified (clique number, arrowing)"
            };
            writeln!(f, "  {} witnesses, {how}:", r.witnesses.len())?;
            for g in &r.witnesses {
                writeln!(f, "    {}", write_graph6(g))?;
            }
            writeln!(
                f,
                "  established: proved here, {} <= {}",
                fv_name(&r.class.target, r.class.q),
                r.class.n
            )?;
        }
        write!(f, "constants table version {}", self.constants_version)
    }
}

/// Independent membership check: a fresh, memo-free checker, and the oracle when it applies.
pub fn verify_witness(g: &Graph, class: &ClassSpec) -> Result<bool> {
    let fail = |why: &str| PipelineError::Data(format!("witness {} fails re-verification: {why}", write_graph6(g)));
    if g.n() != class.n {
        return Err(fail(&format!("has {} vertices, class needs {}", g.n(), class.n)));
    }
    if clique_number(g) >= class.q {
        return Err(fail(&format!("contains K{}", class.q)));
    }
    if !ArrowChecker::new().arrows(g, &class.target) {
        return Err(fail(&format!("does not arrow {}", class.target)));
    }
    if g.n() <= ORACLE_MAX_VERTICES && class.target.s() <= ORACLE_MAX_COLORS {
        if !arrows_oracle(g, &class.target)?.arrows() {
            return Err(fail("colouring oracle found a good colouring"));
        }
        return Ok(true);
    }
    Ok(false)
}

pub fn parse_upper_config(stanzas: &[Stanza], base: &Path) -> Result<(Vec<crate::stages::Stage>, Vec<WitnessSpec>)> {
    let stages = stages_from_config(stanzas, base)?;
    let mut specs = Vec::new();
    for st in stanzas {
        match st.kind.as_str() {
            "stage" => {}
            "witness" => {
                st.check_keys(&["stage", "class"])?;
                specs.push(WitnessSpec {
                    name: st.name_or_err()?.to_string(),
                    stage: st.require("stage")?.to_string(),
                    class: st.parse_required("class")?,
                });
            }
            other => return Err(st.error(st.line, format!("unexpected stanza [{other}] in upper-bound config"))),
        }
    }
    if specs.is_empty() {
        return Err(PipelineError::Usage("config declares no [witness]".into()));
    }
    Ok((stages, specs))
}

pub fn run_upper_bound(stanzas: &[Stanza], base: &Path, constants: &Constants, opts: RunOptions) -> Result<UpperReport> {
    let (stages, specs) = parse_upper_config(stanzas, base)?;
    let mut runner = Runner::new(stages, constants, opts)?;
    let mut results = Vec::new();
    for spec in specs {
        let res = runner.run(&spec.stage)?;
        let candidates = res.graphs.clone();
        let mut chain = Vec::new();
        let mut order = vec![spec.stage.clone()];
        let mut i = 0;
        while i < order.len() {
            if let Some(st) = runner.stage(&order[i]) {
                for inp in st.kind.inputs() {
                    if !order.iter().any(|o| o == inp) {
                        order.push(inp.to_string());
                    }
                }
            }
            i += 1;
        }
        for id in order.iter().rev() {
            if let Some(r) = runner.result(id) {
                chain.push((id.clone(), r.count()));
            }
        }
        let witnesses: Vec<Graph> = candidates.into_iter().filter(|g| spec.class.contains(g)).collect();
        let mut oracle_checked = !witnesses.is_empty();
        for g in &witnesses {
            oracle_checked &= verify_witness(g, &spec.class)?;
        }
        runner.manifest_mut().append(
            Record::new("witness", &spec.name)
                .with("class", &spec.class)
                .with("stage", &spec.stage)
                .with("witnesses", witnesses.len()),
        )?;
        results.push(WitnessReport {
            name: spec.name,
            class: spec.class,
            stage: spec.stage,
            witnesses,
            oracle_checked,
            chain,
        });
    }
    Ok(UpperReport {
        results,
        constants_version: constants.version,
    })
}
