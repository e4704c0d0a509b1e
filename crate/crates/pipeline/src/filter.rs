//! Graph predicates shared by the `filter`/`enumerate` commands and config stages.

use std::fmt;

use folkman_core::enumerate::Hereditary;
use folkman_core::{
    clique_number, dedup, independence_number, is_maximal_in_class, is_plus_k3, ArrowChecker, ArrowTarget,
    ClassSpec, Graph,
};
use rayon::prelude::*;

use crate::config::Stanza;
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Predicates {
    pub n: Option<usize>,
    pub omega_max: Option<usize>,
    pub alpha_min: Option<usize>,
    pub alpha_max: Option<usize>,
    pub plus_k3: bool,
    pub non_sperner: bool,
    /// maximal K_q-free: ω < q and adding any edge creates a K_q
    pub maximal_q: Option<usize>,
    pub arrows: Option<ArrowTarget>,
    /// membership in H_v(target; q; n)
    pub class: Option<ClassSpec>,
}

pub const STANZA_KEYS: &[&str] = &[
    "n",
    "omega_max",
    "alpha_min",
    "alpha_max",
    "plus_k3",
    "non_sperner",
    "maximal_q",
    "arrows",
    "class",
    "maximal",
];

impl Predicates {
    /// Reads predicate keys from a stanza. `maximal = true` means maximal in
    /// the stanza's `class`.
    pub fn from_stanza(st: &Stanza) -> Result<Self> {
        let class: Option<ClassSpec> = st.parse("class")?;
        let mut maximal_q = st.parse("maximal_q")?;
        if st.flag("maximal")? {
            let c = class
                .as_ref()
                .ok_or_else(|| st.error(st.line, "`maximal = true` needs `class`"))?;
            maximal_q = Some(c.q);
        }
        Ok(Predicates {
            n: st.parse("n")?,
            omega_max: st.parse("omega_max")?,
            alpha_min: st.parse("alpha_min")?,
            alpha_max: st.parse("alpha_max")?,
            plus_k3: st.flag("plus_k3")?,
            non_sperner: st.flag("non_sperner")?,
            maximal_q,
            arrows: st.parse("arrows")?,
            class,
        })
    }

    pub fn is_empty(&self) -> bool {
        *self == Predicates::default()
    }

    /// Bounds on ω and α that can be applied while generating graphs.
    pub fn hereditary(&self) -> Hereditary {
        let class_omega = self.class.as_ref().map(|c| c.q - 1);
        let maximal_omega = self.maximal_q.map(|q| q.saturating_sub(1));
        let omega = [self.omega_max, class_omega, maximal_omega].into_iter().flatten().min();
        Hereditary {
            max_clique: omega,
            max_independence: self.alpha_max,
        }
    }

    pub fn accepts(&self, g: &Graph, checker: &ArrowChecker) -> bool {
        if self.n.is_some_and(|n| g.n() != n) || self.class.as_ref().is_some_and(|c| g.n() != c.n) {
            return false;
        }
        if let Some(w) = self.omega_max {
            if clique_number(g) > w {
                return false;
            }
        }
        if let Some(c) = &self.class {
            if folkman_core::has_kclique(g, c.q) {
                return false;
            }
        }
        if self.alpha_min.is_some() || self.alpha_max.is_some() {
            let a = independence_number(g);
            if self.alpha_min.is_some_and(|lo| a < lo) || self.alpha_max.is_some_and(|hi| a > hi) {
                return false;
            }
        }
        if self.plus_k3 && !is_plus_k3(g) {
            return false;
        }
        if self.non_sperner && g.is_sperner() {
            return false;
        }
        if let Some(q) = self.maximal_q {
            if !matches!(is_maximal_in_class(g, q), Ok(true)) {
                return false;
            }
        }
        if let Some(t) = &self.arrows {
            if !checker.arrows(g, t) {
                return false;
            }
        }
        if let Some(c) = &self.class {
            if !checker.arrows(g, &c.target) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Predicates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n = {n}"));
        }
        if let Some(c) = &self.class {
            parts.push(format!("in {c}"));
        }
        if let Some(w) = self.omega_max {
            parts.push(format!("omega <= {w}"));
        }
        if let Some(a) = self.alpha_min {
            parts.push(format!("alpha >= {a}"));
        }
        if let Some(a) = self.alpha_max {
            parts.push(format!("alpha <= {a}"));
        }
        if self.plus_k3 {
            parts.push("(+K3)".into());
        }
        if self.non_sperner {
            parts.push("non-Sperner".into());
        }
        if let Some(q) = self.maximal_q {
            parts.push(format!("maximal K{q}-free"));
        }
        if let Some(t) = &self.arrows {
            parts.push(format!("arrows {t}"));
        }
        if parts.is_empty() {
            f.write_str("no predicates")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

/// Graphs passing `preds`, deduplicated, canonically labelled and sorted by canonical form.
pub fn filter_graphs(graphs: Vec<Graph>, preds: &Predicates, checker: &ArrowChecker) -> Vec<Graph> {
    let kept: Vec<Graph> = graphs.into_par_iter().filter(|g| preds.accepts(g, checker)).collect();
    dedup(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_membership() {
        let p = Predicates {
            class: Some("2,3;4;7".parse().unwrap()),
            ..Default::default()
        };
        let ch = ArrowChecker::new();
        assert!(p.accepts(&Graph::cycle_complement(7), &ch));
        assert!(!p.accepts(&Graph::complete(7), &ch));
        assert!(!p.accepts(&Graph::cycle_complement(5), &ch));
        assert_eq!(p.hereditary().max_clique, Some(3));
    }

    #[test]
    fn display_lists_predicates() {
        let p = Predicates {
            plus_k3: true,
            alpha_max: Some(5),
            ..Default::default()
        };
        assert_eq!(p.to_string(), "alpha <= 5, (+K3)");
        assert_eq!(Predicates::default().to_string(), "no predicates");
    }
}
