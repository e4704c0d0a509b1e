//! Search kernels for vertex Folkman numbers.
//!
//! * [`graph`], [`graph6`]: dense graphs on at most 64 vertices and their text encoding.
//! * [`clique`]: clique/independence numbers, maximal independent sets,
//!   maximal K3-free subsets, `(+K3)` and maximality tests.
//! * [`arrowing`]: `G →v (a_1, ..., a_s)` deciders and class specifications.
//! * [`canon`]: canonical labelling and isomorph rejection.
//! * [`extender`]: the independent-vertex extension algorithm, Sperner
//!   closure, maximalization and the populate procedure.
//! * [`enumerate`]: exhaustive generation of small graphs, used as an oracle.

pub mod arrowing;
pub mod canon;
pub mod clique;
pub mod enumerate;
pub mod error;
pub mod extender;
pub mod graph;
pub mod graph6;

pub use arrowing::{
    arrows, arrows_2r3, arrows_oracle, join_lift_check, target_is_valid, ArrowChecker, ArrowOutcome,
    ArrowTarget, ClassSpec, Coloring,
};
pub use canon::{are_isomorphic, canonical_form, canonical_graph, dedup, CanonicalForm};
pub use clique::{
    clique_number, has_kclique, independence_number, is_maximal_in_class, is_plus_k3,
    maximal_independent_sets, maximal_k3free_subsets, SubsetFamily,
};
pub use error::{ArrowError, CliqueError, ExtendError, Graph6Error, GraphError};
pub use extender::{
    algorithm_extend, candidate_satisfies, descend_vertices, extend_one, maximalize, populate,
    sperner_closure, ExtendParams, ExtendRun, ExtensionCandidate,
};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use graph6::{parse_graph6, write_graph6};
