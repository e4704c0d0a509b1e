//! Staged drivers and bookkeeping for vertex Folkman number searches.
//!
//! * [`stages`]: config-declared stages writing sorted graph6 files, resumable through
//!   the append-only [`manifest`].
//! * [`lower`]: emptiness proofs for `H_v(a; q; n)` by an α case split.
//! * [`upper`]: witness search through a stage chain, with re-verification.
//! * [`ledger`]: closure of known bounds under the propagation rules.
//! * [`constants`]: the table of values taken from the literature.

pub mod config;
pub mod constants;
pub mod error;
pub mod filter;
pub mod ingest;
pub mod io;
pub mod ledger;
pub mod lower;
pub mod manifest;
pub mod stages;
pub mod upper;

pub use constants::Constants;
pub use error::{PipelineError, Result, EXIT_DATA, EXIT_OK, EXIT_REFUTED, EXIT_USAGE};
pub use filter::{filter_graphs, Predicates};
pub use ledger::{derive, BoundRecord, Provenance, Rule, Subject};
pub use lower::{run_lower_bound, LowerReport};
pub use stages::{RunOptions, Runner, Stage, StageKind};
pub use upper::{run_upper_bound, UpperReport};
