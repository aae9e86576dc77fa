//! Budgeted maximum coverage: pick items under a weight budget so that the
//! profit of the covered elements, each counted once, is maximal.
//!
//! The solver alternates a flip/swap tabu search with a perturbation driven
//! by learned per-item selection probabilities. The crate also ships an
//! instance generator and file format, an exhaustive oracle for small
//! instances, an LP exporter and the statistics used to compare runs.

pub mod cli;
pub mod descent;
pub mod driver;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod format;
pub mod generator;
pub mod instance;
pub mod learning;
pub mod lp;
pub mod rng;
pub mod state;
pub mod stats;
pub mod tabu;

pub use descent::{descent_local_search, initial_solution, random_fill};
pub use driver::{batch, solve, BatchSummary, Budget, RunResult, SolverConfig};
pub use error::{Error, ParseErrorKind, Result};
pub use exact::exact_optimum;
pub use format::{parse_instance, write_instance};
pub use generator::{generate_instance, GeneratorSpec};
pub use instance::{Instance, SelectionVector};
pub use learning::{PerturbationPolicy, ProbabilityVector};
pub use lp::{export_lp, LpModel};
pub use state::{Move, MoveDelta, SearchState};
pub use stats::{wilcoxon_signed_rank, PairedSample};
pub use tabu::{tabu_depth, tabu_search, tabu_tenure, TabuList, TsParams};
