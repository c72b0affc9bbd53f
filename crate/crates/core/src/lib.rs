//! Vertex coloring by iterated tabu search.
//!
//! A run colors the graph with DSATUR and then keeps asking a tabu engine
//! (Tabucol over complete colorings, Partialcol over conflict-free partial
//! ones) for a legal coloring with one color fewer. Each attempt starts from
//! an initial solution that is either built from scratch or recycled from the
//! last legal coloring by dissolving some of its color classes.
//!
//! Colors are 0-based in memory and 1-based in every file format and record.

pub mod bench;
pub mod coloring;
pub mod constructive;
pub mod driver;
mod error;
pub mod graph;
pub mod oracle;
pub mod recycle;
pub mod rng;
pub mod tabu;

pub use coloring::{is_legal, penalty_complete, penalty_partial, CompleteColoring, PartialColoring};
pub use constructive::dsatur;
pub use driver::{solve_vcol, Engine, InitGenerator, LevelRecord, LevelStatus, RunRecord, SolveConfig};
pub use error::{Error, Result};
pub use graph::{parse_dimacs, Graph};
pub use recycle::{recycle_complete, recycle_partial, ClassSelection, RecolorRule, RecycleConfig};
pub use tabu::{partialcol_search, tabucol_search, SearchBudget, SearchOutcome, SearchStatus, TenureScheme};
