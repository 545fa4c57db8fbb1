pub mod catalog;
pub mod chern;
pub mod expr;
pub mod hasse;
pub mod lincomb;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod report;
pub mod ringkit;
pub mod schubert;
pub mod symfunc;

pub use lincomb::LinComb;
pub use poly::Poly;
pub use rational::Q;
pub use symfunc::{PQExpansion, PQFamily, Partition, SchurExpansion, StrictPartition, SymError, SymPoly};
pub use catalog::{builtin, load_spec, run_suite, CatalogError, SuiteOptions, Variety, VarietySpec};
pub use hasse::{HasseDiagram, HasseError};
pub use report::{Check, CheckReport, Status};
pub use ringkit::{GradedRing, RingElt, RingError};
pub use schubert::{GrassCtx, SchubertCycle, SpinorCycle};
