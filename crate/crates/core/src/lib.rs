//! Matchings for hospital/residents instances with lower quotas.
//!
//! The crate covers stable, envy-free and relaxed stable matchings: checkers
//! for every property, polynomial algorithms for the tractable cases, exact
//! parameterized solvers, a 3/2-approximation for maximum relaxed stable
//! matchings, gadget generators and exhaustive oracles for small instances.

pub mod envyfree;
pub mod error;
pub mod format;
pub mod fpt;
pub mod generators;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod relaxed;
pub mod rng;
pub mod stable;
pub mod stats;

mod flow;

pub use error::SolveError;
pub use model::{
    blocking_pairs, deficiency, envy_pairs, is_envy_free, is_feasible, is_relaxed_stable,
    is_stable, matching_size, relaxed_stability, unmatched_residents, Diagnostics, EnvyPair,
    HospitalId, Instance, Matching, MatchingError, ModelError, RelaxedVerdict, ResidentId,
    Violation,
};
pub use stable::{rural_hospitals_profile, stable_is_feasible, stable_matching};
