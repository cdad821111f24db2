use thiserror::Error;

use crate::model::{HospitalId, MatchingError};

/// Failures reported by the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("input matching is not envy-free")]
    NotEnvyFree,
    #[error("input matching is not feasible")]
    NotFeasible,
    #[error("instance is not CL-restricted: hospital {hospital} has a lower quota but does not rank every resident")]
    NotClRestricted { hospital: HospitalId },
    #[error("hospital {hospital} has a quota above 1")]
    QuotaTooLarge { hospital: HospitalId },
    #[error("seed is not a minimal feasible matching: hospital {hospital} holds {held} residents, lower quota is {lower}")]
    NotMinimal {
        hospital: HospitalId,
        held: usize,
        lower: usize,
    },
    #[error("instance admits no feasible matching")]
    Infeasible,
    #[error("instance admits no feasible envy-free matching")]
    NoFeasibleEnvyFree,
    #[error("search needs about {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("exhaustive search supports at most {bound} residents, instance has {residents}")]
    OracleTooLarge { residents: usize, bound: usize },
    #[error("target size {k} is out of range 1..={max}")]
    InvalidTarget { k: usize, max: usize },
}
