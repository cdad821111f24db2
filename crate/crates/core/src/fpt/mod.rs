//! Exact maximum envy-free matchings through bounded search, and the
//! kernel for 0/1 quotas.
//!
//! Every solver fixes part of the matching and then completes it with
//! [`Residual`](crate::envyfree::Residual): the best envy-free matching that
//! keeps the fixed pairs and, where the solver closes a hospital, adds no one
//! to it.

mod branch;
mod enumerate;
mod kernel;

pub use branch::{branch_sd_completions, maxefm_branch_sd};
pub use enumerate::{maxefm_enum_lq, maxefm_enum_rprime};
pub use kernel::{kernelize, KernelOutcome, KernelResult};

use crate::error::SolveError;
use crate::model::{Instance, Matching, ResidentId};

/// Default cap on search size (2^24 evaluations).
pub const DEFAULT_BUDGET: u64 = 1 << 24;

pub(crate) fn require_unit_quotas(inst: &Instance) -> Result<(), SolveError> {
    match (0..inst.num_hospitals()).find(|&h| inst.upper_quota(h) > 1 || inst.lower_quota(h) > 1) {
        Some(hospital) => Err(SolveError::QuotaTooLarge { hospital }),
        None => Ok(()),
    }
}

pub(crate) fn check_budget(needed: u128, budget: u64) -> Result<(), SolveError> {
    if needed > budget as u128 {
        return Err(SolveError::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Counts evaluations against the budget.
pub(crate) struct Meter {
    used: u64,
    budget: u64,
}

impl Meter {
    pub(crate) fn new(budget: u64) -> Self {
        Self { used: 0, budget }
    }

    pub(crate) fn tick(&mut self) -> Result<(), SolveError> {
        self.used += 1;
        if self.used > self.budget {
            return Err(SolveError::BudgetExceeded {
                needed: self.used as u128,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// Keeps the largest matching seen, breaking ties towards the
/// lexicographically smallest assignment.
#[derive(Default)]
pub(crate) struct Best(Option<Matching>);

impl Best {
    pub(crate) fn offer(&mut self, m: Matching) {
        let better = match &self.0 {
            None => true,
            Some(cur) => {
                m.size() > cur.size()
                    || (m.size() == cur.size() && m.assignment() < cur.assignment())
            }
        };
        if better {
            self.0 = Some(m);
        }
    }

    pub(crate) fn into_inner(self) -> Option<Matching> {
        self.0
    }
}

/// Does a fixed resident envy another fixed resident?
pub(crate) fn fixed_envy(inst: &Instance, fixed: &Matching, newcomer: ResidentId) -> bool {
    let Some(h) = fixed.hospital_of(newcomer) else {
        return false;
    };
    fixed.pairs().any(|(r, hr)| {
        r != newcomer
            && ((inst.hospital_prefers(h, r, newcomer) && inst.resident_prefers(r, h, Some(hr)))
                || (inst.hospital_prefers(hr, newcomer, r)
                    && inst.resident_prefers(newcomer, hr, Some(h))))
    })
}
