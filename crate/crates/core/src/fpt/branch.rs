use super::{check_budget, require_unit_quotas, Best, Meter};
use crate::envyfree::{ef_feasible, Residual};
use crate::error::SolveError;
use crate::model::{is_feasible, Instance, Matching};
use crate::stats::InstanceStats;

/// Maximum envy-free matching for 0/1 quotas by branching on who fills each
/// deficient lower-quota hospital.
///
/// A node completes its fixed pairs to the best envy-free matching. If that
/// completion leaves a lower-quota hospital empty, the lowest such hospital
/// is branched on: each resident still allowed there (in the hospital's
/// order) is fixed to it in turn. Fixing a resident prunes the edges that
/// would let it be envied or make it envy.
pub fn maxefm_branch_sd(inst: &Instance, budget: u64) -> Result<Matching, SolveError> {
    let mut best = Best::default();
    best.offer(prepare(inst, budget)?);
    search(inst, budget, |m| {
        if is_feasible(inst, m) {
            best.offer(m.clone());
        }
    })?;
    Ok(best.into_inner().expect("seed offered"))
}

/// Every completion computed by [`maxefm_branch_sd`], in visiting order.
pub fn branch_sd_completions(inst: &Instance, budget: u64) -> Result<Vec<Matching>, SolveError> {
    prepare(inst, budget)?;
    let mut out = Vec::new();
    search(inst, budget, |m| out.push(m.clone()))?;
    Ok(out)
}

fn prepare(inst: &Instance, budget: u64) -> Result<Matching, SolveError> {
    require_unit_quotas(inst)?;
    let seed = ef_feasible(inst).ok_or(SolveError::NoFeasibleEnvyFree)?;
    let stats = InstanceStats::compute(inst);
    let needed = (0..stats.d).fold(1u128, |acc, _| acc.saturating_mul(stats.s as u128));
    check_budget(needed, budget)?;
    Ok(seed)
}

fn search(
    inst: &Instance,
    budget: u64,
    mut visit: impl FnMut(&Matching),
) -> Result<(), SolveError> {
    let open = vec![false; inst.num_hospitals()];
    let mut meter = Meter::new(budget);
    let mut fixed = Matching::empty(inst.num_residents());
    node(inst, &open, &mut fixed, &mut meter, &mut visit)
}

fn node(
    inst: &Instance,
    open: &[bool],
    fixed: &mut Matching,
    meter: &mut Meter,
    visit: &mut impl FnMut(&Matching),
) -> Result<(), SolveError> {
    meter.tick()?;
    let residual = Residual::new(inst, fixed, open);
    let Some(completion) = residual.complete() else {
        return Ok(());
    };
    visit(&completion);
    let occ = completion.occupancy(inst.num_hospitals());
    let Some(h) = inst
        .lower_quota_hospitals()
        .find(|&h| occ[h] < inst.lower_quota(h))
    else {
        return Ok(());
    };
    let candidates: Vec<_> = inst
        .hospital_prefs(h)
        .iter()
        .copied()
        .filter(|&r| residual.allows(r, h))
        .collect();
    for r in candidates {
        fixed.assign(r, h);
        node(inst, open, fixed, meter, visit)?;
        fixed.unassign(r);
    }
    Ok(())
}
