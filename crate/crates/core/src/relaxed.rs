//! Relaxed stable matchings: minimal feasible seeds and the leveled
//! proposal scheme.

use std::collections::VecDeque;

use crate::error::SolveError;
use crate::flow::FlowNetwork;
use crate::model::{check_matching, Instance, Matching, ResidentId};

/// A matching that fills every lower quota exactly and nothing else.
///
/// Source to residents, residents to hospitals along edges, hospitals to
/// sink with capacity q⁻(h); preferences play no part.
pub fn minimal_feasible_matching(inst: &Instance) -> Result<Matching, SolveError> {
    let n = inst.num_residents();
    let m = inst.num_hospitals();
    let (source, sink) = (n + m, n + m + 1);
    let mut net = FlowNetwork::new(n + m + 2);
    let mut edge_arcs = Vec::new();
    for r in 0..n {
        net.add_arc(source, r, 1);
        for &h in inst.resident_prefs(r) {
            if inst.is_lower_quota_hospital(h) {
                edge_arcs.push((r, h, net.add_arc(r, n + h, 1)));
            }
        }
    }
    for h in inst.lower_quota_hospitals() {
        net.add_arc(n + h, sink, inst.lower_quota(h));
    }
    if net.max_flow(source, sink) < inst.total_lower_quota() {
        return Err(SolveError::Infeasible);
    }
    let mut out = Matching::empty(n);
    for (r, h, arc) in edge_arcs {
        if net.flow(arc) > 0 {
            out.assign(r, h);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    /// Still holding the seat it was given by the minimal seed.
    Zero,
    One,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsmOutcome {
    pub matching: Matching,
    pub levels: Vec<Level>,
}

/// A feasible relaxed stable matching of at least 2/3 the maximum size.
///
/// Starts from a minimal feasible matching (the given seed or one from
/// [`minimal_feasible_matching`]); its residents are level 0, everyone else
/// is level 1 and proposes. A full hospital gives up a level-0 resident for
/// any proposer; the evicted resident turns level 1 and proposes again from
/// the top of its list. Among level-1 residents the hospital's list decides.
pub fn rsm_approx(inst: &Instance, seed: Option<&Matching>) -> Result<RsmOutcome, SolveError> {
    let m0 = match seed {
        Some(s) => {
            check_matching(inst, s)?;
            let occ = s.occupancy(inst.num_hospitals());
            if let Some(h) = (0..inst.num_hospitals()).find(|&h| occ[h] != inst.lower_quota(h)) {
                return Err(SolveError::NotMinimal {
                    hospital: h,
                    held: occ[h],
                    lower: inst.lower_quota(h),
                });
            }
            s.clone()
        }
        None => minimal_feasible_matching(inst)?,
    };
    let n = inst.num_residents();
    let mut matching = m0;
    let mut levels: Vec<Level> = (0..n)
        .map(|r| match matching.hospital_of(r) {
            Some(_) => Level::Zero,
            None => Level::One,
        })
        .collect();
    let mut held = matching.residents_by_hospital(inst.num_hospitals());
    let mut cursor = vec![0usize; n];
    let mut queue: VecDeque<ResidentId> = matching.unmatched().collect();
    while let Some(r) = queue.pop_front() {
        let list = inst.resident_prefs(r);
        while cursor[r] < list.len() {
            let h = list[cursor[r]];
            cursor[r] += 1;
            let seats = &mut held[h];
            if seats.len() < inst.upper_quota(h) {
                seats.push(r);
                matching.assign(r, h);
                break;
            }
            let worst_of = |level: Level, seats: &[ResidentId]| {
                seats
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| levels[x] == level)
                    .max_by_key(|&(_, &x)| inst.hospital_rank(h, x))
                    .map(|(i, &x)| (i, x))
            };
            let out = match worst_of(Level::Zero, seats) {
                Some(found) => Some(found),
                None => {
                    worst_of(Level::One, seats).filter(|&(_, x)| inst.hospital_prefers(h, r, x))
                }
            };
            if let Some((i, evicted)) = out {
                if levels[evicted] == Level::Zero {
                    levels[evicted] = Level::One;
                    cursor[evicted] = 0;
                }
                seats[i] = r;
                matching.unassign(evicted);
                matching.assign(r, h);
                queue.push_back(evicted);
                break;
            }
        }
    }
    Ok(RsmOutcome { matching, levels })
}
