//! Instance statistics and the parameters of the exact solvers.

use std::collections::BTreeSet;

use crate::flow::FlowNetwork;
use crate::model::{Instance, ResidentId};
use crate::stable::stable_is_feasible;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceStats {
    pub residents: usize,
    pub hospitals: usize,
    pub total_lower_quota: usize,
    pub stable_size: usize,
    pub stable_deficiency: usize,
    /// Longest resident list.
    pub l1: usize,
    /// Longest hospital list.
    pub l2: usize,
    /// Hospitals with a positive lower quota.
    pub q: usize,
    /// Longest list among lower-quota hospitals.
    pub l_lq: usize,
    /// Residents acceptable to a hospital left deficient by the stable matching.
    pub s: usize,
    /// Hospitals left deficient by the stable matching.
    pub d: usize,
    /// Residents acceptable to some lower-quota hospital.
    pub r_prime: usize,
    /// Worst (1-based) position of a lower-quota hospital on any resident list.
    pub p: usize,
    /// Most non-lower-quota hospitals shared by two residents.
    pub t: usize,
    pub max_matching: usize,
}

impl InstanceStats {
    pub fn compute(inst: &Instance) -> Self {
        let stable = stable_is_feasible(inst);
        let occ = stable.matching.occupancy(inst.num_hospitals());
        let deficient: Vec<usize> = inst
            .lower_quota_hospitals()
            .filter(|&h| occ[h] < inst.lower_quota(h))
            .collect();
        let s = deficient
            .iter()
            .flat_map(|&h| inst.hospital_prefs(h).iter().copied())
            .collect::<BTreeSet<_>>()
            .len();
        Self {
            residents: inst.num_residents(),
            hospitals: inst.num_hospitals(),
            total_lower_quota: inst.total_lower_quota(),
            stable_size: stable.matching.size(),
            stable_deficiency: stable.deficiency,
            l1: inst.max_resident_list(),
            l2: inst.max_hospital_list(),
            q: inst.lower_quota_hospitals().count(),
            l_lq: inst
                .lower_quota_hospitals()
                .map(|h| inst.hospital_prefs(h).len())
                .max()
                .unwrap_or(0),
            s,
            d: deficient.len(),
            r_prime: r_prime(inst).len(),
            p: max_lower_quota_rank(inst),
            t: max_shared_plain_hospitals(inst),
            max_matching: max_matching_size(inst),
        }
    }
}

/// Residents acceptable to at least one lower-quota hospital, ascending.
pub fn r_prime(inst: &Instance) -> Vec<ResidentId> {
    (0..inst.num_residents())
        .filter(|&r| {
            inst.resident_prefs(r)
                .iter()
                .any(|&h| inst.is_lower_quota_hospital(h))
        })
        .collect()
}

/// 1-based position of the last lower-quota hospital on `r`'s list, or 0.
pub fn lower_quota_rank(inst: &Instance, r: ResidentId) -> usize {
    inst.resident_prefs(r)
        .iter()
        .rposition(|&h| inst.is_lower_quota_hospital(h))
        .map_or(0, |i| i + 1)
}

pub fn max_lower_quota_rank(inst: &Instance) -> usize {
    (0..inst.num_residents())
        .map(|r| lower_quota_rank(inst, r))
        .max()
        .unwrap_or(0)
}

pub fn max_shared_plain_hospitals(inst: &Instance) -> usize {
    let n = inst.num_residents();
    let mut best = 0;
    for a in 0..n {
        for b in a + 1..n {
            let shared = inst
                .resident_prefs(a)
                .iter()
                .filter(|&&h| {
                    !inst.is_lower_quota_hospital(h) && inst.resident_rank(b, h).is_some()
                })
                .count();
            best = best.max(shared);
        }
    }
    best
}

/// Size of a maximum matching under the upper quotas, preferences ignored.
pub fn max_matching_size(inst: &Instance) -> usize {
    let n = inst.num_residents();
    let m = inst.num_hospitals();
    let (source, sink) = (n + m, n + m + 1);
    let mut net = FlowNetwork::new(n + m + 2);
    for r in 0..n {
        net.add_arc(source, r, 1);
        for &h in inst.resident_prefs(r) {
            net.add_arc(r, n + h, 1);
        }
    }
    for h in 0..m {
        net.add_arc(n + h, sink, inst.upper_quota(h));
    }
    net.max_flow(source, sink)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;

    #[test]
    fn pair2_stats() {
        let s = InstanceStats::compute(&pair2());
        assert_eq!((s.residents, s.hospitals, s.total_lower_quota), (2, 2, 1));
        assert_eq!((s.stable_size, s.stable_deficiency), (1, 1));
        assert_eq!((s.l1, s.l2, s.q, s.l_lq), (2, 2, 1, 1));
        assert_eq!((s.s, s.d, s.r_prime, s.p, s.t), (1, 1, 1, 2, 1));
        assert_eq!(s.max_matching, 2);
    }

    #[test]
    fn ladder_max_matching_counts_capacity() {
        assert_eq!(max_matching_size(&ladder(5)), 5);
    }
}
