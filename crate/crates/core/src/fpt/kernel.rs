use std::collections::BTreeSet;

use super::require_unit_quotas;
use crate::error::SolveError;
use crate::model::{HospitalId, Instance, ResidentId};
use crate::stable::stable_is_feasible;
use crate::stats::{
    lower_quota_rank, max_lower_quota_rank, max_matching_size, max_shared_plain_hospitals,
};

/// Answer of [`kernelize`] for "is there a feasible envy-free matching of
/// size at least k?".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelOutcome {
    /// The stable matching is feasible and large enough.
    Yes,
    /// Even the stable matching is smaller than k.
    No,
    Kernel(KernelResult),
}

/// The reduced instance and how it was obtained. Ids in the bookkeeping
/// fields refer to the original instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelResult {
    pub instance: Instance,
    /// Original id of each kernel resident.
    pub resident_map: Vec<ResidentId>,
    /// Original id of each kernel hospital.
    pub hospital_map: Vec<HospitalId>,
    /// Residents matched by the stable matching.
    pub x_residents: Vec<ResidentId>,
    /// Hospitals matched by the stable matching.
    pub x_hospitals: Vec<HospitalId>,
    pub marked: BTreeSet<(ResidentId, HospitalId)>,
    /// Size of a maximum matching.
    pub l: usize,
    pub p: usize,
    pub t: usize,
    /// Kept edges with both ends in X.
    pub edges_xx: usize,
    /// Kept edges with exactly one end in X.
    pub edges_xi: usize,
}

impl KernelResult {
    /// The edge count guaranteed for E(X, I).
    pub fn edge_bound_xi(&self) -> usize {
        let (l, p, t) = (self.l, self.p, self.t);
        self.x_residents.len() * (p + t * l + 1).saturating_sub(t)
            + self.x_hospitals.len() * (l + 1)
    }
}

/// Reduces a 0/1-quota instance to a kernel for target size `k`.
///
/// X is the vertex set of the stable matching and I the rest, which is
/// independent. Marked: every edge inside X; for a hospital in X its best
/// l + 1 edges into I; for a resident in X every edge up to its last
/// lower-quota hospital, every edge to a plain hospital that another
/// resident of X also lists, and its best edge left unmarked. Unmarked edges
/// and isolated agents are dropped.
pub fn kernelize(inst: &Instance, k: usize) -> Result<KernelOutcome, SolveError> {
    require_unit_quotas(inst)?;
    let stable = stable_is_feasible(inst);
    if stable.matching.size() < k {
        return Ok(KernelOutcome::No);
    }
    if stable.feasible {
        return Ok(KernelOutcome::Yes);
    }
    let ms = &stable.matching;
    let n = inst.num_residents();
    let m = inst.num_hospitals();
    let l = max_matching_size(inst);
    let mut in_x_r = vec![false; n];
    let mut in_x_h = vec![false; m];
    for (r, h) in ms.pairs() {
        in_x_r[r] = true;
        in_x_h[h] = true;
    }
    let mut marked = BTreeSet::new();
    for r in 0..n {
        for &h in inst.resident_prefs(r) {
            if in_x_r[r] && in_x_h[h] {
                marked.insert((r, h));
            }
        }
    }
    for h in (0..m).filter(|&h| in_x_h[h]) {
        let outside = inst.hospital_prefs(h).iter().filter(|&&r| !in_x_r[r]);
        for &r in outside.take(l + 1) {
            marked.insert((r, h));
        }
    }
    for r in (0..n).filter(|&r| in_x_r[r]) {
        let list = inst.resident_prefs(r);
        let p_r = lower_quota_rank(inst, r);
        for &h in &list[..p_r] {
            marked.insert((r, h));
        }
        for &h in list {
            let shared = !inst.is_lower_quota_hospital(h)
                && (0..n).any(|o| o != r && in_x_r[o] && inst.resident_rank(o, h).is_some());
            if shared {
                marked.insert((r, h));
            }
        }
        if let Some(&h) = list.iter().find(|&&h| !marked.contains(&(r, h))) {
            marked.insert((r, h));
        }
    }
    let keep_r: Vec<ResidentId> = (0..n)
        .filter(|&r| {
            inst.resident_prefs(r)
                .iter()
                .any(|&h| marked.contains(&(r, h)))
        })
        .collect();
    let keep_h: Vec<HospitalId> = (0..m)
        .filter(|&h| {
            inst.hospital_prefs(h)
                .iter()
                .any(|&r| marked.contains(&(r, h)))
        })
        .collect();
    let mut r_new = vec![usize::MAX; n];
    for (i, &r) in keep_r.iter().enumerate() {
        r_new[r] = i;
    }
    let mut h_new = vec![usize::MAX; m];
    for (i, &h) in keep_h.iter().enumerate() {
        h_new[h] = i;
    }
    let rp = keep_r
        .iter()
        .map(|&r| {
            inst.resident_prefs(r)
                .iter()
                .filter(|&&h| marked.contains(&(r, h)))
                .map(|&h| h_new[h])
                .collect()
        })
        .collect();
    let hp = keep_h
        .iter()
        .map(|&h| {
            inst.hospital_prefs(h)
                .iter()
                .filter(|&&r| marked.contains(&(r, h)))
                .map(|&r| r_new[r])
                .collect()
        })
        .collect();
    let lower = keep_h.iter().map(|&h| inst.lower_quota(h)).collect();
    let upper = keep_h.iter().map(|&h| inst.upper_quota(h)).collect();
    let instance = Instance::new(rp, hp, lower, upper)
        .expect("lower-quota hospitals keep every edge, so the kernel stays valid");
    let edges_xx = marked
        .iter()
        .filter(|&&(r, h)| in_x_r[r] && in_x_h[h])
        .count();
    let edges_xi = marked
        .iter()
        .filter(|&&(r, h)| in_x_r[r] != in_x_h[h])
        .count();
    Ok(KernelOutcome::Kernel(KernelResult {
        instance,
        resident_map: keep_r,
        hospital_map: keep_h,
        x_residents: (0..n).filter(|&r| in_x_r[r]).collect(),
        x_hospitals: (0..m).filter(|&h| in_x_h[h]).collect(),
        marked,
        l,
        p: max_lower_quota_rank(inst),
        t: max_shared_plain_hospitals(inst),
        edges_xx,
        edges_xi,
    }))
}
