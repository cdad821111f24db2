//! Envy-free matchings: feasibility, the CL-restricted exact algorithm,
//! maximum extensions and augmenting paths.

use std::collections::VecDeque;

use crate::error::SolveError;
use crate::model::{
    check_matching, first_envy, is_feasible, HospitalId, Instance, Matching, ResidentId,
};
use crate::stable::{deferred_acceptance, Seats};

/// A minimum feasible envy-free matching, if one exists.
///
/// Runs deferred acceptance with every capacity cut to the lower quota; the
/// instance admits a feasible envy-free matching exactly when that run fills
/// every lower quota.
pub fn ef_feasible(inst: &Instance) -> Option<Matching> {
    let m = deferred_acceptance(
        inst,
        inst.lower_quotas(),
        |_, _| true,
        0..inst.num_residents(),
    );
    is_feasible(inst, &m).then_some(m)
}

/// Output of [`maxefm_cl_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClRun {
    pub matching: Matching,
    pub proposals: usize,
}

/// Maximum-size envy-free matching of a CL-restricted instance.
pub fn maxefm_cl(inst: &Instance) -> Result<Matching, SolveError> {
    maxefm_cl_traced(inst).map(|run| run.matching)
}

/// [`maxefm_cl`] that also reports how many proposals were made.
///
/// Deferred acceptance that tracks the remaining deficiency `d` and the
/// number of unmatched residents `k`. Once `k == d` an under-subscribed
/// hospital that already meets its lower quota stops taking extra residents,
/// so every remaining free resident is kept for the deficient hospitals.
pub fn maxefm_cl_traced(inst: &Instance) -> Result<ClRun, SolveError> {
    if let Some(hospital) = inst.cl_violation() {
        return Err(SolveError::NotClRestricted { hospital });
    }
    if inst.total_lower_quota() > inst.num_residents() {
        return Err(SolveError::Infeasible);
    }
    let n = inst.num_residents();
    let mut d = inst.total_lower_quota();
    let mut k = n;
    let mut seats = vec![Seats::default(); inst.num_hospitals()];
    let mut cursor = vec![0usize; n];
    let mut queue: VecDeque<ResidentId> = (0..n).collect();
    let mut matching = Matching::empty(n);
    let mut proposals = 0;
    while let Some(r) = queue.pop_front() {
        let list = inst.resident_prefs(r);
        while cursor[r] < list.len() {
            let h = list[cursor[r]];
            cursor[r] += 1;
            proposals += 1;
            let rank = inst.hospital_rank(h, r).expect("valid instance");
            let held = seats[h].len();
            if held < inst.lower_quota(h) {
                seats[h].push(rank, r);
                matching.assign(r, h);
                d -= 1;
                k -= 1;
                break;
            }
            let must_compete = held == inst.upper_quota(h) || k == d;
            if !must_compete {
                seats[h].push(rank, r);
                matching.assign(r, h);
                k -= 1;
                break;
            }
            match seats[h].worst() {
                Some((worst_rank, worst)) if rank < worst_rank => {
                    seats[h].pop_worst();
                    matching.unassign(worst);
                    queue.push_back(worst);
                    seats[h].push(rank, r);
                    matching.assign(r, h);
                    break;
                }
                _ => {}
            }
        }
    }
    Ok(ClRun {
        matching,
        proposals,
    })
}

/// Threshold resident of a hospital under some matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    Resident(ResidentId),
    /// Nobody on the list prefers the hospital to their assignment.
    Dummy,
}

/// For each hospital h, the most preferred resident of h's list that
/// prefers h to its current assignment.
pub fn threshold_residents(inst: &Instance, m: &Matching) -> Vec<Threshold> {
    (0..inst.num_hospitals())
        .map(|h| {
            inst.hospital_prefs(h)
                .iter()
                .copied()
                .find(|&r| inst.resident_prefers(r, h, m.hospital_of(r)))
                .map_or(Threshold::Dummy, Threshold::Resident)
        })
        .collect()
}

/// Free part of an instance once some residents are fixed to hospitals.
///
/// Edges are pruned so that no fixed resident can envy a newcomer, and a
/// free resident who would envy a fixed one is forced to be matched at least
/// as well as the hospital it would envy. Closed hospitals take no newcomers.
pub(crate) struct Residual<'a> {
    inst: &'a Instance,
    fixed: &'a Matching,
    closed: &'a [bool],
    // Newcomers at h must rank strictly above this position on h's list.
    bound: Vec<usize>,
    // Worst position a constrained free resident may accept on its own list.
    cutoff: Vec<Option<usize>>,
    capacity: Vec<usize>,
}

impl<'a> Residual<'a> {
    pub(crate) fn new(inst: &'a Instance, fixed: &'a Matching, closed: &'a [bool]) -> Self {
        let mut bound = vec![usize::MAX; inst.num_hospitals()];
        let mut cutoff = vec![None; inst.num_residents()];
        let mut capacity = inst.upper_quotas().to_vec();
        for (r, h) in fixed.pairs() {
            capacity[h] -= 1;
            for &better in inst.resident_prefs(r) {
                if better == h {
                    break;
                }
                let rank = inst.hospital_rank(better, r).expect("valid instance");
                bound[better] = bound[better].min(rank);
            }
        }
        for x in fixed.unmatched() {
            for (pos, &h) in inst.resident_prefs(x).iter().enumerate() {
                let envies = inst
                    .hospital_prefs(h)
                    .iter()
                    .any(|&r| fixed.contains(r, h) && inst.hospital_prefers(h, x, r));
                if envies {
                    cutoff[x] = Some(pos);
                    break;
                }
            }
        }
        for (h, cap) in capacity.iter_mut().enumerate() {
            if closed[h] {
                *cap = 0;
            }
        }
        Self {
            inst,
            fixed,
            closed,
            bound,
            cutoff,
            capacity,
        }
    }

    /// Can free resident `x` take a seat at `h`?
    pub(crate) fn allows(&self, x: ResidentId, h: HospitalId) -> bool {
        if self.fixed.hospital_of(x).is_some() || self.closed[h] || self.capacity[h] == 0 {
            return false;
        }
        let (Some(hr), Some(rr)) = (self.inst.hospital_rank(h, x), self.inst.resident_rank(x, h))
        else {
            return false;
        };
        hr < self.bound[h] && self.cutoff[x].is_none_or(|c| rr <= c)
    }

    /// Fixed residents plus a stable matching of the free part, or `None`
    /// when some forced resident is left unmatched, in which case no
    /// envy-free matching contains the fixed pairs.
    pub(crate) fn complete(&self) -> Option<Matching> {
        let free = self.fixed.unmatched();
        let extra = deferred_acceptance(self.inst, &self.capacity, |x, h| self.allows(x, h), free);
        let forced_ok = (0..self.inst.num_residents())
            .all(|x| self.cutoff[x].is_none() || extra.hospital_of(x).is_some());
        if !forced_ok {
            return None;
        }
        let mut out = self.fixed.clone();
        for (x, h) in extra.pairs() {
            out.assign(x, h);
        }
        Some(out)
    }
}

/// Largest envy-free matching that contains `m`.
///
/// Free residents are restricted to under-subscribed hospitals and to
/// positions strictly above every matched resident who would prefer that
/// hospital; a stable matching of what remains is added to `m`.
pub fn extend_to_max_ef(inst: &Instance, m: &Matching) -> Result<Matching, SolveError> {
    check_matching(inst, m)?;
    if !is_feasible(inst, m) {
        return Err(SolveError::NotFeasible);
    }
    if first_envy(inst, m).is_some() {
        return Err(SolveError::NotEnvyFree);
    }
    let open = vec![false; inst.num_hospitals()];
    Ok(Residual::new(inst, m, &open)
        .complete()
        .expect("an envy-free matching forces nobody"))
}

/// Grows a feasible envy-free matching along envy-free augmenting paths until
/// none is left.
///
/// In each round the only non-matching edge kept at a hospital h is the one
/// to its threshold resident. Paths are searched breadth-first from the
/// unmatched residents in index order.
pub fn maximal_ef_augment(inst: &Instance, m0: &Matching) -> Result<Matching, SolveError> {
    check_matching(inst, m0)?;
    if !is_feasible(inst, m0) {
        return Err(SolveError::NotFeasible);
    }
    if first_envy(inst, m0).is_some() {
        return Err(SolveError::NotEnvyFree);
    }
    let mut m = m0.clone();
    while let Some(path) = find_augmenting_path(inst, &m) {
        for (r, h) in path {
            m.assign(r, h);
        }
    }
    Ok(m)
}

/// [`maximal_ef_augment`] started from [`ef_feasible`].
pub fn maximal_ef(inst: &Instance) -> Result<Matching, SolveError> {
    let m0 = ef_feasible(inst).ok_or(SolveError::NoFeasibleEnvyFree)?;
    maximal_ef_augment(inst, &m0)
}

// Returns the new (resident, hospital) pairs along the first path found.
fn find_augmenting_path(inst: &Instance, m: &Matching) -> Option<Vec<(ResidentId, HospitalId)>> {
    let thresholds = threshold_residents(inst, m);
    let mut entry: Vec<Vec<HospitalId>> = vec![Vec::new(); inst.num_residents()];
    for (h, t) in thresholds.iter().enumerate() {
        if let Threshold::Resident(r) = *t {
            entry[r].push(h);
        }
    }
    let by_hospital = m.residents_by_hospital(inst.num_hospitals());
    let occupancy = m.occupancy(inst.num_hospitals());
    for start in m.unmatched() {
        if entry[start].is_empty() {
            continue;
        }
        // parent[r] = (previous resident, hospital r leaves) on the path.
        let mut parent: Vec<Option<(ResidentId, HospitalId)>> = vec![None; inst.num_residents()];
        let mut seen_resident = vec![false; inst.num_residents()];
        let mut seen_hospital = vec![false; inst.num_hospitals()];
        let mut queue = VecDeque::from([start]);
        seen_resident[start] = true;
        while let Some(r) = queue.pop_front() {
            for &h in &entry[r] {
                if seen_hospital[h] {
                    continue;
                }
                seen_hospital[h] = true;
                if occupancy[h] < inst.upper_quota(h) {
                    let mut path = vec![(r, h)];
                    let mut cur = r;
                    while let Some((prev, left)) = parent[cur] {
                        path.push((prev, left));
                        cur = prev;
                    }
                    return Some(path);
                }
                for &next in &by_hospital[h] {
                    if !seen_resident[next] {
                        seen_resident[next] = true;
                        parent[next] = Some((r, h));
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::{is_envy_free, Instance};
    use crate::stable::stable_matching;

    #[test]
    fn ef_feasible_examples() {
        assert_eq!(ef_feasible(&pair2()), Some(m(2, &[(0, 1)])));
        assert_eq!(ef_feasible(&both_lower()), None);
        let no_lower = Instance::new(vec![vec![0]], vec![vec![0]], vec![0], vec![1]).unwrap();
        assert_eq!(ef_feasible(&no_lower), Some(Matching::empty(1)));
    }

    fn cl_2x2() -> Instance {
        Instance::new(
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1], vec![0, 1]],
            vec![0, 1],
            vec![1, 1],
        )
        .unwrap()
    }

    #[test]
    fn maxefm_cl_small() {
        assert_eq!(maxefm_cl(&cl_2x2()).unwrap(), m(2, &[(0, 0), (1, 1)]));
    }

    #[test]
    fn maxefm_cl_rejects_non_cl() {
        assert_eq!(
            maxefm_cl(&pair2()),
            Err(SolveError::NotClRestricted { hospital: 1 })
        );
    }

    #[test]
    fn maxefm_cl_perfect_when_lower_quotas_cover_everyone() {
        // Three residents, two CL hospitals with Σq⁻ = 3.
        let all: Vec<usize> = (0..3).collect();
        let inst = Instance::new(
            vec![vec![0, 1], vec![0, 1], vec![1, 0]],
            vec![all.clone(), all],
            vec![1, 2],
            vec![2, 2],
        )
        .unwrap();
        let out = maxefm_cl(&inst).unwrap();
        assert_eq!(out.size(), 3);
        assert!(is_feasible(&inst, &out));
        assert!(is_envy_free(&inst, &out).unwrap());
    }

    #[test]
    fn maxefm_cl_reports_proposals() {
        let run = maxefm_cl_traced(&cl_2x2()).unwrap();
        assert!(run.proposals <= cl_2x2().num_edges());
    }

    #[test]
    fn thresholds_pair2() {
        let t = threshold_residents(&pair2(), &m(2, &[(0, 1)]));
        assert_eq!(t, vec![Threshold::Resident(0), Threshold::Dummy]);
        let t = threshold_residents(&pair2(), &m(2, &[(0, 0)]));
        assert_eq!(t, vec![Threshold::Resident(1), Threshold::Dummy]);
    }

    #[test]
    fn thresholds_chain3() {
        // r3 is unmatched and wants h2, r1 prefers h1 to h3.
        let t = threshold_residents(&chain3(), &m(3, &[(0, 2), (1, 1)]));
        assert_eq!(
            t,
            vec![
                Threshold::Resident(0),
                Threshold::Resident(2),
                Threshold::Dummy
            ]
        );
    }

    #[test]
    fn extend_pair2_stays_put() {
        let m1 = m(2, &[(0, 1)]);
        assert_eq!(extend_to_max_ef(&pair2(), &m1).unwrap(), m1);
    }

    #[test]
    fn extend_ladder() {
        let inst = ladder(4);
        // From r1 at h2 nobody may join h1 without r1 envying them.
        let start = m(4, &[(0, 1)]);
        assert_eq!(ef_feasible(&inst), Some(start.clone()));
        assert_eq!(extend_to_max_ef(&inst, &start).unwrap(), start);
        let full = m(4, &[(0, 0), (1, 0), (2, 0), (3, 1)]);
        assert_eq!(extend_to_max_ef(&inst, &full).unwrap(), full);
        // {(r4, h2)} alone is not envy-free: r1 wants h2 and beats r4 there.
        assert_eq!(
            extend_to_max_ef(&inst, &m(4, &[(3, 1)])),
            Err(SolveError::NotEnvyFree)
        );
    }

    #[test]
    fn extend_chain3_adds_a_resident() {
        let inst = chain3();
        let start = ef_feasible(&inst).unwrap();
        assert_eq!(start, m(3, &[(0, 2)]));
        assert_eq!(
            extend_to_max_ef(&inst, &start).unwrap(),
            m(3, &[(0, 2), (1, 1)])
        );
    }

    #[test]
    fn extend_rejects_envy() {
        let inst = both_lower();
        assert_eq!(
            extend_to_max_ef(&inst, &m(2, &[(0, 1), (1, 0)])),
            Err(SolveError::NotEnvyFree)
        );
        assert_eq!(
            extend_to_max_ef(&pair2(), &Matching::empty(2)),
            Err(SolveError::NotFeasible)
        );
    }

    #[test]
    fn augment_stops_on_cex_a() {
        let inst = cex_a();
        let start = m(3, &[(0, 0), (1, 3)]);
        assert!(is_envy_free(&inst, &start).unwrap());
        assert_eq!(maximal_ef_augment(&inst, &start).unwrap(), start);
        let bigger = m(3, &[(0, 3), (1, 1), (2, 2)]);
        assert!(is_envy_free(&inst, &bigger).unwrap());
        assert!(is_feasible(&inst, &bigger));
    }

    #[test]
    fn augment_keeps_perfect_matchings() {
        let inst = chain3();
        let perfect = m(3, &[(0, 0), (1, 2), (2, 1)]);
        if is_envy_free(&inst, &perfect).unwrap() {
            assert_eq!(maximal_ef_augment(&inst, &perfect).unwrap(), perfect);
        }
        let inst = cl_2x2();
        let p = m(2, &[(0, 0), (1, 1)]);
        assert_eq!(maximal_ef_augment(&inst, &p).unwrap(), p);
    }

    #[test]
    fn maximal_ef_is_envy_free_and_feasible() {
        for inst in [pair2(), ladder(3), chain3(), tight(), cex_a()] {
            let out = maximal_ef(&inst).unwrap();
            assert!(is_envy_free(&inst, &out).unwrap());
            assert!(is_feasible(&inst, &out));
            assert!(out.size() <= stable_matching(&inst).size());
        }
    }
}
