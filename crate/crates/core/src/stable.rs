//! Resident-proposing deferred acceptance.

use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use crate::model::{deficiency, HospitalId, Instance, Matching, ResidentId};
use crate::rng::Rng;

/// Hospital seats: a max-heap on rank so the worst assignee is on top.
#[derive(Debug, Clone, Default)]
pub(crate) struct Seats {
    heap: BinaryHeap<(usize, ResidentId)>,
}

impl Seats {
    pub(crate) fn len(&self) -> usize {
        self.heap.len()
    }

    pub(crate) fn worst(&self) -> Option<(usize, ResidentId)> {
        self.heap.peek().copied()
    }

    pub(crate) fn push(&mut self, rank: usize, r: ResidentId) {
        self.heap.push((rank, r));
    }

    pub(crate) fn pop_worst(&mut self) -> Option<(usize, ResidentId)> {
        self.heap.pop()
    }
}

/// Deferred acceptance restricted to `allowed` edges with per-hospital
/// `capacity`. Only residents in `order` propose, in that order; rejected
/// residents rejoin at the tail of the queue.
pub(crate) fn deferred_acceptance<F>(
    inst: &Instance,
    capacity: &[usize],
    allowed: F,
    order: impl IntoIterator<Item = ResidentId>,
) -> Matching
where
    F: Fn(ResidentId, HospitalId) -> bool,
{
    let mut seats = vec![Seats::default(); inst.num_hospitals()];
    let mut cursor = vec![0usize; inst.num_residents()];
    let mut queue: VecDeque<ResidentId> = order.into_iter().collect();
    let mut matching = Matching::empty(inst.num_residents());
    while let Some(r) = queue.pop_front() {
        let list = inst.resident_prefs(r);
        while cursor[r] < list.len() {
            let h = list[cursor[r]];
            cursor[r] += 1;
            if capacity[h] == 0 || !allowed(r, h) {
                continue;
            }
            let rank = inst.hospital_rank(h, r).expect("valid instance");
            if seats[h].len() < capacity[h] {
                seats[h].push(rank, r);
                matching.assign(r, h);
                break;
            }
            let (worst_rank, worst) = seats[h].worst().expect("full hospital");
            if rank < worst_rank {
                seats[h].pop_worst();
                matching.unassign(worst);
                queue.push_back(worst);
                seats[h].push(rank, r);
                matching.assign(r, h);
                break;
            }
        }
    }
    matching
}

/// The resident-optimal stable matching, ignoring lower quotas.
///
/// Residents enter the queue by index and propose down their lists.
pub fn stable_matching(inst: &Instance) -> Matching {
    deferred_acceptance(
        inst,
        inst.upper_quotas(),
        |_, _| true,
        0..inst.num_residents(),
    )
}

/// Deferred acceptance where each step lets a uniformly drawn free resident
/// make a single proposal.
pub fn stable_matching_randomized(inst: &Instance, rng: &mut Rng) -> Matching {
    let mut seats = vec![Seats::default(); inst.num_hospitals()];
    let mut cursor = vec![0usize; inst.num_residents()];
    let mut active: Vec<ResidentId> = (0..inst.num_residents())
        .filter(|&r| !inst.resident_prefs(r).is_empty())
        .collect();
    let mut matching = Matching::empty(inst.num_residents());
    while !active.is_empty() {
        let i = rng.below(active.len());
        let r = active[i];
        let h = inst.resident_prefs(r)[cursor[r]];
        cursor[r] += 1;
        let rank = inst.hospital_rank(h, r).expect("valid instance");
        let accepted = if seats[h].len() < inst.upper_quota(h) {
            Some(None)
        } else {
            let (worst_rank, worst) = seats[h].worst().expect("full hospital");
            (rank < worst_rank).then(|| {
                seats[h].pop_worst();
                Some(worst)
            })
        };
        match accepted {
            Some(displaced) => {
                seats[h].push(rank, r);
                matching.assign(r, h);
                active.swap_remove(i);
                if let Some(x) = displaced {
                    matching.unassign(x);
                    if cursor[x] < inst.resident_prefs(x).len() {
                        active.push(x);
                    }
                }
            }
            None => {
                if cursor[r] == inst.resident_prefs(r).len() {
                    active.swap_remove(i);
                }
            }
        }
    }
    matching
}

/// The stable matching with its lower-quota verdict. By the Rural Hospitals
/// Theorem the verdict holds for every stable matching of the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableFeasibility {
    pub matching: Matching,
    pub feasible: bool,
    pub deficiency: usize,
}

pub fn stable_is_feasible(inst: &Instance) -> StableFeasibility {
    let matching = stable_matching(inst);
    let deficiency = deficiency(inst, &matching);
    StableFeasibility {
        matching,
        feasible: deficiency == 0,
        deficiency,
    }
}

/// Per-hospital counts and matched residents, shared by all stable matchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuralProfile {
    pub counts: Vec<usize>,
    pub matched: BTreeSet<ResidentId>,
}

impl RuralProfile {
    pub fn of(inst: &Instance, m: &Matching) -> Self {
        Self {
            counts: m.occupancy(inst.num_hospitals()),
            matched: m.pairs().map(|(r, _)| r).collect(),
        }
    }
}

pub fn rural_hospitals_profile(inst: &Instance) -> RuralProfile {
    RuralProfile::of(inst, &stable_matching(inst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::{blocking_pairs, Instance};

    #[test]
    fn pair2_stable() {
        assert_eq!(stable_matching(&pair2()), m(2, &[(0, 0)]));
    }

    #[test]
    fn chain3_stable() {
        assert_eq!(stable_matching(&chain3()), m(3, &[(0, 0), (1, 1)]));
    }

    #[test]
    fn single_edge() {
        let inst = Instance::new(vec![vec![0]], vec![vec![0]], vec![0], vec![1]).unwrap();
        assert_eq!(stable_matching(&inst), m(1, &[(0, 0)]));
    }

    #[test]
    fn pair2_feasibility() {
        let out = stable_is_feasible(&pair2());
        assert!(!out.feasible);
        assert_eq!(out.deficiency, 1);
        let relaxed = Instance::new(
            vec![vec![0, 1], vec![0]],
            vec![vec![0, 1], vec![0]],
            vec![0, 0],
            vec![1, 1],
        )
        .unwrap();
        assert!(stable_is_feasible(&relaxed).feasible);
    }

    #[test]
    fn profiles() {
        let p = rural_hospitals_profile(&pair2());
        assert_eq!(p.counts, vec![1, 0]);
        assert_eq!(p.matched, BTreeSet::from([0]));
        // Everyone lands at h1 and h2 stays empty: nobody prefers h2.
        let p = rural_hospitals_profile(&ladder(4));
        assert_eq!(p.counts, vec![4, 0]);
        assert_eq!(p.matched, BTreeSet::from([0, 1, 2, 3]));
        let disjoint = Instance::new(
            vec![vec![0], vec![1], vec![2]],
            vec![vec![0], vec![1], vec![2]],
            vec![0, 0, 0],
            vec![1, 1, 1],
        )
        .unwrap();
        assert_eq!(rural_hospitals_profile(&disjoint).counts, vec![1, 1, 1]);
    }

    #[test]
    fn randomized_runs_are_stable() {
        let inst = chain3();
        for seed in 0..20 {
            let mut rng = Rng::new(seed);
            let mm = stable_matching_randomized(&inst, &mut rng);
            assert!(blocking_pairs(&inst, &mm).unwrap().is_empty());
            assert_eq!(RuralProfile::of(&inst, &mm), rural_hospitals_profile(&inst));
        }
    }
}
