//! Exhaustive ground truth for small instances.
//!
//! The search assigns residents in index order to nothing or to a listed
//! hospital with a free seat. A branch is cut only when every completion is
//! certain to fail: an envy pair or a blocking pair between residents that
//! are already placed, a lower quota the undecided residents can no longer
//! fill, or too few residents left to reach the target size. Every
//! accepted leaf is re-checked with the model checkers.

use crate::error::SolveError;
use crate::graph::Graph;
use crate::model::{
    is_envy_free, is_feasible, is_relaxed_stable, HospitalId, Instance, Matching, ResidentId,
};

pub const DEFAULT_BOUND: usize = 9;

/// An optimum value with the lexicographically smallest optimal assignment
/// (unmatched sorts before any hospital).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub size: usize,
    pub witness: Matching,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Property {
    EnvyFree,
    RelaxedStable,
}

/// Exhaustive solver with a cap on the number of residents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub max_residents: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            max_residents: DEFAULT_BOUND,
        }
    }
}

impl Oracle {
    pub fn new(max_residents: usize) -> Self {
        Self { max_residents }
    }

    fn guard(&self, inst: &Instance) -> Result<(), SolveError> {
        if inst.num_residents() > self.max_residents {
            return Err(SolveError::OracleTooLarge {
                residents: inst.num_residents(),
                bound: self.max_residents,
            });
        }
        Ok(())
    }

    /// Largest feasible envy-free matching, `None` when there is none.
    pub fn maxefm(&self, inst: &Instance) -> Result<Option<Optimum>, SolveError> {
        self.guard(inst)?;
        Ok(optimum(inst, Property::EnvyFree))
    }

    /// Fewest unmatched residents over feasible envy-free matchings.
    pub fn min_ur_efm(&self, inst: &Instance) -> Result<Option<(usize, Matching)>, SolveError> {
        Ok(self
            .maxefm(inst)?
            .map(|o| (inst.num_residents() - o.size, o.witness)))
    }

    /// Largest feasible relaxed stable matching, `None` when the instance has
    /// no feasible matching at all.
    pub fn maxrsm(&self, inst: &Instance) -> Result<Option<Optimum>, SolveError> {
        self.guard(inst)?;
        Ok(optimum(inst, Property::RelaxedStable))
    }

    /// Does a feasible envy-free matching of size at least `target` exist?
    pub fn has_efm_of_size(&self, inst: &Instance, target: usize) -> Result<bool, SolveError> {
        self.guard(inst)?;
        let mut search = Search::new(inst, Property::EnvyFree);
        Ok(search.first_at_least(target).is_some())
    }
}

pub fn brute_maxefm(inst: &Instance) -> Result<Option<Optimum>, SolveError> {
    Oracle::default().maxefm(inst)
}

pub fn brute_min_ur_efm(inst: &Instance) -> Result<Option<(usize, Matching)>, SolveError> {
    Oracle::default().min_ur_efm(inst)
}

pub fn brute_maxrsm(inst: &Instance) -> Result<Option<Optimum>, SolveError> {
    Oracle::default().maxrsm(inst)
}

fn optimum(inst: &Instance, property: Property) -> Option<Optimum> {
    let mut search = Search::new(inst, property);
    let best = search.max_size()?;
    let witness = search
        .first_at_least(best)
        .expect("an optimum of this size was just found");
    Some(Optimum {
        size: best,
        witness,
    })
}

struct Search<'a> {
    inst: &'a Instance,
    property: Property,
    assignment: Vec<Option<HospitalId>>,
    held: Vec<Vec<ResidentId>>,
    // Undecided residents that list each hospital.
    pending: Vec<usize>,
    size: usize,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, property: Property) -> Self {
        let mut pending = vec![0; inst.num_hospitals()];
        for r in 0..inst.num_residents() {
            for &h in inst.resident_prefs(r) {
                pending[h] += 1;
            }
        }
        Self {
            inst,
            property,
            assignment: vec![None; inst.num_residents()],
            held: vec![Vec::new(); inst.num_hospitals()],
            pending,
            size: 0,
        }
    }

    fn matching(&self) -> Matching {
        Matching::from_assignment(self.assignment.clone())
    }

    fn accepts(&self, m: &Matching) -> bool {
        let ok = match self.property {
            Property::EnvyFree => is_envy_free(self.inst, m),
            Property::RelaxedStable => is_relaxed_stable(self.inst, m),
        };
        ok.expect("search only builds matchings") && is_feasible(self.inst, m)
    }

    /// Size of the best valid matching, trying large assignments first.
    fn max_size(&mut self) -> Option<usize> {
        let mut best = None;
        self.best_first(0, &mut best);
        best
    }

    fn best_first(&mut self, r: usize, best: &mut Option<usize>) {
        let n = self.inst.num_residents();
        if best.is_some_and(|b| self.size + (n - r) <= b) {
            return;
        }
        if r == n {
            if self.accepts(&self.matching()) {
                *best = Some(self.size);
            }
            return;
        }
        for &h in self.inst.resident_prefs(r) {
            if self.place(r, Some(h)) {
                self.best_first(r + 1, best);
            }
            self.undo(r);
        }
        if self.place(r, None) {
            self.best_first(r + 1, best);
        }
        self.undo(r);
    }

    /// Lexicographically first valid assignment of size at least `target`.
    fn first_at_least(&mut self, target: usize) -> Option<Matching> {
        self.lex_first(0, target)
    }

    fn lex_first(&mut self, r: usize, target: usize) -> Option<Matching> {
        let n = self.inst.num_residents();
        if self.size + (n - r) < target {
            return None;
        }
        if r == n {
            let m = self.matching();
            return self.accepts(&m).then_some(m);
        }
        let mut options: Vec<Option<HospitalId>> = vec![None];
        let mut listed = self.inst.resident_prefs(r).to_vec();
        listed.sort_unstable();
        options.extend(listed.into_iter().map(Some));
        for choice in options {
            let found = if self.place(r, choice) {
                self.lex_first(r + 1, target)
            } else {
                None
            };
            self.undo(r);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Records the decision for `r` and reports whether the branch can still
    /// succeed. Always pair with [`Search::undo`].
    fn place(&mut self, r: ResidentId, choice: Option<HospitalId>) -> bool {
        for &h in self.inst.resident_prefs(r) {
            self.pending[h] -= 1;
        }
        self.assignment[r] = choice;
        if let Some(h) = choice {
            self.held[h].push(r);
            self.size += 1;
            if self.held[h].len() > self.inst.upper_quota(h) {
                return false;
            }
        }
        self.lower_quotas_reachable(r + 1)
            && match self.property {
                Property::EnvyFree => !self.new_envy(r),
                Property::RelaxedStable => self.relaxed_possible(r),
            }
    }

    fn undo(&mut self, r: ResidentId) {
        if let Some(h) = self.assignment[r].take() {
            self.held[h].pop();
            self.size -= 1;
        }
        for &h in self.inst.resident_prefs(r) {
            self.pending[h] += 1;
        }
    }

    fn lower_quotas_reachable(&self, next: usize) -> bool {
        let undecided = self.inst.num_residents() - next;
        let mut total = 0;
        for h in self.inst.lower_quota_hospitals() {
            let missing = self.inst.lower_quota(h).saturating_sub(self.held[h].len());
            if missing > self.pending[h] {
                return false;
            }
            total += missing;
        }
        total <= undecided
    }

    // A placed resident a at h is beaten by `x` if h prefers x to a.
    fn beaten_at(&self, h: HospitalId, x: ResidentId) -> bool {
        self.held[h]
            .iter()
            .any(|&a| self.inst.hospital_prefers(h, x, a))
    }

    fn better_than_current(&self, x: ResidentId) -> &[HospitalId] {
        let list = self.inst.resident_prefs(x);
        match self.assignment[x] {
            None => list,
            Some(h) => &list[..self.inst.resident_rank(x, h).expect("listed")],
        }
    }

    /// Does deciding `r` create an envy pair among decided residents?
    fn new_envy(&self, r: ResidentId) -> bool {
        if self
            .better_than_current(r)
            .iter()
            .any(|&h| self.beaten_at(h, r))
        {
            return true;
        }
        let Some(h) = self.assignment[r] else {
            return false;
        };
        (0..r).any(|a| {
            self.inst.hospital_prefers(h, a, r)
                && self.inst.resident_prefers(a, h, self.assignment[a])
        })
    }

    // (x, h) blocks in every completion of the current branch.
    fn blocks_for_sure(&self, x: ResidentId, h: HospitalId) -> bool {
        self.beaten_at(h, x) || self.held[h].len() + self.pending[h] < self.inst.upper_quota(h)
    }

    /// Can the decided residents `0..=last` still satisfy relaxed stability?
    fn relaxed_possible(&self, last: ResidentId) -> bool {
        let mut blocking = vec![0usize; self.inst.num_hospitals()];
        for x in 0..=last {
            let blocks = self
                .better_than_current(x)
                .iter()
                .any(|&h| self.blocks_for_sure(x, h));
            if !blocks {
                continue;
            }
            match self.assignment[x] {
                None => return false,
                Some(h) => {
                    blocking[h] += 1;
                    if blocking[h] > self.inst.lower_quota(h) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Size of a minimum vertex cover, by enumerating vertex subsets.
pub fn brute_vc(graph: &Graph) -> usize {
    let n = graph.num_vertices();
    assert!(n < usize::BITS as usize, "graph too large to enumerate");
    (0u64..1 << n)
        .filter(|&set| {
            graph
                .edges()
                .iter()
                .all(|&(u, v)| set >> u & 1 == 1 || set >> v & 1 == 1)
        })
        .map(|set| set.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

/// Does the graph have an independent set of exactly `k` vertices?
pub fn brute_is(graph: &Graph, k: usize) -> bool {
    let n = graph.num_vertices();
    if k > n {
        return false;
    }
    let mut chosen = Vec::with_capacity(k);
    extend_independent(graph, 0, k, &mut chosen)
}

fn extend_independent(graph: &Graph, from: usize, k: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    for v in from..graph.num_vertices() {
        if chosen.iter().all(|&u| !graph.has_edge(u, v)) {
            chosen.push(v);
            if extend_independent(graph, v + 1, k, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::Instance;

    #[test]
    fn pair2_values() {
        let o = brute_maxefm(&pair2()).unwrap().unwrap();
        assert_eq!(o.size, 1);
        assert_eq!(o.witness, m(2, &[(0, 1)]));
        assert_eq!(brute_maxrsm(&pair2()).unwrap().unwrap().size, 2);
        assert_eq!(brute_maxefm(&both_lower()).unwrap(), None);
    }

    #[test]
    fn ladder_values() {
        let o = brute_maxefm(&ladder(3)).unwrap().unwrap();
        assert_eq!(o.size, 3);
        assert_eq!(brute_min_ur_efm(&ladder(3)).unwrap().unwrap().0, 0);
    }

    #[test]
    fn chain3_and_tight_values() {
        assert_eq!(brute_maxrsm(&chain3()).unwrap().unwrap().size, 3);
        let o = brute_maxrsm(&tight()).unwrap().unwrap();
        assert_eq!(o.size, 3);
        assert_eq!(o.witness, m(3, &[(0, 0), (1, 1), (2, 2)]));
    }

    #[test]
    fn no_lower_quotas_rsm_equals_stable_size() {
        let inst = Instance::new(
            vec![vec![0, 1], vec![0, 1], vec![1]],
            vec![vec![1, 0], vec![0, 1, 2]],
            vec![0, 0],
            vec![1, 1],
        )
        .unwrap();
        assert_eq!(
            brute_maxrsm(&inst).unwrap().unwrap().size,
            crate::stable::stable_matching(&inst).size()
        );
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            Oracle::new(3).maxefm(&ladder(4)),
            Err(SolveError::OracleTooLarge {
                residents: 4,
                bound: 3
            })
        );
    }

    #[test]
    fn graph_values() {
        let t = Graph::triangle();
        assert_eq!(brute_vc(&t), 2);
        assert!(!brute_is(&t, 2));
        assert!(brute_is(&t, 1));
        assert_eq!(brute_vc(&Graph::path(3)), 1);
        assert_eq!(brute_vc(&Graph::empty(4)), 0);
        assert!(brute_is(&Graph::empty(4), 4));
    }
}
