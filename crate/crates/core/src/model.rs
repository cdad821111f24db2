//! Instances, matchings and the property checkers every engine relies on.
//!
//! Residents and hospitals are dense indices. Each agent's preference list is
//! strict; rank 0 is the most preferred entry. Being unmatched is worse than
//! any listed hospital.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type ResidentId = usize;
pub type HospitalId = usize;

const UNRANKED: u32 = u32::MAX;

/// Structural problems that make a set of lists impossible to index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("quota vectors have length {lower}/{upper}, expected {hospitals}")]
    QuotaLength {
        lower: usize,
        upper: usize,
        hospitals: usize,
    },
    #[error(
        "resident {resident} lists hospital {hospital}, but there are only {hospitals} hospitals"
    )]
    UnknownHospital {
        resident: ResidentId,
        hospital: HospitalId,
        hospitals: usize,
    },
    #[error(
        "hospital {hospital} lists resident {resident}, but there are only {residents} residents"
    )]
    UnknownResident {
        hospital: HospitalId,
        resident: ResidentId,
        residents: usize,
    },
    #[error("invalid instance: {}", .0.first().map(|v| v.to_string()).unwrap_or_default())]
    Invalid(Vec<Violation>),
}

/// One broken instance invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The hospital lists the resident but not the other way round.
    HospitalOnlyEdge {
        resident: ResidentId,
        hospital: HospitalId,
    },
    /// The resident lists the hospital but not the other way round.
    ResidentOnlyEdge {
        resident: ResidentId,
        hospital: HospitalId,
    },
    DuplicateInResidentList {
        resident: ResidentId,
        hospital: HospitalId,
    },
    DuplicateInHospitalList {
        hospital: HospitalId,
        resident: ResidentId,
    },
    LowerAboveUpper {
        hospital: HospitalId,
        lower: usize,
        upper: usize,
    },
    ZeroUpperQuota {
        hospital: HospitalId,
    },
    /// q⁻(h) exceeds the number of residents h finds acceptable.
    LowerAboveListLength {
        hospital: HospitalId,
        lower: usize,
        list_len: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::HospitalOnlyEdge { resident, hospital } => write!(
                f,
                "hospital {hospital} lists resident {resident}, which does not list it back"
            ),
            Violation::ResidentOnlyEdge { resident, hospital } => write!(
                f,
                "resident {resident} lists hospital {hospital}, which does not list it back"
            ),
            Violation::DuplicateInResidentList { resident, hospital } => {
                write!(f, "resident {resident} lists hospital {hospital} twice")
            }
            Violation::DuplicateInHospitalList { hospital, resident } => {
                write!(f, "hospital {hospital} lists resident {resident} twice")
            }
            Violation::LowerAboveUpper {
                hospital,
                lower,
                upper,
            } => write!(
                f,
                "hospital {hospital} has lower quota {lower} above upper quota {upper}"
            ),
            Violation::ZeroUpperQuota { hospital } => {
                write!(f, "hospital {hospital} has upper quota 0")
            }
            Violation::LowerAboveListLength {
                hospital,
                lower,
                list_len,
            } => write!(
                f,
                "hospital {hospital} has lower quota {lower} but only {list_len} acceptable residents"
            ),
        }
    }
}

/// A hospital/residents instance with lower and upper quotas.
///
/// Immutable once built. Rank tables are precomputed so every preference
/// comparison is a constant-time lookup.
#[derive(Debug, Clone)]
pub struct Instance {
    resident_prefs: Vec<Vec<HospitalId>>,
    hospital_prefs: Vec<Vec<ResidentId>>,
    lower: Vec<usize>,
    upper: Vec<usize>,
    // resident_rank[r * m + h], hospital_rank[h * n + r]
    resident_rank: Vec<u32>,
    hospital_rank: Vec<u32>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.resident_prefs == other.resident_prefs
            && self.hospital_prefs == other.hospital_prefs
            && self.lower == other.lower
            && self.upper == other.upper
    }
}

impl Eq for Instance {}

impl Instance {
    /// Builds an instance and rejects it unless every invariant holds.
    pub fn new(
        resident_prefs: Vec<Vec<HospitalId>>,
        hospital_prefs: Vec<Vec<ResidentId>>,
        lower: Vec<usize>,
        upper: Vec<usize>,
    ) -> Result<Self, ModelError> {
        let inst = Self::from_lists(resident_prefs, hospital_prefs, lower, upper)?;
        let violations = inst.validate();
        if violations.is_empty() {
            Ok(inst)
        } else {
            Err(ModelError::Invalid(violations))
        }
    }

    /// Builds an instance without checking the semantic invariants; only
    /// out-of-range identifiers are rejected. Use [`Instance::validate`] to
    /// list what is wrong with it.
    pub fn from_lists(
        resident_prefs: Vec<Vec<HospitalId>>,
        hospital_prefs: Vec<Vec<ResidentId>>,
        lower: Vec<usize>,
        upper: Vec<usize>,
    ) -> Result<Self, ModelError> {
        let n = resident_prefs.len();
        let m = hospital_prefs.len();
        if lower.len() != m || upper.len() != m {
            return Err(ModelError::QuotaLength {
                lower: lower.len(),
                upper: upper.len(),
                hospitals: m,
            });
        }
        let mut resident_rank = vec![UNRANKED; n * m];
        for (r, list) in resident_prefs.iter().enumerate() {
            for (rank, &h) in list.iter().enumerate() {
                if h >= m {
                    return Err(ModelError::UnknownHospital {
                        resident: r,
                        hospital: h,
                        hospitals: m,
                    });
                }
                let slot = &mut resident_rank[r * m + h];
                if *slot == UNRANKED {
                    *slot = rank as u32;
                }
            }
        }
        let mut hospital_rank = vec![UNRANKED; n * m];
        for (h, list) in hospital_prefs.iter().enumerate() {
            for (rank, &r) in list.iter().enumerate() {
                if r >= n {
                    return Err(ModelError::UnknownResident {
                        hospital: h,
                        resident: r,
                        residents: n,
                    });
                }
                let slot = &mut hospital_rank[h * n + r];
                if *slot == UNRANKED {
                    *slot = rank as u32;
                }
            }
        }
        Ok(Self {
            resident_prefs,
            hospital_prefs,
            lower,
            upper,
            resident_rank,
            hospital_rank,
        })
    }

    /// Lists every broken invariant; empty means the instance is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (r, list) in self.resident_prefs.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &h in list {
                if !seen.insert(h) {
                    out.push(Violation::DuplicateInResidentList {
                        resident: r,
                        hospital: h,
                    });
                } else if self.hospital_rank(h, r).is_none() {
                    out.push(Violation::ResidentOnlyEdge {
                        resident: r,
                        hospital: h,
                    });
                }
            }
        }
        for (h, list) in self.hospital_prefs.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &r in list {
                if !seen.insert(r) {
                    out.push(Violation::DuplicateInHospitalList {
                        hospital: h,
                        resident: r,
                    });
                } else if self.resident_rank(r, h).is_none() {
                    out.push(Violation::HospitalOnlyEdge {
                        resident: r,
                        hospital: h,
                    });
                }
            }
            let (lower, upper) = (self.lower[h], self.upper[h]);
            if upper == 0 {
                out.push(Violation::ZeroUpperQuota { hospital: h });
            }
            if lower > upper {
                out.push(Violation::LowerAboveUpper {
                    hospital: h,
                    lower,
                    upper,
                });
            }
            if lower > 0 && lower > list.len() {
                out.push(Violation::LowerAboveListLength {
                    hospital: h,
                    lower,
                    list_len: list.len(),
                });
            }
        }
        out
    }

    pub fn num_residents(&self) -> usize {
        self.resident_prefs.len()
    }

    pub fn num_hospitals(&self) -> usize {
        self.hospital_prefs.len()
    }

    pub fn resident_prefs(&self, r: ResidentId) -> &[HospitalId] {
        &self.resident_prefs[r]
    }

    pub fn hospital_prefs(&self, h: HospitalId) -> &[ResidentId] {
        &self.hospital_prefs[h]
    }

    pub fn lower_quota(&self, h: HospitalId) -> usize {
        self.lower[h]
    }

    pub fn upper_quota(&self, h: HospitalId) -> usize {
        self.upper[h]
    }

    pub fn lower_quotas(&self) -> &[usize] {
        &self.lower
    }

    pub fn upper_quotas(&self) -> &[usize] {
        &self.upper
    }

    /// Position of `h` in `r`'s list.
    pub fn resident_rank(&self, r: ResidentId, h: HospitalId) -> Option<usize> {
        let v = self.resident_rank[r * self.num_hospitals() + h];
        (v != UNRANKED).then_some(v as usize)
    }

    /// Position of `r` in `h`'s list.
    pub fn hospital_rank(&self, h: HospitalId, r: ResidentId) -> Option<usize> {
        let v = self.hospital_rank[h * self.num_residents() + r];
        (v != UNRANKED).then_some(v as usize)
    }

    pub fn is_edge(&self, r: ResidentId, h: HospitalId) -> bool {
        self.resident_rank(r, h).is_some() && self.hospital_rank(h, r).is_some()
    }

    /// Does `r` strictly prefer `h` to `current`? Every listed hospital beats
    /// being unmatched.
    pub fn resident_prefers(
        &self,
        r: ResidentId,
        h: HospitalId,
        current: Option<HospitalId>,
    ) -> bool {
        let Some(rank) = self.resident_rank(r, h) else {
            return false;
        };
        match current {
            None => true,
            Some(c) => self.resident_rank(r, c).is_some_and(|cur| rank < cur),
        }
    }

    /// Does `h` strictly prefer `a` to `b`? Both must be listed by `h`.
    pub fn hospital_prefers(&self, h: HospitalId, a: ResidentId, b: ResidentId) -> bool {
        match (self.hospital_rank(h, a), self.hospital_rank(h, b)) {
            (Some(x), Some(y)) => x < y,
            _ => false,
        }
    }

    pub fn num_edges(&self) -> usize {
        self.resident_prefs.iter().map(Vec::len).sum()
    }

    /// Every hospital's quotas are at most one.
    pub fn has_unit_quotas(&self) -> bool {
        self.upper.iter().all(|&q| q <= 1) && self.lower.iter().all(|&q| q <= 1)
    }

    pub fn is_lower_quota_hospital(&self, h: HospitalId) -> bool {
        self.lower[h] > 0
    }

    pub fn lower_quota_hospitals(&self) -> impl Iterator<Item = HospitalId> + '_ {
        (0..self.num_hospitals()).filter(|&h| self.lower[h] > 0)
    }

    /// Every hospital with a positive lower quota ranks every resident.
    /// Returns the first hospital breaking the restriction.
    pub fn cl_violation(&self) -> Option<HospitalId> {
        let n = self.num_residents();
        self.lower_quota_hospitals()
            .find(|&h| self.hospital_prefs[h].len() != n || (0..n).any(|r| !self.is_edge(r, h)))
    }

    pub fn is_cl_restricted(&self) -> bool {
        self.cl_violation().is_none()
    }

    /// All quotas at most one and every resident list of length at most two.
    pub fn is_01_2r(&self) -> bool {
        self.has_unit_quotas() && self.resident_prefs.iter().all(|l| l.len() <= 2)
    }

    pub fn total_lower_quota(&self) -> usize {
        self.lower.iter().sum()
    }

    /// Longest resident list (ℓ₁).
    pub fn max_resident_list(&self) -> usize {
        self.resident_prefs.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Longest hospital list (ℓ₂).
    pub fn max_hospital_list(&self) -> usize {
        self.hospital_prefs.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Problems with a matching relative to an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("matching covers {got} residents, instance has {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("pair (resident {resident}, hospital {hospital}) is not an edge of the instance")]
    NotAnEdge {
        resident: ResidentId,
        hospital: HospitalId,
    },
    #[error("hospital {hospital} holds {assigned} residents, above its upper quota {upper}")]
    OverCapacity {
        hospital: HospitalId,
        assigned: usize,
        upper: usize,
    },
}

/// A partial assignment of residents to hospitals.
///
/// Matchings are plain values, independent of any instance; every checker
/// takes the instance alongside.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    assignment: Vec<Option<HospitalId>>,
}

impl Matching {
    pub fn empty(num_residents: usize) -> Self {
        Self {
            assignment: vec![None; num_residents],
        }
    }

    pub fn from_assignment(assignment: Vec<Option<HospitalId>>) -> Self {
        Self { assignment }
    }

    pub fn from_pairs(
        num_residents: usize,
        pairs: impl IntoIterator<Item = (ResidentId, HospitalId)>,
    ) -> Self {
        let mut m = Self::empty(num_residents);
        for (r, h) in pairs {
            m.assignment[r] = Some(h);
        }
        m
    }

    pub fn num_residents(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[Option<HospitalId>] {
        &self.assignment
    }

    pub fn hospital_of(&self, r: ResidentId) -> Option<HospitalId> {
        self.assignment[r]
    }

    pub fn assign(&mut self, r: ResidentId, h: HospitalId) {
        self.assignment[r] = Some(h);
    }

    pub fn unassign(&mut self, r: ResidentId) {
        self.assignment[r] = None;
    }

    pub fn contains(&self, r: ResidentId, h: HospitalId) -> bool {
        self.assignment[r] == Some(h)
    }

    /// Number of matched residents.
    pub fn size(&self) -> usize {
        self.assignment.iter().filter(|a| a.is_some()).count()
    }

    /// Matched pairs in resident order.
    pub fn pairs(&self) -> impl Iterator<Item = (ResidentId, HospitalId)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(r, h)| h.map(|h| (r, h)))
    }

    pub fn unmatched(&self) -> impl Iterator<Item = ResidentId> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(r, h)| h.is_none().then_some(r))
    }

    /// Residents assigned to each hospital, in resident order.
    pub fn residents_by_hospital(&self, num_hospitals: usize) -> Vec<Vec<ResidentId>> {
        let mut out = vec![Vec::new(); num_hospitals];
        for (r, h) in self.pairs() {
            out[h].push(r);
        }
        out
    }

    pub fn occupancy(&self, num_hospitals: usize) -> Vec<usize> {
        let mut out = vec![0; num_hospitals];
        for (_, h) in self.pairs() {
            out[h] += 1;
        }
        out
    }
}

/// Checks that `m` is a matching of `inst`: right length, edges only, upper
/// quotas respected.
pub fn check_matching(inst: &Instance, m: &Matching) -> Result<(), MatchingError> {
    if m.num_residents() != inst.num_residents() {
        return Err(MatchingError::WrongLength {
            got: m.num_residents(),
            expected: inst.num_residents(),
        });
    }
    let mut occ = vec![0usize; inst.num_hospitals()];
    for (r, h) in m.pairs() {
        if h >= inst.num_hospitals() || !inst.is_edge(r, h) {
            return Err(MatchingError::NotAnEdge {
                resident: r,
                hospital: h,
            });
        }
        occ[h] += 1;
    }
    for (h, &assigned) in occ.iter().enumerate() {
        if assigned > inst.upper_quota(h) {
            return Err(MatchingError::OverCapacity {
                hospital: h,
                assigned,
                upper: inst.upper_quota(h),
            });
        }
    }
    Ok(())
}

// Per-hospital occupancy and worst assigned rank, shared by the checkers.
struct HospitalView {
    occupancy: Vec<usize>,
    worst_rank: Vec<Option<usize>>,
}

impl HospitalView {
    fn new(inst: &Instance, m: &Matching) -> Self {
        let mut occupancy = vec![0; inst.num_hospitals()];
        let mut worst_rank: Vec<Option<usize>> = vec![None; inst.num_hospitals()];
        for (r, h) in m.pairs() {
            occupancy[h] += 1;
            let rank = inst.hospital_rank(h, r).expect("matched pair is an edge");
            worst_rank[h] = Some(worst_rank[h].map_or(rank, |w| w.max(rank)));
        }
        Self {
            occupancy,
            worst_rank,
        }
    }

    fn blocks(&self, inst: &Instance, r: ResidentId, h: HospitalId) -> bool {
        if self.occupancy[h] < inst.upper_quota(h) {
            return true;
        }
        match (self.worst_rank[h], inst.hospital_rank(h, r)) {
            (Some(worst), Some(rank)) => rank < worst,
            _ => false,
        }
    }
}

/// Every blocking pair of `m`, in resident order then by the resident's
/// preference.
pub fn blocking_pairs(
    inst: &Instance,
    m: &Matching,
) -> Result<Vec<(ResidentId, HospitalId)>, MatchingError> {
    check_matching(inst, m)?;
    let view = HospitalView::new(inst, m);
    let mut out = Vec::new();
    for r in 0..inst.num_residents() {
        let current = m.hospital_of(r);
        for &h in inst.resident_prefs(r) {
            if Some(h) == current {
                break;
            }
            if inst.is_edge(r, h) && view.blocks(inst, r, h) {
                out.push((r, h));
            }
        }
    }
    Ok(out)
}

pub fn is_stable(inst: &Instance, m: &Matching) -> Result<bool, MatchingError> {
    Ok(blocking_pairs(inst, m)?.is_empty())
}

/// A justified-envy triple: `envier` prefers `hospital` to its own
/// assignment and `hospital` prefers `envier` to `envied`, who holds a seat
/// there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnvyPair {
    pub envier: ResidentId,
    pub envied: ResidentId,
    pub hospital: HospitalId,
}

/// Every envy pair of `m`.
pub fn envy_pairs(inst: &Instance, m: &Matching) -> Result<Vec<EnvyPair>, MatchingError> {
    check_matching(inst, m)?;
    let by_hospital = m.residents_by_hospital(inst.num_hospitals());
    let mut out = Vec::new();
    for r in 0..inst.num_residents() {
        let current = m.hospital_of(r);
        for &h in inst.resident_prefs(r) {
            if Some(h) == current {
                break;
            }
            if !inst.is_edge(r, h) {
                continue;
            }
            for &other in &by_hospital[h] {
                if inst.hospital_prefers(h, r, other) {
                    out.push(EnvyPair {
                        envier: r,
                        envied: other,
                        hospital: h,
                    });
                }
            }
        }
    }
    Ok(out)
}

pub fn is_envy_free(inst: &Instance, m: &Matching) -> Result<bool, MatchingError> {
    check_matching(inst, m)?;
    Ok(first_envy(inst, m).is_none())
}

// Short-circuiting envy search for callers that already validated `m`.
pub(crate) fn first_envy(inst: &Instance, m: &Matching) -> Option<EnvyPair> {
    let view = HospitalView::new(inst, m);
    for r in 0..inst.num_residents() {
        let current = m.hospital_of(r);
        for &h in inst.resident_prefs(r) {
            if Some(h) == current {
                break;
            }
            let (Some(worst), Some(rank)) = (view.worst_rank[h], inst.hospital_rank(h, r)) else {
                continue;
            };
            if rank < worst {
                let envied = (0..inst.num_residents())
                    .find(|&o| {
                        m.contains(o, h) && inst.hospital_rank(h, o).is_some_and(|x| x > rank)
                    })
                    .expect("worst assignee exists");
                return Some(EnvyPair {
                    envier: r,
                    envied,
                    hospital: h,
                });
            }
        }
    }
    None
}

/// Total lower-quota shortfall, Σ max(0, q⁻(h) − |M(h)|).
pub fn deficiency(inst: &Instance, m: &Matching) -> usize {
    let occ = m.occupancy(inst.num_hospitals());
    (0..inst.num_hospitals())
        .map(|h| inst.lower_quota(h).saturating_sub(occ[h]))
        .sum()
}

pub fn is_feasible(inst: &Instance, m: &Matching) -> bool {
    deficiency(inst, m) == 0
}

pub fn matching_size(m: &Matching) -> usize {
    m.size()
}

pub fn unmatched_residents(m: &Matching) -> BTreeSet<ResidentId> {
    m.unmatched().collect()
}

/// Why a matching fails relaxed stability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelaxedVerdict {
    RelaxedStable,
    /// An unmatched resident takes part in a blocking pair.
    UnmatchedBlocks {
        resident: ResidentId,
        hospital: HospitalId,
    },
    /// More of the hospital's assignees block than its lower quota allows.
    TooManyBlocking {
        hospital: HospitalId,
        blocking: usize,
        allowed: usize,
    },
}

impl RelaxedVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, RelaxedVerdict::RelaxedStable)
    }
}

/// At most q⁻(h) of h's assignees may take part in blocking pairs and no
/// unmatched resident may.
pub fn relaxed_stability(inst: &Instance, m: &Matching) -> Result<RelaxedVerdict, MatchingError> {
    let pairs = blocking_pairs(inst, m)?;
    Ok(relaxed_verdict_from_pairs(inst, m, &pairs))
}

pub fn is_relaxed_stable(inst: &Instance, m: &Matching) -> Result<bool, MatchingError> {
    Ok(relaxed_stability(inst, m)?.holds())
}

fn relaxed_verdict_from_pairs(
    inst: &Instance,
    m: &Matching,
    pairs: &[(ResidentId, HospitalId)],
) -> RelaxedVerdict {
    if let Some(&(resident, hospital)) = pairs.iter().find(|(r, _)| m.hospital_of(*r).is_none()) {
        return RelaxedVerdict::UnmatchedBlocks { resident, hospital };
    }
    let per_hospital = blocking_residents_per_hospital(inst, m, pairs);
    for (h, set) in per_hospital.iter().enumerate() {
        if set.len() > inst.lower_quota(h) {
            return RelaxedVerdict::TooManyBlocking {
                hospital: h,
                blocking: set.len(),
                allowed: inst.lower_quota(h),
            };
        }
    }
    RelaxedVerdict::RelaxedStable
}

fn blocking_residents_per_hospital(
    inst: &Instance,
    m: &Matching,
    pairs: &[(ResidentId, HospitalId)],
) -> Vec<BTreeSet<ResidentId>> {
    let mut out = vec![BTreeSet::new(); inst.num_hospitals()];
    for &(r, _) in pairs {
        if let Some(h) = m.hospital_of(r) {
            out[h].insert(r);
        }
    }
    out
}

/// Every witness of instability and unfairness for one matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub blocking_pairs: Vec<(ResidentId, HospitalId)>,
    pub envy_pairs: Vec<EnvyPair>,
    pub deficiency_total: usize,
    /// For each hospital, its assignees that take part in a blocking pair.
    pub per_hospital_blocking_residents: Vec<BTreeSet<ResidentId>>,
    pub relaxed: RelaxedVerdict,
}

impl Diagnostics {
    pub fn compute(inst: &Instance, m: &Matching) -> Result<Self, MatchingError> {
        let blocking = blocking_pairs(inst, m)?;
        let envy = envy_pairs(inst, m)?;
        let relaxed = relaxed_verdict_from_pairs(inst, m, &blocking);
        Ok(Self {
            per_hospital_blocking_residents: blocking_residents_per_hospital(inst, m, &blocking),
            deficiency_total: deficiency(inst, m),
            blocking_pairs: blocking,
            envy_pairs: envy,
            relaxed,
        })
    }

    pub fn is_stable(&self) -> bool {
        self.blocking_pairs.is_empty()
    }

    pub fn is_envy_free(&self) -> bool {
        self.envy_pairs.is_empty()
    }

    pub fn is_feasible(&self) -> bool {
        self.deficiency_total == 0
    }

    pub fn is_relaxed_stable(&self) -> bool {
        self.relaxed.holds()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// r1: h1 h2 / r2: h1 ; [0,1] h1: r1 r2 ; [1,1] h2: r1
    pub fn pair2() -> Instance {
        Instance::new(
            vec![vec![0, 1], vec![0]],
            vec![vec![0, 1], vec![0]],
            vec![0, 1],
            vec![1, 1],
        )
        .unwrap()
    }

    /// Same as [`pair2`] with q⁻(h1) = 1 as well.
    pub fn both_lower() -> Instance {
        Instance::new(
            vec![vec![0, 1], vec![0]],
            vec![vec![0, 1], vec![0]],
            vec![1, 1],
            vec![1, 1],
        )
        .unwrap()
    }

    /// n residents all listing h1, h2 ; [0,n] h1 and [1,1] h2 rank r1..rn.
    pub fn ladder(n: usize) -> Instance {
        Instance::new(
            vec![vec![0, 1]; n],
            vec![(0..n).collect(), (0..n).collect()],
            vec![0, 1],
            vec![n, 1],
        )
        .unwrap()
    }

    /// r1: h1 h3 / r2: h2 h3 / r3: h2 ; [0,1] h1: r1 ; [0,1] h2: r2 r3 ;
    /// [1,1] h3: r1 r2
    pub fn chain3() -> Instance {
        Instance::new(
            vec![vec![0, 2], vec![1, 2], vec![1]],
            vec![vec![0], vec![1, 2], vec![0, 1]],
            vec![0, 0, 1],
            vec![1, 1, 1],
        )
        .unwrap()
    }

    /// r1: h1 / r2: h1 h2 / r3: h3 h2 ; [0,1] h1: r2 r1 ; [1,1] h2: r2 r3 ;
    /// [0,1] h3: r3
    pub fn tight() -> Instance {
        Instance::new(
            vec![vec![0], vec![0, 1], vec![2, 1]],
            vec![vec![1, 0], vec![1, 2], vec![2]],
            vec![0, 1, 0],
            vec![1, 1, 1],
        )
        .unwrap()
    }

    /// Quotas at most one with a three-entry resident list; an envy-free
    /// matching of size two has no envy-free augmenting path.
    pub fn cex_a() -> Instance {
        Instance::new(
            vec![vec![0, 3], vec![1, 2, 3], vec![2]],
            vec![vec![0], vec![1], vec![1, 2], vec![0, 1]],
            vec![0, 0, 0, 1],
            vec![1, 1, 1, 1],
        )
        .unwrap()
    }

    pub fn m(n: usize, pairs: &[(usize, usize)]) -> Matching {
        Matching::from_pairs(n, pairs.iter().copied())
    }
}
