use super::{check_budget, fixed_envy, require_unit_quotas, Best, Meter};
use crate::envyfree::{ef_feasible, Residual};
use crate::error::SolveError;
use crate::model::{HospitalId, Instance, Matching};
use crate::stats::r_prime;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Maximum envy-free matching by trying every seat assignment of the
/// lower-quota hospitals.
///
/// Hospitals are taken in index order. Every envy-free assignment is
/// completed with the remaining residents at the other hospitals; among
/// equally large results the lexicographically smallest is returned.
pub fn maxefm_enum_lq(inst: &Instance, budget: u64) -> Result<Matching, SolveError> {
    let seed = ef_feasible(inst).ok_or(SolveError::NoFeasibleEnvyFree)?;
    let lq: Vec<HospitalId> = inst.lower_quota_hospitals().collect();
    let needed = lq.iter().fold(1u128, |acc, &h| {
        let len = inst.hospital_prefs(h).len();
        let ways: u128 = (inst.lower_quota(h)..=inst.upper_quota(h).min(len))
            .map(|s| binomial(len, s))
            .sum();
        acc.saturating_mul(ways)
    });
    check_budget(needed, budget)?;
    let mut closed = vec![false; inst.num_hospitals()];
    for &h in &lq {
        closed[h] = true;
    }
    let mut search = LqSearch {
        inst,
        lq: &lq,
        closed: &closed,
        best: Best::default(),
        meter: Meter::new(budget),
    };
    search.best.offer(seed);
    let mut fixed = Matching::empty(inst.num_residents());
    search.visit(0, &mut fixed)?;
    Ok(search.best.into_inner().expect("seed offered"))
}

struct LqSearch<'a> {
    inst: &'a Instance,
    lq: &'a [HospitalId],
    closed: &'a [bool],
    best: Best,
    meter: Meter,
}

impl LqSearch<'_> {
    fn visit(&mut self, depth: usize, fixed: &mut Matching) -> Result<(), SolveError> {
        if depth == self.lq.len() {
            self.meter.tick()?;
            if let Some(m) = Residual::new(self.inst, fixed, self.closed).complete() {
                self.best.offer(m);
            }
            return Ok(());
        }
        let h = self.lq[depth];
        self.fill(depth, h, 0, 0, fixed)
    }

    // Chooses the residents of `h` among list positions `from..`, then moves
    // on to the next hospital.
    fn fill(
        &mut self,
        depth: usize,
        h: HospitalId,
        from: usize,
        taken: usize,
        fixed: &mut Matching,
    ) -> Result<(), SolveError> {
        let list = self.inst.hospital_prefs(h);
        if taken >= self.inst.lower_quota(h) {
            self.visit(depth + 1, fixed)?;
        }
        if taken == self.inst.upper_quota(h) {
            return Ok(());
        }
        for pos in from..list.len() {
            let r = list[pos];
            if fixed.hospital_of(r).is_some() {
                continue;
            }
            fixed.assign(r, h);
            if !fixed_envy(self.inst, fixed, r) {
                self.fill(depth, h, pos + 1, taken + 1, fixed)?;
            }
            fixed.unassign(r);
        }
        Ok(())
    }
}

/// Maximum envy-free matching for 0/1 quotas by trying every way to seat
/// the residents acceptable to lower-quota hospitals.
///
/// Each such resident, in index order, is either left for the completion or
/// placed at one of its lower-quota hospitals (in list order). Assignments
/// that leave a lower-quota hospital empty or create envy are dropped.
pub fn maxefm_enum_rprime(inst: &Instance, budget: u64) -> Result<Matching, SolveError> {
    require_unit_quotas(inst)?;
    let seed = ef_feasible(inst).ok_or(SolveError::NoFeasibleEnvyFree)?;
    let rp = r_prime(inst);
    let needed = (1..=rp.len() as u128).fold(1u128, |acc, i| acc.saturating_mul(i));
    check_budget(needed, budget)?;
    let mut closed = vec![false; inst.num_hospitals()];
    for h in inst.lower_quota_hospitals() {
        closed[h] = true;
    }
    let mut search = RprimeSearch {
        inst,
        residents: &rp,
        closed: &closed,
        open_lq: inst.lower_quota_hospitals().count(),
        best: Best::default(),
        meter: Meter::new(budget),
    };
    search.best.offer(seed);
    let mut fixed = Matching::empty(inst.num_residents());
    search.visit(0, &mut fixed)?;
    Ok(search.best.into_inner().expect("seed offered"))
}

struct RprimeSearch<'a> {
    inst: &'a Instance,
    residents: &'a [usize],
    closed: &'a [bool],
    // Lower-quota hospitals still without a resident.
    open_lq: usize,
    best: Best,
    meter: Meter,
}

impl RprimeSearch<'_> {
    fn visit(&mut self, depth: usize, fixed: &mut Matching) -> Result<(), SolveError> {
        if self.open_lq > self.residents.len() - depth {
            return Ok(());
        }
        if depth == self.residents.len() {
            self.meter.tick()?;
            if let Some(m) = Residual::new(self.inst, fixed, self.closed).complete() {
                self.best.offer(m);
            }
            return Ok(());
        }
        let r = self.residents[depth];
        self.visit(depth + 1, fixed)?;
        let taken = fixed.occupancy(self.inst.num_hospitals());
        for &h in self.inst.resident_prefs(r) {
            if !self.inst.is_lower_quota_hospital(h) || taken[h] > 0 {
                continue;
            }
            fixed.assign(r, h);
            if !fixed_envy(self.inst, fixed, r) {
                self.open_lq -= 1;
                self.visit(depth + 1, fixed)?;
                self.open_lq += 1;
            }
            fixed.unassign(r);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::Instance;
    use crate::stable::stable_matching;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn pair2_golden() {
        let inst = pair2();
        let out = maxefm_enum_lq(&inst, 1000).unwrap();
        assert_eq!(out, m(2, &[(0, 1)]));
        assert_eq!(maxefm_enum_rprime(&inst, 1000).unwrap(), m(2, &[(0, 1)]));
    }

    #[test]
    fn ladder_reaches_n() {
        assert_eq!(maxefm_enum_lq(&ladder(4), 1000).unwrap().size(), 4);
    }

    #[test]
    fn ladder_rprime() {
        // Quotas of h1 exceed one, so build the 0/1 variant by hand: three
        // residents, h2 [1,1] and three plain seats.
        let inst = Instance::new(
            vec![vec![0, 3], vec![1, 3], vec![2, 3]],
            vec![vec![0], vec![1], vec![2], vec![0, 1, 2]],
            vec![0, 0, 0, 1],
            vec![1, 1, 1, 1],
        )
        .unwrap();
        assert_eq!(maxefm_enum_rprime(&inst, 1000).unwrap().size(), 3);
    }

    #[test]
    fn no_lower_quotas_gives_stable_size() {
        let inst = Instance::new(
            vec![vec![0, 1], vec![0]],
            vec![vec![1, 0], vec![0]],
            vec![0, 0],
            vec![1, 1],
        )
        .unwrap();
        let st = stable_matching(&inst);
        assert_eq!(maxefm_enum_lq(&inst, 10).unwrap().size(), st.size());
        assert_eq!(maxefm_enum_rprime(&inst, 10).unwrap(), st);
    }

    #[test]
    fn budget_and_preconditions() {
        assert!(matches!(
            maxefm_enum_lq(&ladder(5), 2),
            Err(SolveError::BudgetExceeded { .. })
        ));
        assert_eq!(
            maxefm_enum_lq(&both_lower(), 100),
            Err(SolveError::NoFeasibleEnvyFree)
        );
        assert_eq!(
            maxefm_enum_rprime(&ladder(2), 100),
            Err(SolveError::QuotaTooLarge { hospital: 0 })
        );
    }
}
