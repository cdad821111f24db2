#![allow(dead_code)]

use hrlq::generators::{gen_random, Family, RandomParams};
use hrlq::rng::Rng;
use hrlq::{Instance, Matching};
use proptest::prelude::*;

pub fn pair2() -> Instance {
    Instance::new(
        vec![vec![0, 1], vec![0]],
        vec![vec![0, 1], vec![0]],
        vec![0, 1],
        vec![1, 1],
    )
    .unwrap()
}

pub fn both_lower() -> Instance {
    Instance::new(
        vec![vec![0, 1], vec![0]],
        vec![vec![0, 1], vec![0]],
        vec![1, 1],
        vec![1, 1],
    )
    .unwrap()
}

pub fn ladder(n: usize) -> Instance {
    Instance::new(
        vec![vec![0, 1]; n],
        vec![(0..n).collect(), (0..n).collect()],
        vec![0, 1],
        vec![n, 1],
    )
    .unwrap()
}

pub fn chain3() -> Instance {
    Instance::new(
        vec![vec![0, 2], vec![1, 2], vec![1]],
        vec![vec![0], vec![1, 2], vec![0, 1]],
        vec![0, 0, 1],
        vec![1, 1, 1],
    )
    .unwrap()
}

pub fn tight() -> Instance {
    Instance::new(
        vec![vec![0], vec![0, 1], vec![2, 1]],
        vec![vec![1, 0], vec![1, 2], vec![2]],
        vec![0, 1, 0],
        vec![1, 1, 1],
    )
    .unwrap()
}

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

pub fn random_instance(
    family: Family,
    residents: usize,
    hospitals: usize,
    max_upper: usize,
    seed: u64,
) -> Instance {
    let params = RandomParams {
        residents,
        hospitals,
        density: 0.5,
        max_upper,
        lower_prob: 0.4,
    };
    gen_random(family, &params, seed).unwrap()
}

/// Small instance of any random family.
pub fn any_instance() -> impl Strategy<Value = Instance> {
    (0usize..3, 1usize..=7, 1usize..=5, 1usize..=3, any::<u64>()).prop_map(
        |(f, n, m, upper, seed)| {
            let family = [Family::Random, Family::RandomCl, Family::Random012r][f];
            random_instance(family, n, m, upper, seed)
        },
    )
}

/// Small instance with every quota at most one.
pub fn unit_instance(max_residents: usize) -> impl Strategy<Value = Instance> {
    (0usize..2, 1usize..=max_residents, 1usize..=5, any::<u64>()).prop_map(|(f, n, m, seed)| {
        let family = [Family::Random, Family::Random012r][f];
        random_instance(family, n, m, 1, seed)
    })
}

/// Uniformly walks residents in order, giving each a random hospital with a
/// free seat or leaving it unmatched.
pub fn random_matching(inst: &Instance, seed: u64) -> Matching {
    let mut rng = Rng::new(seed);
    let mut left = inst.upper_quotas().to_vec();
    let mut out = Matching::empty(inst.num_residents());
    for r in 0..inst.num_residents() {
        let options: Vec<usize> = inst
            .resident_prefs(r)
            .iter()
            .copied()
            .filter(|&h| left[h] > 0)
            .collect();
        let pick = rng.below(options.len() + 1);
        if let Some(&h) = options.get(pick) {
            left[h] -= 1;
            out.assign(r, h);
        }
    }
    out
}
