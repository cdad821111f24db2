//! Instance families: hardness gadgets built from graphs and seeded random
//! instances.
//!
//! Wherever a gadget allows any strict order (neighbour lists, the order of
//! a vertex's edges, the order of the hospitals in a block), ascending index
//! order is used.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;
use crate::model::{Instance, ModelError};
use crate::rng::Rng;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("target size k = {k} must lie in 1..={vertices}")]
    InvalidK { k: usize, vertices: usize },
    #[error("family {0} needs a source graph")]
    MissingGraph(Family),
    #[error("family {0} needs a target size k")]
    MissingK(Family),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("generated instance is invalid: {0}")]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    IndSet,
    IndSetUnit,
    MvcEfm,
    MvcRsm,
    Random,
    RandomCl,
    Random012r,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::IndSet,
        Family::IndSetUnit,
        Family::MvcEfm,
        Family::MvcRsm,
        Family::Random,
        Family::RandomCl,
        Family::Random012r,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::IndSet => "indset",
            Family::IndSetUnit => "indset-unit",
            Family::MvcEfm => "mvc-efm",
            Family::MvcRsm => "mvc-rsm",
            Family::Random => "random",
            Family::RandomCl => "random-cl",
            Family::Random012r => "random-012r",
        }
    }

    pub fn needs_graph(self) -> bool {
        matches!(
            self,
            Family::IndSet | Family::IndSetUnit | Family::MvcEfm | Family::MvcRsm
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| GeneratorError::UnknownFamily(s.to_string()))
    }
}

/// Shape of the random families.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    pub residents: usize,
    pub hospitals: usize,
    /// Probability that a resident/hospital pair is acceptable.
    pub density: f64,
    /// Upper quotas are drawn from `1..=max_upper`; the 0/1 family uses 1.
    pub max_upper: usize,
    /// Probability that a hospital gets a positive lower quota.
    pub lower_prob: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self {
            residents: 6,
            hospitals: 4,
            density: 0.5,
            max_upper: 2,
            lower_prob: 0.4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub graph: Option<Graph>,
    pub k: Option<usize>,
    pub params: RandomParams,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn random(family: Family, params: RandomParams, seed: u64) -> Self {
        Self {
            family,
            graph: None,
            k: None,
            params,
            seed,
        }
    }

    pub fn gadget(family: Family, graph: Graph, k: Option<usize>) -> Self {
        Self {
            family,
            graph: Some(graph),
            k,
            params: RandomParams::default(),
            seed: 0,
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance, GeneratorError> {
    let family = spec.family;
    let graph = || {
        spec.graph
            .as_ref()
            .ok_or(GeneratorError::MissingGraph(family))
    };
    let k = || spec.k.ok_or(GeneratorError::MissingK(family));
    match family {
        Family::IndSet => gen_indset(graph()?, k()?),
        Family::IndSetUnit => gen_indset_unit(graph()?, k()?),
        Family::MvcEfm => Ok(gen_mvc_efm(graph()?)),
        Family::MvcRsm => Ok(gen_mvc_rsm(graph()?)),
        Family::Random | Family::RandomCl | Family::Random012r => {
            gen_random(family, &spec.params, spec.seed)
        }
    }
}

fn check_k(graph: &Graph, k: usize) -> Result<(), GeneratorError> {
    if k == 0 || k > graph.num_vertices() {
        return Err(GeneratorError::InvalidK {
            k,
            vertices: graph.num_vertices(),
        });
    }
    Ok(())
}

/// Independent-set gadget with one hospital per vertex.
///
/// Residents: one per vertex, then one per edge. Hospitals: h_i per vertex
/// with quotas [0, deg(i) + 1], then x with quotas [k, k].
pub fn gen_indset(graph: &Graph, k: usize) -> Result<Instance, GeneratorError> {
    check_k(graph, k)?;
    let n = graph.num_vertices();
    let x = n;
    let mut rp = Vec::new();
    for i in 0..n {
        rp.push(vec![i, x]);
    }
    for &(u, v) in graph.edges() {
        rp.push(vec![u.min(v), u.max(v)]);
    }
    let mut hp = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for i in 0..n {
        let edges = graph.incident_edges(i);
        let mut list = vec![i];
        list.extend(edges.iter().map(|e| n + e));
        hp.push(list);
        lower.push(0);
        upper.push(edges.len() + 1);
    }
    hp.push((0..n).collect());
    lower.push(k);
    upper.push(k);
    Ok(Instance::new(rp, hp, lower, upper)?)
}

/// Independent-set gadget with quotas at most one.
///
/// Vertex i owns a block of deg(i) + 1 hospitals [0, 1]; the k hospitals of
/// X have quotas [1, 1] and follow all blocks.
pub fn gen_indset_unit(graph: &Graph, k: usize) -> Result<Instance, GeneratorError> {
    check_k(graph, k)?;
    let n = graph.num_vertices();
    let mut blocks = Vec::new();
    let mut next = 0;
    for i in 0..n {
        let size = graph.degree(i) + 1;
        blocks.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    let xs: Vec<usize> = (next..next + k).collect();
    let mut rp = Vec::new();
    for block in &blocks {
        let mut list = block.clone();
        list.extend(&xs);
        rp.push(list);
    }
    for &(u, v) in graph.edges() {
        let mut list = blocks[u.min(v)].clone();
        list.extend(&blocks[u.max(v)]);
        rp.push(list);
    }
    let mut hp = Vec::new();
    let mut lower = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        let mut list = vec![i];
        list.extend(graph.incident_edges(i).iter().map(|e| n + e));
        for _ in block {
            hp.push(list.clone());
            lower.push(0);
        }
    }
    for _ in &xs {
        hp.push((0..n).collect());
        lower.push(1);
    }
    let upper = vec![1; hp.len()];
    Ok(Instance::new(rp, hp, lower, upper)?)
}

/// Vertex-cover gadget whose maximum envy-free matching has size
/// 3|V| − |VC|.
///
/// Vertex i owns residents 3i..3i+2 and hospitals 4i..4i+3; the third
/// hospital has quotas [1, 1], the others [0, 1].
pub fn gen_mvc_efm(graph: &Graph) -> Instance {
    let n = graph.num_vertices();
    let r = |i: usize, j: usize| 3 * i + j;
    let h = |i: usize, j: usize| 4 * i + j;
    let mut rp = vec![Vec::new(); 3 * n];
    let mut hp = vec![Vec::new(); 4 * n];
    let mut lower = vec![0; 4 * n];
    for i in 0..n {
        let nb = graph.neighbors(i);
        rp[r(i, 0)] = vec![h(i, 0)];
        rp[r(i, 1)] = vec![h(i, 1), h(i, 0), h(i, 2)];
        let mut third = vec![h(i, 3), h(i, 1)];
        third.extend(nb.iter().map(|&j| h(j, 0)));
        third.push(h(i, 2));
        rp[r(i, 2)] = third;
        let mut first = vec![r(i, 1)];
        first.extend(nb.iter().map(|&j| r(j, 2)));
        first.push(r(i, 0));
        hp[h(i, 0)] = first;
        hp[h(i, 1)] = vec![r(i, 1), r(i, 2)];
        hp[h(i, 2)] = vec![r(i, 2), r(i, 1)];
        hp[h(i, 3)] = vec![r(i, 2)];
        lower[h(i, 2)] = 1;
    }
    Instance::new(rp, hp, lower, vec![1; 4 * n]).expect("gadget is well formed")
}

/// Vertex-cover gadget whose maximum relaxed stable matching has size
/// 3|V| − |VC|.
///
/// Vertex i owns residents 3i..3i+2 and hospitals 3i..3i+2; the third
/// hospital has quotas [1, 1], the others [0, 1]. Neighbours enter the
/// second hospital's list through their first resident.
pub fn gen_mvc_rsm(graph: &Graph) -> Instance {
    let n = graph.num_vertices();
    let idx = |i: usize, j: usize| 3 * i + j;
    let mut rp = vec![Vec::new(); 3 * n];
    let mut hp = vec![Vec::new(); 3 * n];
    let mut lower = vec![0; 3 * n];
    for i in 0..n {
        let nb = graph.neighbors(i);
        let mut first = vec![idx(i, 2)];
        first.extend(nb.iter().map(|&j| idx(j, 1)));
        first.push(idx(i, 0));
        rp[idx(i, 0)] = first;
        rp[idx(i, 1)] = vec![idx(i, 1), idx(i, 2)];
        rp[idx(i, 2)] = vec![idx(i, 1)];
        hp[idx(i, 0)] = vec![idx(i, 0)];
        let mut second = vec![idx(i, 1)];
        second.extend(nb.iter().map(|&j| idx(j, 0)));
        second.push(idx(i, 2));
        hp[idx(i, 1)] = second;
        hp[idx(i, 2)] = vec![idx(i, 1), idx(i, 0)];
        lower[idx(i, 2)] = 1;
    }
    Instance::new(rp, hp, lower, vec![1; 3 * n]).expect("gadget is well formed")
}

fn check_params(p: &RandomParams) -> Result<(), GeneratorError> {
    if !(0.0..=1.0).contains(&p.density) {
        return Err(GeneratorError::InvalidParameter(format!(
            "density {} outside [0, 1]",
            p.density
        )));
    }
    if !(0.0..=1.0).contains(&p.lower_prob) {
        return Err(GeneratorError::InvalidParameter(format!(
            "lower-quota probability {} outside [0, 1]",
            p.lower_prob
        )));
    }
    if p.max_upper == 0 {
        return Err(GeneratorError::InvalidParameter(
            "upper quotas must be positive".into(),
        ));
    }
    Ok(())
}

/// Seeded random instance of one of the random families.
///
/// Draw order: acceptability (row-major over residents then hospitals),
/// quotas per hospital, then a shuffle of each resident list followed by a
/// shuffle of each hospital list. The CL family marks lower-quota hospitals
/// first and makes them acceptable to everyone; the total lower quota never
/// exceeds the number of residents.
pub fn gen_random(
    family: Family,
    params: &RandomParams,
    seed: u64,
) -> Result<Instance, GeneratorError> {
    check_params(params)?;
    let (n, m) = (params.residents, params.hospitals);
    let mut rng = Rng::new(seed);
    let mut accept = vec![vec![false; m]; n];
    let mut lower = vec![0; m];
    let mut upper = vec![1; m];
    match family {
        Family::Random => {
            for row in accept.iter_mut() {
                for cell in row.iter_mut() {
                    *cell = rng.chance(params.density);
                }
            }
            for h in 0..m {
                upper[h] = rng.range(1, params.max_upper);
                let listed = (0..n).filter(|&r| accept[r][h]).count();
                if listed > 0 && rng.chance(params.lower_prob) {
                    lower[h] = rng.range(1, upper[h].min(listed));
                }
            }
        }
        Family::RandomCl => {
            let mut budget = n;
            let mut is_lq = vec![false; m];
            for h in 0..m {
                upper[h] = rng.range(1, params.max_upper);
                if budget > 0 && rng.chance(params.lower_prob) {
                    lower[h] = rng.range(1, upper[h].min(budget));
                    budget -= lower[h];
                    is_lq[h] = true;
                }
            }
            for row in accept.iter_mut() {
                for (h, cell) in row.iter_mut().enumerate() {
                    *cell = is_lq[h] || rng.chance(params.density);
                }
            }
        }
        Family::Random012r => {
            for row in accept.iter_mut() {
                let len = rng.range(1, 2).min(m);
                let mut picked = 0;
                while picked < len {
                    let h = rng.below(m);
                    if !row[h] {
                        row[h] = true;
                        picked += 1;
                    }
                }
            }
            for h in 0..m {
                let listed = (0..n).any(|r| accept[r][h]);
                if listed && rng.chance(params.lower_prob) {
                    lower[h] = 1;
                }
            }
        }
        other => {
            return Err(GeneratorError::InvalidParameter(format!(
                "{other} is not a random family"
            )))
        }
    }
    let mut rp: Vec<Vec<usize>> = accept
        .iter()
        .map(|row| (0..m).filter(|&h| row[h]).collect())
        .collect();
    for list in rp.iter_mut() {
        rng.shuffle(list);
    }
    let mut hp: Vec<Vec<usize>> = (0..m)
        .map(|h| (0..n).filter(|&r| accept[r][h]).collect())
        .collect();
    for list in hp.iter_mut() {
        rng.shuffle(list);
    }
    Ok(Instance::new(rp, hp, lower, upper)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable::stable_is_feasible;

    #[test]
    fn indset_triangle_shape() {
        let inst = gen_indset(&Graph::triangle(), 1).unwrap();
        assert_eq!((inst.num_residents(), inst.num_hospitals()), (6, 4));
        assert_eq!(inst.resident_prefs(0), &[0, 3]);
        assert_eq!(inst.resident_prefs(3), &[0, 1]);
        assert_eq!(inst.hospital_prefs(0), &[0, 3, 4]);
        assert_eq!((inst.lower_quota(3), inst.upper_quota(3)), (1, 1));
        assert_eq!(inst.upper_quota(0), 3);
        assert!(!stable_is_feasible(&inst).feasible);
    }

    #[test]
    fn indset_rejects_bad_k() {
        assert_eq!(
            gen_indset(&Graph::triangle(), 0),
            Err(GeneratorError::InvalidK { k: 0, vertices: 3 })
        );
        assert!(gen_indset_unit(&Graph::triangle(), 4).is_err());
    }

    #[test]
    fn indset_unit_shape() {
        let inst = gen_indset_unit(&Graph::path(2), 1).unwrap();
        // Blocks of two hospitals per vertex, then x.
        assert_eq!((inst.num_residents(), inst.num_hospitals()), (3, 5));
        assert_eq!(inst.resident_prefs(0), &[0, 1, 4]);
        assert_eq!(inst.resident_prefs(2), &[0, 1, 2, 3]);
        assert_eq!(inst.hospital_prefs(3), &[1, 2]);
        assert!(inst.has_unit_quotas());
        assert_eq!(inst.lower_quota(4), 1);
    }

    #[test]
    fn mvc_efm_shape() {
        let inst = gen_mvc_efm(&Graph::triangle());
        assert_eq!((inst.num_residents(), inst.num_hospitals()), (9, 12));
        assert_eq!(inst.resident_prefs(2), &[3, 1, 4, 8, 2]);
        assert_eq!(inst.hospital_prefs(0), &[1, 5, 8, 0]);
        let out = stable_is_feasible(&inst);
        assert!(!out.feasible);
        assert_eq!(out.deficiency, 3);
    }

    #[test]
    fn mvc_rsm_shape() {
        let inst = gen_mvc_rsm(&Graph::path(2));
        assert_eq!(inst.resident_prefs(0), &[2, 4, 0]);
        assert_eq!(inst.hospital_prefs(1), &[1, 3, 2]);
        assert_eq!(inst.hospital_prefs(2), &[1, 0]);
    }

    #[test]
    fn random_is_deterministic() {
        for family in [Family::Random, Family::RandomCl, Family::Random012r] {
            let a = gen_random(family, &RandomParams::default(), 7).unwrap();
            let b = gen_random(family, &RandomParams::default(), 7).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn family_constraints() {
        for seed in 0..50 {
            let cl = gen_random(Family::RandomCl, &RandomParams::default(), seed).unwrap();
            assert!(cl.is_cl_restricted());
            assert!(cl.total_lower_quota() <= cl.num_residents());
            let r2 = gen_random(Family::Random012r, &RandomParams::default(), seed).unwrap();
            assert!(r2.is_01_2r());
        }
    }

    #[test]
    fn family_tags_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }
}
