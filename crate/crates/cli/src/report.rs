//! Reports printed by `solve`, `check` and `kernelize`.
//!
//! Text output is one `key: value` line per field in a fixed order; list
//! entries repeat their key. JSON output carries the same fields.

use std::fmt::Write as _;
use std::time::Duration;

use hrlq::format::{named_pairs, render_instance, NamedInstance};
use hrlq::fpt::{KernelOutcome, KernelResult};
use hrlq::model::check_matching;
use hrlq::stats::InstanceStats;
use hrlq::{Diagnostics, Matching, RelaxedVerdict};
use serde::Serialize;

use crate::{Algo, CliError, Guarantee};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Instance statistics as they appear in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub residents: usize,
    pub hospitals: usize,
    pub total_lower_quota: usize,
    pub stable_size: usize,
    pub stable_deficiency: usize,
    pub l1: usize,
    pub l2: usize,
    pub q: usize,
    pub l: usize,
    pub s: usize,
    pub d: usize,
    pub r_prime: usize,
    pub p: usize,
    pub t: usize,
    pub max_matching: usize,
}

impl From<InstanceStats> for Stats {
    fn from(s: InstanceStats) -> Self {
        Self {
            residents: s.residents,
            hospitals: s.hospitals,
            total_lower_quota: s.total_lower_quota,
            stable_size: s.stable_size,
            stable_deficiency: s.stable_deficiency,
            l1: s.l1,
            l2: s.l2,
            q: s.q,
            l: s.l_lq,
            s: s.s,
            d: s.d,
            r_prime: s.r_prime,
            p: s.p,
            t: s.t,
            max_matching: s.max_matching,
        }
    }
}

impl Stats {
    pub fn fields(&self) -> [(&'static str, usize); 15] {
        [
            ("residents", self.residents),
            ("hospitals", self.hospitals),
            ("total_lower_quota", self.total_lower_quota),
            ("stable_size", self.stable_size),
            ("stable_deficiency", self.stable_deficiency),
            ("l1", self.l1),
            ("l2", self.l2),
            ("q", self.q),
            ("l", self.l),
            ("s", self.s),
            ("d", self.d),
            ("r_prime", self.r_prime),
            ("p", self.p),
            ("t", self.t),
            ("max_matching", self.max_matching),
        ]
    }
}

/// Properties of a matching, always recomputed from the instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub size: usize,
    pub unmatched: usize,
    pub feasible: bool,
    pub deficiency: usize,
    pub stable: bool,
    pub envy_free: bool,
    pub relaxed_stable: bool,
    pub blocking_pairs: usize,
    pub envy_pairs: usize,
}

impl Verdicts {
    pub fn of(diag: &Diagnostics, m: &Matching) -> Self {
        Self {
            size: m.size(),
            unmatched: m.num_residents() - m.size(),
            feasible: diag.is_feasible(),
            deficiency: diag.deficiency_total,
            stable: diag.is_stable(),
            envy_free: diag.is_envy_free(),
            relaxed_stable: diag.is_relaxed_stable(),
            blocking_pairs: diag.blocking_pairs.len(),
            envy_pairs: diag.envy_pairs.len(),
        }
    }

    pub fn meets(&self, g: Guarantee) -> bool {
        match g {
            Guarantee::Stable => self.stable,
            Guarantee::EnvyFreeFeasible => self.envy_free && self.feasible,
            Guarantee::RelaxedStableFeasible => self.relaxed_stable && self.feasible,
        }
    }

    fn write_text(&self, out: &mut String) {
        let lines: [(&str, String); 9] = [
            ("size", self.size.to_string()),
            ("unmatched", self.unmatched.to_string()),
            ("feasible", self.feasible.to_string()),
            ("deficiency", self.deficiency.to_string()),
            ("stable", self.stable.to_string()),
            ("envy_free", self.envy_free.to_string()),
            ("relaxed_stable", self.relaxed_stable.to_string()),
            ("blocking_pairs", self.blocking_pairs.to_string()),
            ("envy_pairs", self.envy_pairs.to_string()),
        ];
        for (k, v) in lines {
            writeln!(out, "{k}: {v}").unwrap();
        }
    }
}

fn diagnostics(named: &NamedInstance, m: &Matching) -> Result<Diagnostics, CliError> {
    Diagnostics::compute(&named.instance, m)
        .map_err(|e| CliError::Internal(format!("invalid matching: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub matching: Vec<(String, String)>,
    #[serde(flatten)]
    pub verdicts: Verdicts,
    pub stats: Stats,
    pub duration_ms: f64,
}

impl SolveReport {
    /// Verdicts come from the checkers, never from the solver.
    pub fn build(
        named: &NamedInstance,
        algo: Algo,
        m: &Matching,
        elapsed: Duration,
    ) -> Result<Self, CliError> {
        let diag = diagnostics(named, m)?;
        let verdicts = Verdicts::of(&diag, m);
        let report = Self {
            algorithm: algo.tag().to_string(),
            matching: named_pairs(m, named),
            verdicts,
            stats: InstanceStats::compute(&named.instance).into(),
            duration_ms: elapsed.as_secs_f64() * 1e3,
        };
        Ok(report)
    }

    pub fn check_guarantee(&self, algo: Algo) -> Result<(), CliError> {
        if self.verdicts.meets(algo.guarantee()) {
            return Ok(());
        }
        let property = match algo.guarantee() {
            Guarantee::Stable => "stable",
            Guarantee::EnvyFreeFeasible => "envy-free and feasible",
            Guarantee::RelaxedStableFeasible => "relaxed stable and feasible",
        };
        Err(CliError::PropertyViolated { algo, property })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => to_json(self),
            OutputFormat::Text => {
                let mut out = String::new();
                writeln!(out, "algorithm: {}", self.algorithm).unwrap();
                self.verdicts.write_text(&mut out);
                for (k, v) in self.stats.fields() {
                    writeln!(out, "{k}: {v}").unwrap();
                }
                writeln!(out, "duration_ms: {:.3}", self.duration_ms).unwrap();
                for (r, h) in &self.matching {
                    writeln!(out, "pair: {r} {h}").unwrap();
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    #[serde(flatten)]
    pub verdicts: Verdicts,
    /// Why relaxed stability fails, empty when it holds.
    pub relaxed_violation: String,
    pub blocking: Vec<(String, String)>,
    pub envy: Vec<(String, String, String)>,
    /// Per hospital, its assignees that take part in a blocking pair.
    pub blocked_assignees: Vec<(String, Vec<String>)>,
}

impl CheckReport {
    pub fn build(named: &NamedInstance, m: &Matching) -> Result<Self, CliError> {
        let diag = diagnostics(named, m)?;
        let r = |i: usize| named.resident_names[i].clone();
        let h = |i: usize| named.hospital_names[i].clone();
        let relaxed_violation = match diag.relaxed {
            RelaxedVerdict::RelaxedStable => String::new(),
            RelaxedVerdict::UnmatchedBlocks { resident, hospital } => {
                format!("unmatched {} blocks with {}", r(resident), h(hospital))
            }
            RelaxedVerdict::TooManyBlocking {
                hospital,
                blocking,
                allowed,
            } => format!(
                "{} has {blocking} blocking assignees, lower quota {allowed}",
                h(hospital)
            ),
        };
        Ok(Self {
            verdicts: Verdicts::of(&diag, m),
            relaxed_violation,
            blocking: diag
                .blocking_pairs
                .iter()
                .map(|&(a, b)| (r(a), h(b)))
                .collect(),
            envy: diag
                .envy_pairs
                .iter()
                .map(|e| (r(e.envier), r(e.envied), h(e.hospital)))
                .collect(),
            blocked_assignees: diag
                .per_hospital_blocking_residents
                .iter()
                .enumerate()
                .filter(|(_, set)| !set.is_empty())
                .map(|(i, set)| (h(i), set.iter().map(|&x| r(x)).collect()))
                .collect(),
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => to_json(self),
            OutputFormat::Text => {
                let mut out = String::new();
                self.verdicts.write_text(&mut out);
                if !self.relaxed_violation.is_empty() {
                    writeln!(out, "relaxed_violation: {}", self.relaxed_violation).unwrap();
                }
                for (r, h) in &self.blocking {
                    writeln!(out, "blocking: {r} {h}").unwrap();
                }
                for (a, b, h) in &self.envy {
                    writeln!(out, "envy: {a} {b} {h}").unwrap();
                }
                for (h, rs) in &self.blocked_assignees {
                    writeln!(out, "blocked_assignees: {h} {}", rs.join(" ")).unwrap();
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    /// `yes`, `no` or `kernel`.
    pub verdict: &'static str,
    pub k: usize,
    pub details: Option<KernelDetails>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelDetails {
    pub l: usize,
    pub p: usize,
    pub t: usize,
    pub x_residents: usize,
    pub x_hospitals: usize,
    pub edges_xx: usize,
    pub edges_xi: usize,
    pub edge_bound_xi: usize,
    pub residents: usize,
    pub hospitals: usize,
    pub edges: usize,
    /// The reduced instance in the instance file format.
    pub instance: String,
}

impl KernelReport {
    pub fn build(named: &NamedInstance, k: usize, outcome: &KernelOutcome) -> Self {
        let (verdict, details) = match outcome {
            KernelOutcome::Yes => ("yes", None),
            KernelOutcome::No => ("no", None),
            KernelOutcome::Kernel(kr) => ("kernel", Some(KernelDetails::new(named, kr))),
        };
        Self {
            verdict,
            k,
            details,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => to_json(self),
            OutputFormat::Text => {
                let mut out = String::new();
                writeln!(out, "verdict: {}", self.verdict).unwrap();
                writeln!(out, "k: {}", self.k).unwrap();
                if let Some(d) = &self.details {
                    let fields = [
                        ("l", d.l),
                        ("p", d.p),
                        ("t", d.t),
                        ("x_residents", d.x_residents),
                        ("x_hospitals", d.x_hospitals),
                        ("edges_xx", d.edges_xx),
                        ("edges_xi", d.edges_xi),
                        ("edge_bound_xi", d.edge_bound_xi),
                        ("residents", d.residents),
                        ("hospitals", d.hospitals),
                        ("edges", d.edges),
                    ];
                    for (key, v) in fields {
                        writeln!(out, "{key}: {v}").unwrap();
                    }
                    out.push('\n');
                    out.push_str(&d.instance);
                }
                out
            }
        }
    }
}

impl KernelDetails {
    fn new(named: &NamedInstance, kr: &KernelResult) -> Self {
        let kernel = NamedInstance {
            instance: kr.instance.clone(),
            resident_names: kr
                .resident_map
                .iter()
                .map(|&r| named.resident_names[r].clone())
                .collect(),
            hospital_names: kr
                .hospital_map
                .iter()
                .map(|&h| named.hospital_names[h].clone())
                .collect(),
        };
        Self {
            l: kr.l,
            p: kr.p,
            t: kr.t,
            x_residents: kr.x_residents.len(),
            x_hospitals: kr.x_hospitals.len(),
            edges_xx: kr.edges_xx,
            edges_xi: kr.edges_xi,
            edge_bound_xi: kr.edge_bound_xi(),
            residents: kr.instance.num_residents(),
            hospitals: kr.instance.num_hospitals(),
            edges: kr.instance.num_edges(),
            instance: render_instance(&kernel),
        }
    }
}

/// Rejects matchings that break the model before any report is built.
pub fn validate_matching(named: &NamedInstance, m: &Matching) -> Result<(), CliError> {
    check_matching(&named.instance, m)
        .map_err(|e| CliError::Usage(format!("invalid matching: {e}")))
}
