//! Library side of the `hrlq` command: algorithm dispatch, reports and the
//! benchmark table. The binary only parses arguments and prints.

pub mod bench;
pub mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use hrlq::envyfree::{ef_feasible, extend_to_max_ef, maxefm_cl, maximal_ef_augment};
use hrlq::format::{parse_instance, NamedInstance, ParseError};
use hrlq::fpt::{maxefm_branch_sd, maxefm_enum_lq, maxefm_enum_rprime};
use hrlq::generators::GeneratorError;
use hrlq::oracle::Oracle;
use hrlq::relaxed::rsm_approx;
use hrlq::{stable_matching, Instance, Matching, SolveError};
use thiserror::Error;

pub use report::{CheckReport, KernelReport, SolveReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{algo} requires {what}")]
    Precondition { algo: Algo, what: String },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("{0}")]
    Usage(String),
    #[error("{algo} returned a matching that is not {property}")]
    PropertyViolated { algo: Algo, property: &'static str },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// 0 is success; 2 precondition or input error, 3 infeasible instance,
    /// 4 budget exceeded, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Precondition { .. } | CliError::Usage(_) => 2,
            CliError::Generator(_) => 2,
            CliError::Solve(e) => match e {
                SolveError::Infeasible | SolveError::NoFeasibleEnvyFree => 3,
                SolveError::BudgetExceeded { .. } => 4,
                _ => 2,
            },
            CliError::Io { .. } | CliError::PropertyViolated { .. } | CliError::Internal(_) => 1,
        }
    }

    /// Short status word used in the benchmark table.
    pub fn status(&self) -> &'static str {
        match self.exit_code() {
            2 => "precondition",
            3 => "infeasible",
            4 => "budget",
            _ => "error",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Stable,
    EfFeasible,
    EfmCl,
    EfmExtend,
    EfmAugment,
    EfmFptLq,
    EfmFptSd,
    EfmFptRprime,
    RsmApprox,
    BruteEfm,
    BruteMinur,
    BruteRsm,
}

/// What a solver's output must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guarantee {
    Stable,
    EnvyFreeFeasible,
    RelaxedStableFeasible,
}

impl Algo {
    pub const ALL: [Algo; 12] = [
        Algo::Stable,
        Algo::EfFeasible,
        Algo::EfmCl,
        Algo::EfmExtend,
        Algo::EfmAugment,
        Algo::EfmFptLq,
        Algo::EfmFptSd,
        Algo::EfmFptRprime,
        Algo::RsmApprox,
        Algo::BruteEfm,
        Algo::BruteMinur,
        Algo::BruteRsm,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algo::Stable => "stable",
            Algo::EfFeasible => "ef-feasible",
            Algo::EfmCl => "efm-cl",
            Algo::EfmExtend => "efm-extend",
            Algo::EfmAugment => "efm-augment",
            Algo::EfmFptLq => "efm-fpt-lq",
            Algo::EfmFptSd => "efm-fpt-sd",
            Algo::EfmFptRprime => "efm-fpt-rprime",
            Algo::RsmApprox => "rsm-approx",
            Algo::BruteEfm => "brute-efm",
            Algo::BruteMinur => "brute-minur",
            Algo::BruteRsm => "brute-rsm",
        }
    }

    pub fn guarantee(self) -> Guarantee {
        match self {
            Algo::Stable => Guarantee::Stable,
            Algo::RsmApprox | Algo::BruteRsm => Guarantee::RelaxedStableFeasible,
            _ => Guarantee::EnvyFreeFeasible,
        }
    }

    /// Does the algorithm start from a given matching?
    pub fn takes_start(self) -> bool {
        matches!(self, Algo::EfmExtend | Algo::EfmAugment | Algo::RsmApprox)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algo::ALL.into_iter().find(|a| a.tag() == s).ok_or_else(|| {
            let known: Vec<_> = Algo::ALL.iter().map(|a| a.tag()).collect();
            format!(
                "unknown algorithm {s:?} (expected one of {})",
                known.join(", ")
            )
        })
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub budget: u64,
    /// Starting matching for the algorithms that take one.
    pub start: Option<Matching>,
    pub oracle_bound: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            budget: hrlq::fpt::DEFAULT_BUDGET,
            start: None,
            oracle_bound: hrlq::oracle::DEFAULT_BOUND,
        }
    }
}

fn precondition(algo: Algo, what: &str) -> CliError {
    CliError::Precondition {
        algo,
        what: what.to_string(),
    }
}

/// Runs one algorithm and returns its matching, without any checking.
pub fn run_algo(inst: &Instance, algo: Algo, opts: &SolveOptions) -> Result<Matching, CliError> {
    let start = || -> Result<Matching, CliError> {
        match &opts.start {
            Some(m) => Ok(m.clone()),
            None => ef_feasible(inst).ok_or(CliError::Solve(SolveError::NoFeasibleEnvyFree)),
        }
    };
    let oracle = Oracle::new(opts.oracle_bound);
    let witness = |found: Option<hrlq::oracle::Optimum>, none: SolveError| {
        found.map(|o| o.witness).ok_or(CliError::Solve(none))
    };
    let out = match algo {
        Algo::Stable => stable_matching(inst),
        Algo::EfFeasible => ef_feasible(inst).ok_or(SolveError::NoFeasibleEnvyFree)?,
        Algo::EfmCl => {
            if !inst.is_cl_restricted() {
                return Err(precondition(algo, "CL-restriction"));
            }
            maxefm_cl(inst)?
        }
        Algo::EfmExtend => extend_to_max_ef(inst, &start()?)?,
        Algo::EfmAugment => maximal_ef_augment(inst, &start()?)?,
        Algo::EfmFptLq => maxefm_enum_lq(inst, opts.budget)?,
        Algo::EfmFptSd | Algo::EfmFptRprime if !inst.has_unit_quotas() => {
            return Err(precondition(algo, "all quotas at most 1"));
        }
        Algo::EfmFptSd => maxefm_branch_sd(inst, opts.budget)?,
        Algo::EfmFptRprime => maxefm_enum_rprime(inst, opts.budget)?,
        Algo::RsmApprox => rsm_approx(inst, opts.start.as_ref())?.matching,
        Algo::BruteEfm => witness(oracle.maxefm(inst)?, SolveError::NoFeasibleEnvyFree)?,
        Algo::BruteMinur => oracle
            .min_ur_efm(inst)?
            .map(|(_, m)| m)
            .ok_or(SolveError::NoFeasibleEnvyFree)?,
        Algo::BruteRsm => witness(oracle.maxrsm(inst)?, SolveError::Infeasible)?,
    };
    Ok(out)
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_instance(path: &Path) -> Result<NamedInstance, CliError> {
    parse_instance(&read_text(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_matching(path: &Path, named: &NamedInstance) -> Result<Matching, CliError> {
    hrlq::format::parse_matching(&read_text(path)?, named).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<hrlq::graph::Graph, CliError> {
    hrlq::format::parse_graph(&read_text(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for a in Algo::ALL {
            assert_eq!(a.tag().parse::<Algo>().unwrap(), a);
        }
        assert!("nope".parse::<Algo>().is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Solve(SolveError::Infeasible).exit_code(), 3);
        assert_eq!(
            CliError::Solve(SolveError::BudgetExceeded {
                needed: 9,
                budget: 1
            })
            .exit_code(),
            4
        );
        assert_eq!(
            CliError::Solve(SolveError::QuotaTooLarge { hospital: 0 }).exit_code(),
            2
        );
        assert_eq!(CliError::Internal("x".into()).exit_code(), 1);
    }
}
