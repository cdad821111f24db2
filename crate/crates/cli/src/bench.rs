//! `bench`: every instance file of a directory against a list of algorithms,
//! one CSV row per pair.

use std::path::{Path, PathBuf};
use std::time::Instant;

use hrlq::stats::InstanceStats;
use hrlq::Diagnostics;

use crate::report::{Stats, Verdicts};
use crate::{load_instance, run_algo, Algo, CliError, SolveOptions};

/// Extension of instance files picked up by [`run_bench`].
pub const INSTANCE_EXTENSION: &str = "hrlq";

pub const COLUMNS: [&str; 30] = [
    "instance",
    "algorithm",
    "status",
    "size",
    "unmatched",
    "feasible",
    "deficiency",
    "stable",
    "envy_free",
    "relaxed_stable",
    "blocking_pairs",
    "envy_pairs",
    "residents",
    "hospitals",
    "total_lower_quota",
    "stable_size",
    "stable_deficiency",
    "l1",
    "l2",
    "q",
    "l",
    "s",
    "d",
    "r_prime",
    "p",
    "t",
    "max_matching",
    "guarantee_met",
    "error",
    "duration_us",
];

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub algos: Vec<Algo>,
    pub solve: SolveOptions,
    /// Leave the duration column empty so that output is byte-stable.
    pub timing: bool,
}

/// Instance files of `dir`, sorted by file name.
pub fn instance_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == INSTANCE_EXTENSION) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn run_bench(dir: &Path, opts: &BenchOptions) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Internal(format!("csv: {e}"));
    w.write_record(COLUMNS).map_err(csv_err)?;
    for path in instance_files(dir)? {
        let named = load_instance(&path)?;
        let inst = &named.instance;
        let name = path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        let stats: Stats = InstanceStats::compute(inst).into();
        for &algo in &opts.algos {
            let started = Instant::now();
            let result = run_algo(inst, algo, &opts.solve);
            let micros = started.elapsed().as_micros();
            let mut row = vec![name.clone(), algo.tag().to_string()];
            match result {
                Ok(m) => {
                    let diag = Diagnostics::compute(inst, &m)
                        .map_err(|e| CliError::Internal(format!("{name}: {algo}: {e}")))?;
                    let v = Verdicts::of(&diag, &m);
                    row.push("ok".into());
                    row.extend(
                        [
                            v.size.to_string(),
                            v.unmatched.to_string(),
                            v.feasible.to_string(),
                            v.deficiency.to_string(),
                            v.stable.to_string(),
                            v.envy_free.to_string(),
                            v.relaxed_stable.to_string(),
                            v.blocking_pairs.to_string(),
                            v.envy_pairs.to_string(),
                        ]
                        .into_iter(),
                    );
                    row.extend(stats.fields().iter().map(|(_, x)| x.to_string()));
                    row.push(v.meets(algo.guarantee()).to_string());
                    row.push(String::new());
                }
                Err(e) => {
                    row.push(e.status().into());
                    row.extend(std::iter::repeat_n(String::new(), 9));
                    row.extend(stats.fields().iter().map(|(_, x)| x.to_string()));
                    row.push(String::new());
                    row.push(e.to_string());
                }
            }
            row.push(if opts.timing {
                micros.to_string()
            } else {
                String::new()
            });
            w.write_record(&row).map_err(csv_err)?;
        }
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}
