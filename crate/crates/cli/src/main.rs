use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hrlq::format::{render_instance, NamedInstance};
use hrlq::fpt::kernelize;
use hrlq::generators::{generate, Family, GeneratorSpec, RandomParams};
use hrlq_cli::bench::{run_bench, BenchOptions};
use hrlq_cli::report::{validate_matching, OutputFormat};
use hrlq_cli::{
    load_graph, load_instance, load_matching, run_algo, write_text, Algo, CheckReport, CliError,
    KernelReport, SolveOptions, SolveReport,
};

#[derive(Parser)]
#[command(
    name = "hrlq",
    version,
    about = "Matchings for hospital/residents instances with lower quotas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on an instance and report the verified result.
    Solve(SolveArgs),
    /// Report every property of a given matching.
    Check(CheckArgs),
    /// Write a generated instance.
    Generate(GenerateArgs),
    /// Reduce a 0/1-quota instance for a target size.
    Kernelize(KernelizeArgs),
    /// Run algorithms over every `.hrlq` file of a directory, as CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_parser = parse_algo)]
    algo: Algo,
    /// Starting matching for efm-extend, efm-augment and rsm-approx.
    #[arg(long)]
    matching: Option<PathBuf>,
    #[arg(long, default_value_t = hrlq::fpt::DEFAULT_BUDGET)]
    budget: u64,
    /// Largest instance the brute-force algorithms accept.
    #[arg(long, default_value_t = hrlq::oracle::DEFAULT_BOUND)]
    max_residents: usize,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Args)]
struct CheckArgs {
    instance: PathBuf,
    matching: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Source graph for the gadget families.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Target independent set size for the indset families.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = RandomParams::default().residents)]
    residents: usize,
    #[arg(long, default_value_t = RandomParams::default().hospitals)]
    hospitals: usize,
    #[arg(long, default_value_t = RandomParams::default().density)]
    density: f64,
    #[arg(long, default_value_t = RandomParams::default().max_upper)]
    max_upper: usize,
    #[arg(long, default_value_t = RandomParams::default().lower_prob)]
    lower_prob: f64,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KernelizeArgs {
    instance: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Args)]
struct BenchArgs {
    dir: PathBuf,
    /// Repeat for several algorithms.
    #[arg(long = "algo", value_parser = parse_algo, default_values_t = [Algo::Stable, Algo::EfmExtend, Algo::RsmApprox])]
    algos: Vec<Algo>,
    #[arg(long, default_value_t = hrlq::fpt::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = hrlq::oracle::DEFAULT_BOUND)]
    max_residents: usize,
    /// Leave the duration column empty.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_algo(s: &str) -> Result<Algo, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
        .map_err(|e: hrlq::generators::GeneratorError| e.to_string())
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve(args: &SolveArgs) -> Result<(), CliError> {
    let named = load_instance(&args.instance)?;
    let start = match &args.matching {
        Some(path) => {
            if !args.algo.takes_start() {
                return Err(CliError::Usage(format!(
                    "{} does not take a starting matching",
                    args.algo
                )));
            }
            let m = load_matching(path, &named)?;
            validate_matching(&named, &m)?;
            Some(m)
        }
        None => None,
    };
    let opts = SolveOptions {
        budget: args.budget,
        start,
        oracle_bound: args.max_residents,
    };
    let started = Instant::now();
    let m = run_algo(&named.instance, args.algo, &opts)?;
    let report = SolveReport::build(&named, args.algo, &m, started.elapsed())?;
    print!("{}", report.render(args.format));
    report.check_guarantee(args.algo)
}

fn check(args: &CheckArgs) -> Result<(), CliError> {
    let named = load_instance(&args.instance)?;
    let m = load_matching(&args.matching, &named)?;
    validate_matching(&named, &m)?;
    print!("{}", CheckReport::build(&named, &m)?.render(args.format));
    Ok(())
}

fn generate_cmd(args: &GenerateArgs) -> Result<(), CliError> {
    let params = RandomParams {
        residents: args.residents,
        hospitals: args.hospitals,
        density: args.density,
        max_upper: args.max_upper,
        lower_prob: args.lower_prob,
    };
    let spec = match (&args.graph, args.family.needs_graph()) {
        (Some(path), true) => GeneratorSpec::gadget(args.family, load_graph(path)?, args.k),
        (None, true) => return Err(CliError::Usage(format!("{} needs --graph", args.family))),
        (Some(_), false) => {
            return Err(CliError::Usage(format!("{} takes no --graph", args.family)))
        }
        (None, false) => GeneratorSpec::random(args.family, params, args.seed),
    };
    let inst = generate(&spec)?;
    emit(
        args.out.as_ref(),
        &render_instance(&NamedInstance::with_default_names(inst)),
    )
}

fn kernelize_cmd(args: &KernelizeArgs) -> Result<(), CliError> {
    let named = load_instance(&args.instance)?;
    let outcome = kernelize(&named.instance, args.k)?;
    print!(
        "{}",
        KernelReport::build(&named, args.k, &outcome).render(args.format)
    );
    Ok(())
}

fn bench(args: &BenchArgs) -> Result<(), CliError> {
    let opts = BenchOptions {
        algos: args.algos.clone(),
        solve: SolveOptions {
            budget: args.budget,
            start: None,
            oracle_bound: args.max_residents,
        },
        timing: !args.no_timing,
    };
    emit(args.out.as_ref(), &run_bench(&args.dir, &opts)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Check(a) => check(a),
        Command::Generate(a) => generate_cmd(a),
        Command::Kernelize(a) => kernelize_cmd(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
