use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use shuntbound::bench::{run_matrix, BENCH_COLUMNS};
use shuntbound::generate::{generate_instance, GenParams};
use shuntbound::graph::split_directions;
use shuntbound::model::{relax_instance, validate_instance, Instance, ModeFlags, LADDER_LEVELS};
use shuntbound::oracle::brute_force;
use shuntbound::planner::{validate_solution, Solution};
use shuntbound::solver::{solve, Outcome, SolveConfig, Status};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(name = "shuntbound", version, about = "Optimal MAPF bounds for shunting yards")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random instances.
    Gen(GenArgs),
    /// Solve an instance with conflict-based search.
    Solve(SolveArgs),
    /// Solve a tiny instance exhaustively.
    Oracle(OracleArgs),
    /// Check an instance, or a solution against it.
    Validate(ValidateArgs),
    /// Solve a directory of instances at every ladder level.
    Bench(BenchArgs),
    /// Print the location graph of an instance.
    Graph(GraphArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of instances; seeds run from `--seed` upwards.
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Output file for a single instance (stdout if absent).
    #[arg(long, conflicts_with = "out_dir")]
    out: Option<PathBuf>,
    /// Output directory; files are named `inst-<seed>.json`.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Draw oracle-sized parameters from each seed instead of the flags below.
    #[arg(long)]
    tiny: bool,
    #[arg(long, default_value_t = 3)]
    tracks: usize,
    #[arg(long, default_value_t = 2)]
    agents: usize,
    #[arg(long, default_value_t = 1)]
    types: usize,
    #[arg(long, default_value_t = 1)]
    tasks: usize,
    #[arg(long, default_value_t = 10)]
    horizon: u32,
    #[arg(long, default_value_t = 3)]
    max_units: u32,
    #[arg(long, default_value_t = 2)]
    max_duration: u32,
    /// Time each goal from the earliest time its agent alone can reach it,
    /// plus up to this many steps.
    #[arg(long)]
    goal_slack: Option<u32>,
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Override mode flags: `classic`, `full`, or a comma list of
    /// matching, directions, services, timed.
    #[arg(long)]
    mode: Option<String>,
    /// Relax to a ladder level (0-3) first.
    #[arg(long)]
    level: Option<u8>,
    /// Write the outcome here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock runtime in the outcome.
    #[arg(long)]
    timing: bool,
    /// Accepted for uniformity; the search itself is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Time budget in seconds.
    #[arg(long)]
    budget: Option<f64>,
    /// Limit on expanded search nodes.
    #[arg(long)]
    node_limit: Option<u64>,
    /// Answer the decision question: is there a solution of cost at most K?
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    problem: ProblemArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Solution or outcome file; without it the instance itself is checked.
    #[arg(long)]
    solution: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of instance files (`*.json`).
    #[arg(long)]
    suite: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated ladder levels.
    #[arg(long, value_delimiter = ',', default_values_t = LADDER_LEVELS.to_vec())]
    levels: Vec<u8>,
    /// Time budget per run, in seconds.
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Print the direction-split graph instead.
    #[arg(long)]
    directions: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    if let Err(e) = limit_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn limit_threads() -> Result<()> {
    let Ok(value) = std::env::var("SHUNTBOUND_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("SHUNTBOUND_THREADS must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Graph(a) => cmd_graph(a),
    }
}

fn load(path: &Path) -> Result<Instance> {
    Instance::load(path).with_context(|| format!("cannot load instance {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn budget(seconds: Option<f64>) -> Result<Option<Duration>> {
    seconds
        .map(|s| Duration::try_from_secs_f64(s).context("budget must be a non-negative number of seconds"))
        .transpose()
}

fn cmd_gen(a: GenArgs) -> Result<u8> {
    if a.count == 0 {
        bail!("--count must be positive");
    }
    if a.count > 1 && a.out_dir.is_none() {
        bail!("--count above 1 needs --out-dir");
    }
    let fixed = GenParams {
        n_tracks: a.tracks,
        n_agents: a.agents,
        n_types: a.types,
        tasks_per_agent: a.tasks,
        horizon: a.horizon,
        max_units: a.max_units,
        max_duration: a.max_duration,
        goal_slack: a.goal_slack,
    };
    if let Some(dir) = &a.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    for seed in a.seed..a.seed + a.count {
        let params = if a.tiny { GenParams::tiny(seed) } else { fixed };
        let inst = generate_instance(seed, &params).with_context(|| format!("seed {seed}"))?;
        let mut text = inst.to_json();
        text.push('\n');
        match &a.out_dir {
            Some(dir) => emit(Some(&dir.join(format!("inst-{seed:05}.json"))), &text)?,
            None => emit(a.out.as_deref(), &text)?,
        }
    }
    Ok(EXIT_OK)
}

fn prepare(p: &ProblemArgs) -> Result<Instance> {
    let mut inst = load(&p.instance)?;
    if let Some(mode) = &p.mode {
        inst.mode = ModeFlags::parse_list(mode).map_err(anyhow::Error::msg)?;
    }
    if let Some(level) = p.level {
        inst = relax_instance(&inst, level)?;
    }
    Ok(inst)
}

fn status_code(outcome: &Outcome) -> u8 {
    match outcome.status {
        Status::Optimal => EXIT_OK,
        Status::Infeasible | Status::InfeasibleDecision => EXIT_INFEASIBLE,
        Status::Timeout => EXIT_TIMEOUT,
    }
}

fn cmd_solve(a: SolveArgs) -> Result<u8> {
    let inst = prepare(&a.problem)?;
    let config = SolveConfig {
        time_budget: budget(a.budget)?,
        node_limit: a.node_limit,
        bound: a.bound,
    };
    let outcome = solve(&inst, &config)?;
    emit(a.problem.out.as_deref(), &outcome.to_json(&inst, a.problem.timing))?;
    Ok(status_code(&outcome))
}

fn cmd_oracle(a: OracleArgs) -> Result<u8> {
    let inst = prepare(&a.problem)?;
    let outcome = brute_force(&inst)?;
    emit(a.problem.out.as_deref(), &outcome.to_json(&inst, a.problem.timing))?;
    Ok(status_code(&outcome))
}

fn cmd_validate(a: ValidateArgs) -> Result<u8> {
    let inst = load(&a.instance)?;
    let Some(path) = &a.solution else {
        let report = validate_instance(&inst);
        for w in &report.warnings {
            println!("warning: {}", w.message);
        }
        for e in &report.errors {
            println!("error: {}: {}", e.kind, e.message);
        }
        return Ok(if report.is_admissible() {
            println!("instance ok");
            EXIT_OK
        } else {
            EXIT_INFEASIBLE
        });
    };
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let solution = Solution::from_json(&inst, &text)?;
    let report = validate_solution(&inst, &solution);
    for v in &report.violations {
        println!("violation: {v}");
    }
    Ok(if report.is_valid() {
        println!("solution ok, cost {}", report.recomputed_cost);
        EXIT_OK
    } else {
        EXIT_INFEASIBLE
    })
}

fn cmd_bench(a: BenchArgs) -> Result<u8> {
    let mut files: Vec<PathBuf> = fs::read_dir(&a.suite)
        .with_context(|| format!("cannot read suite {}", a.suite.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    files.sort();
    if files.is_empty() {
        bail!("no instance files in {}", a.suite.display());
    }
    let instances = files
        .iter()
        .map(|p| {
            let id = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            Ok((id, load(p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let config = SolveConfig {
        time_budget: budget(a.budget)?,
        ..SolveConfig::default()
    };
    let records = run_matrix(&instances, &a.levels, &config, a.seed)?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(&a.out)
        .with_context(|| format!("cannot write {}", a.out.display()))?;
    w.write_record(BENCH_COLUMNS)?;
    for r in &records {
        w.serialize(r)?;
    }
    w.flush()?;
    eprintln!("{} records written to {}", records.len(), a.out.display());
    Ok(EXIT_OK)
}

fn cmd_graph(a: GraphArgs) -> Result<u8> {
    let inst = load(&a.instance)?;
    let text = if a.directions {
        split_directions(&inst.graph, inst.costs.reversal_cost).dump(&inst.graph)
    } else {
        inst.graph.dump()
    };
    print!("{text}");
    Ok(EXIT_OK)
}
