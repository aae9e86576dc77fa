//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::driver::{batch, solve, Budget, SolverConfig, DEFAULT_RUNS};
use crate::error::{Error, Result};
use crate::exact::exact_optimum;
use crate::experiment::{compare, format_solution, write_rows, NamedInstance, ResultRow};
use crate::format::{read_instance_file, write_instance_file, EXTENSION};
use crate::generator::{generate_instance, GeneratorSpec};
use crate::learning::{PerturbationPolicy, DEFAULT_PENALTY_FACTOR, DEFAULT_REWARD_FACTOR};
use crate::lp::export_lp;

#[derive(Debug, Parser)]
#[command(name = "bmcp", version, about = "Budgeted maximum coverage toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance file named bmcp_<m>_<n>_<density>_<C>.bmcp
    Generate(GenerateArgs),
    /// Solve one instance once and print a CSV row
    Solve(SolveArgs),
    /// Solve one instance several times and print the aggregated CSV row
    Batch(BatchArgs),
    /// Exhaustive optimum (m <= 25)
    Exact(InstanceArg),
    /// Write the 0-1 integer program in LP format
    ExportLp(ExportArgs),
    /// Run both perturbation policies and test the difference
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub density: f64,
    #[arg(long)]
    pub capacity: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub weight_min: u64,
    #[arg(long, default_value_t = 100)]
    pub weight_max: u64,
    #[arg(long, default_value_t = 1)]
    pub profit_min: u64,
    #[arg(long, default_value_t = 100)]
    pub profit_max: u64,
    /// Directory for the generated file
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct InstanceArg {
    #[arg(long)]
    pub instance: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Wall-clock limit per run in seconds
    #[arg(long, default_value_t = 600.0)]
    pub time_limit: f64,
    /// Run exactly this many tabu-search phases instead of a time limit
    #[arg(long, conflicts_with = "time_limit")]
    pub rounds: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Reward factor
    #[arg(long, default_value_t = DEFAULT_REWARD_FACTOR)]
    pub beta: f64,
    /// Penalization factor
    #[arg(long, default_value_t = DEFAULT_PENALTY_FACTOR)]
    pub gamma: f64,
    /// Tabu depth; required when m >= 1100
    #[arg(long)]
    pub depth: Option<u64>,
    #[arg(long)]
    pub tenure: Option<u64>,
    /// probability (PLTS) or random (PLTS0)
    #[arg(long, default_value = "probability")]
    pub perturbation: PerturbationPolicy,
    /// Keep learned probabilities between tabu-search phases
    #[arg(long)]
    pub carry_probability: bool,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig> {
        let budget = match self.rounds {
            Some(n) => Budget::Rounds(n),
            None => {
                if !(self.time_limit > 0.0 && self.time_limit.is_finite()) {
                    return Err(Error::Config(format!(
                        "time limit {} must be positive",
                        self.time_limit
                    )));
                }
                Budget::Time(Duration::from_secs_f64(self.time_limit))
            }
        };
        let cfg = SolverConfig {
            budget,
            reward_factor: self.beta,
            penalty_factor: self.gamma,
            depth_override: self.depth,
            tenure_override: self.tenure,
            perturbation: self.perturbation,
            carry_probability: self.carry_probability,
            seed: self.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Solution file; defaults to the instance path with a .sol extension
    #[arg(long)]
    pub solution: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    #[command(flatten)]
    pub inner: SolveArgs,
    #[arg(long, default_value_t = DEFAULT_RUNS)]
    pub runs: usize,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Instance files; repeat the flag for several
    #[arg(long, required = true, num_args = 1..)]
    pub instance: Vec<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value_t = DEFAULT_RUNS)]
    pub runs: usize,
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into())
}

fn solution_path(args: &SolveArgs) -> PathBuf {
    args.solution
        .clone()
        .unwrap_or_else(|| args.instance.with_extension("sol"))
}

/// Runs a parsed command, writing results to `out`.
pub fn execute<W: Write>(cli: Cli, out: &mut W) -> Result<()> {
    match cli.command {
        Command::Generate(a) => {
            let spec = GeneratorSpec {
                weight_range: a.weight_min..=a.weight_max,
                profit_range: a.profit_min..=a.profit_max,
                ..GeneratorSpec::new(a.m, a.n, a.density, a.capacity, a.seed)
            };
            let inst = generate_instance(&spec)?;
            std::fs::create_dir_all(&a.out_dir)?;
            let path = a
                .out_dir
                .join(format!("{}.{EXTENSION}", spec.instance_name()));
            write_instance_file(&path, &inst)?;
            writeln!(out, "{}", path.display())?;
        }
        Command::Solve(a) => {
            let inst = read_instance_file(&a.instance)?;
            let cfg = a.solver.config()?;
            let result = solve(&inst, &cfg)?;
            let name = instance_name(&a.instance);
            std::fs::write(solution_path(&a), format_solution(&name, &result.best_selection))?;
            let summary = crate::driver::BatchSummary::from_runs(vec![result])?;
            write_rows(&mut *out, &[ResultRow::new(&name, cfg.perturbation, &summary)])?;
        }
        Command::Batch(b) => {
            let a = &b.inner;
            let inst = read_instance_file(&a.instance)?;
            let cfg = a.solver.config()?;
            let summary = batch(&inst, &cfg, b.runs)?;
            let name = instance_name(&a.instance);
            let best = summary
                .per_run
                .iter()
                .max_by_key(|r| r.best_objective)
                .expect("batch has at least one run");
            std::fs::write(solution_path(a), format_solution(&name, &best.best_selection))?;
            write_rows(&mut *out, &[ResultRow::new(&name, cfg.perturbation, &summary)])?;
        }
        Command::Exact(a) => {
            let inst = read_instance_file(&a.instance)?;
            let (profit, selection) = exact_optimum(&inst)?;
            writeln!(out, "optimum {profit}")?;
            write!(out, "{}", format_solution(&instance_name(&a.instance), &selection))?;
        }
        Command::ExportLp(a) => {
            let inst = read_instance_file(&a.instance)?;
            let text = export_lp(&inst);
            match a.output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Compare(a) => {
            let cfg = a.solver.config()?;
            let instances = a
                .instance
                .iter()
                .map(|p| {
                    Ok(NamedInstance {
                        name: instance_name(p),
                        instance: read_instance_file(p)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let cmp = compare(&instances, &cfg, a.runs)?;
            write_rows(&mut *out, &cmp.to_rows())?;
        }
    }
    Ok(())
}

/// Failure class, for the exit status and the diagnostic prefix.
pub fn classify(err: &Error) -> (&'static str, i32) {
    match err {
        Error::Io(_) => ("I/O", 3),
        Error::Parse { .. } => ("parse", 4),
        Error::Config(_) | Error::TooLarge(_) => ("config", 5),
        _ => ("input", 6),
    }
}

/// Parses `args` and runs; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let (class, code) = classify(&e);
            let _ = writeln!(err, "error ({class}): {e}");
            code
        }
    }
}
