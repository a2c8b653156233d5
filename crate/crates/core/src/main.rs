use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kmm_qap::bench::{self, BenchOptions, BestKnownRegistry, PmfParameter};
use kmm_qap::eda::{self, EdaConfig, EvalStrategy, KernelMode, ScheduleKind};
use kmm_qap::{Error, QapInstance};

#[derive(Parser)]
#[command(name = "kmm-qap", version, about = "Kernel-Mallows EDA for the quadratic assignment problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize one QAPLIB instance and write a solution file.
    Solve {
        instance: PathBuf,
        /// Solution file path; defaults to <instance stem>.sln
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        eda: EdaArgs,
    },
    /// Seeded repetitions over a directory of instances, reported as ARDP.
    Bench {
        instance_dir: PathBuf,
        /// CSV of `name,best_known`
        #[arg(long)]
        registry: PathBuf,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long = "seed", default_value_t = 0)]
        base_seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write the report CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a JSON report
        #[arg(long)]
        json: Option<PathBuf>,
        /// Leave mean_seconds empty so reports are reproducible byte for byte
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        eda: EdaArgs,
    },
    /// Print the distance law p(K = k) as CSV.
    Pmf {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "expected_distance", required_unless_present = "expected_distance")]
        theta: Option<f64>,
        #[arg(long)]
        expected_distance: Option<f64>,
        /// Remove k = 0 from the support
        #[arg(long)]
        exclude_consensus: bool,
    },
    /// Print the objective of a solution file.
    Eval { instance: PathBuf, solution: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Exp,
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Kernels,
    BestOnly,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalArg {
    Full,
    Delta,
}

#[derive(Args)]
struct EdaArgs {
    /// Evaluation budget as a multiple of n²
    #[arg(long, default_value_t = eda::DEFAULT_BUDGET_MULTIPLIER)]
    budget_multiplier: u64,
    /// Absolute evaluation budget; overrides --budget-multiplier
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = eda::DEFAULT_POPULATION)]
    pop: usize,
    #[arg(long, default_value_t = eda::DEFAULT_GAMMA)]
    gamma: f64,
    #[arg(long, default_value_t = eda::DEFAULT_EK_START_FRACTION)]
    ek_start_frac: f64,
    #[arg(long, default_value_t = eda::DEFAULT_EK_END)]
    ek_end: f64,
    #[arg(long, value_enum, default_value_t = ScheduleArg::Exp)]
    schedule: ScheduleArg,
    #[arg(long, value_enum, default_value_t = KernelArg::Kernels)]
    kernel_mode: KernelArg,
    #[arg(long, value_enum, default_value_t = EvalArg::Full)]
    eval: EvalArg,
}

impl EdaArgs {
    fn config(&self, seed: u64) -> EdaConfig {
        EdaConfig {
            population_size: self.pop,
            gamma: self.gamma,
            ek_start_fraction: self.ek_start_frac,
            ek_end: self.ek_end,
            budget_multiplier: self.budget_multiplier,
            eval_budget: self.budget,
            seed,
            schedule_kind: match self.schedule {
                ScheduleArg::Exp => ScheduleKind::Exponential,
                ScheduleArg::Linear => ScheduleKind::Linear,
            },
            kernel_mode: match self.kernel_mode {
                KernelArg::Kernels => KernelMode::Kernels,
                KernelArg::BestOnly => KernelMode::BestOnly,
            },
            eval_strategy: match self.eval {
                EvalArg::Full => EvalStrategy::Full,
                EvalArg::Delta => EvalStrategy::DeltaChain,
            },
        }
    }
}

fn write(path: &PathBuf, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Solve {
            instance,
            out,
            seed,
            eda,
        } => {
            let inst = QapInstance::from_file(&instance)?;
            let result = eda::run(&inst, &eda.config(seed))?;
            let out = out.unwrap_or_else(|| PathBuf::from(format!("{}.sln", inst.name())));
            write(
                &out,
                &bench::format_solution(&result.best_permutation, result.best_objective),
            )?;
            println!(
                "{} objective={} evaluations={} seconds={:.3}",
                inst.name(),
                result.best_objective,
                result.evaluations_used,
                result.wall_seconds
            );
        }
        Command::Bench {
            instance_dir,
            registry,
            reps,
            base_seed,
            workers,
            out,
            json,
            no_timing,
            eda,
        } => {
            let registry = BestKnownRegistry::load(&registry)?;
            let opts = BenchOptions {
                repetitions: reps,
                base_seed,
                workers,
                record_timing: !no_timing,
                config: eda.config(base_seed),
            };
            let report = bench::bench_dir(&instance_dir, &registry, &opts)?;
            let csv = report.to_csv()?;
            match out {
                Some(path) => write(&path, &csv)?,
                None => print!("{}", csv),
            }
            if let Some(path) = json {
                write(&path, &report.to_json()?)?;
            }
        }
        Command::Pmf {
            n,
            theta,
            expected_distance,
            exclude_consensus,
        } => {
            let param = match (theta, expected_distance) {
                (Some(t), None) => PmfParameter::Theta(t),
                (None, Some(e)) => PmfParameter::ExpectedDistance(e),
                _ => {
                    return Err(Error::InvalidArgument(
                        "give exactly one of --theta and --expected-distance".into(),
                    ))
                }
            };
            print!("{}", bench::pmf_table(n, param, exclude_consensus)?.to_csv());
        }
        Command::Eval { instance, solution } => {
            let inst = QapInstance::from_file(&instance)?;
            let sol = bench::read_solution(&solution)?;
            println!("{}", inst.evaluate(&sol.permutation)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::FAILURE
        }
    }
}
